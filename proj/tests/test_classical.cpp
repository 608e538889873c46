// Copyright 2026 The hamagent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hamagent/classical.hpp"
#include "hamagent/rng.hpp"

using namespace hamagent;

namespace {

ClassicalHamiltonian oscillator(double m = 1.0, double k = 1.0) {
  ClassicalHamiltonian h(1);
  h.addTerm({"kinetic", [m](const PhaseSpaceState& s, double) { return s.p[0] * s.p[0] / (2 * m); }});
  h.addTerm({"potential", [k](const PhaseSpaceState& s, double) { return 0.5 * k * s.q[0] * s.q[0]; }, {},
             [k](const PhaseSpaceState& s, double, std::span<double> dq, std::span<double>) { dq[0] += k * s.q[0]; }});
  return h;
}

ClassicalHamiltonian freeParticle() {
  ClassicalHamiltonian h(1);
  h.addTerm({"kinetic", [](const PhaseSpaceState& s, double) { return 0.5 * s.p[0] * s.p[0]; }, {},
             [](const PhaseSpaceState& s, double, std::span<double>, std::span<double> dp) { dp[0] += s.p[0]; }});
  return h;
}

GeneratorSpec spec(GeneratorKind k) { return GeneratorSpec{k, Side::Classical, {}}; }

ErrorCode codeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::Io;
}

}  // namespace

TEST(PhaseSpaceState, Invariants) {
  EXPECT_EQ(codeOf([] { PhaseSpaceState({}, {}); }), ErrorCode::InvalidState);
  EXPECT_EQ(codeOf([] { PhaseSpaceState({1.0}, {1.0, 2.0}); }), ErrorCode::InvalidState);
  EXPECT_EQ(codeOf([] { PhaseSpaceState({NAN}, {0.0}); }), ErrorCode::NonfiniteEvaluation);
}

TEST(Generators, InductionHandValue) {
  auto s = spec(GeneratorKind::Induction);
  s.set("inputs", std::vector<std::vector<double>>{{1.0}})
      .set("targets", std::vector<double>{0.0})
      .set("weights", std::vector<double>{1.0})
      .set("predictor", std::string("linear"));
  const auto h = buildClassicalGenerator(s);
  EXPECT_DOUBLE_EQ(h.evaluate(PhaseSpaceState({2.0}, {0.0})), 2.0);
}

TEST(Generators, InductionTanhGradientMatchesDifferences) {
  auto s = spec(GeneratorKind::Induction);
  s.set("inputs", std::vector<std::vector<double>>{{1.0, 0.5}, {-0.3, 2.0}})
      .set("targets", std::vector<double>{0.2, -0.4})
      .set("weights", std::vector<double>{1.0, 0.5})
      .set("predictor", std::string("tanh"));
  const auto h = buildClassicalGenerator(s);
  const PhaseSpaceState at({0.3, -0.2}, {0.1, 0.4});
  std::vector<double> dq(2), dp(2);
  h.gradient(at, 0.0, dq, dp);
  for (std::size_t i = 0; i < 2; ++i) {
    PhaseSpaceState hi = at, lo = at;
    hi.q[i] += 1e-6;
    lo.q[i] -= 1e-6;
    EXPECT_NEAR(dq[i], (h.evaluate(hi) - h.evaluate(lo)) / 2e-6, 1e-7);
    EXPECT_NEAR(dp[i], at.p[i], 1e-15);
  }
}

TEST(Generators, RecursionZeroAtOrigin) {
  auto s = spec(GeneratorKind::Recursion);
  s.set("mass", 3.0).set("stiffness", 0.2);
  EXPECT_EQ(buildClassicalGenerator(s).evaluate(PhaseSpaceState({0.0}, {0.0})), 0.0);
}

TEST(Generators, ReasoningZeroWhenAllClausesHold) {
  auto s = spec(GeneratorKind::Reasoning);
  s.set("clauses", std::vector<Clause>{{{{0, false, 0.0}}}, {{{1, false, 0.0}}}}).set("mu", std::vector<double>{1, 1});
  const auto h = buildClassicalGenerator(s);
  EXPECT_EQ(h.evaluateExact(PhaseSpaceState({1.0, 1.0}, {0.0, 0.0})), 0.0);
  EXPECT_EQ(h.evaluateExact(PhaseSpaceState({1.0, -1.0}, {0.0, 0.0})), 1.0);
}

TEST(Generators, ReasoningIsNonnegativeAndOrderIndependent) {
  std::vector<Clause> clauses = {{{{0, false, 0.5}, {1, true, 0.5}}},
                                 {{{2, false, 0.5}}},
                                 {{{0, true, 0.5}, {2, true, 0.5}}},
                                 {{{1, false, 0.5}, {2, false, 0.5}}}};
  std::vector<double> mu = {0.3, 1.7, 0.9, 2.2};
  auto s = spec(GeneratorKind::Reasoning);
  s.set("clauses", clauses).set("mu", mu);
  const auto h = buildClassicalGenerator(s);
  std::vector<std::size_t> order = {0, 1, 2, 3};
  std::mt19937 shuffle(3);
  SeededStream rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(order.begin(), order.end(), shuffle);
    std::vector<Clause> c2;
    std::vector<double> m2;
    for (auto i : order) {
      c2.push_back(clauses[i]);
      m2.push_back(mu[i]);
    }
    auto s2 = spec(GeneratorKind::Reasoning);
    s2.set("clauses", c2).set("mu", m2);
    const auto h2 = buildClassicalGenerator(s2);
    for (int k = 0; k < 20; ++k) {
      PhaseSpaceState at({rng.uniform(-1, 2), rng.uniform(-1, 2), rng.uniform(-1, 2)}, {0, 0, 0});
      EXPECT_EQ(h.evaluate(at), h2.evaluate(at));
      EXPECT_EQ(h.evaluateExact(at), h2.evaluateExact(at));
      EXPECT_GE(h.evaluate(at), 0.0);
    }
  }
}

TEST(Generators, LearningQuadraticHandValue) {
  auto s = spec(GeneratorKind::Learning);
  s.set("loss", std::string("quadratic")).set("target", std::vector<double>{1.0, 1.0});
  EXPECT_DOUBLE_EQ(buildClassicalGenerator(s).evaluate(PhaseSpaceState({0.0, 0.0}, {0.0, 0.0})), 1.0);
}

TEST(Generators, SensingLeavesEnvironmentCoordinateFixed) {
  auto s = spec(GeneratorKind::Sensing);
  s.set("kappa", 0.8);
  const auto h = buildClassicalGenerator(s);
  const PhaseSpaceState at({0.02, -0.01}, {0.7, -0.3});
  EXPECT_NEAR(poissonBracket(observable::coordinate(1), observable::energy(h), at), 0.0, 1e-6);
}

TEST(Generators, EnvironmentDriveFollowsSchedule) {
  auto s = spec(GeneratorKind::Environment);
  s.set("control", std::vector<Pulse>{{1.0, 2.0, 0.5}});
  const auto h = buildClassicalGenerator(s);
  const PhaseSpaceState at({0.0, 2.0}, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(h.evaluate(at, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(h.evaluate(at, 1.5), 2.0 - 0.5 * 2.0);
}

TEST(Generators, ErrorsAreTyped) {
  EXPECT_EQ(codeOf([] { (void)buildClassicalGenerator(spec(GeneratorKind::Induction)); }),
            ErrorCode::MissingParameter);
  auto bad = spec(GeneratorKind::Recursion);
  bad.set("mass", -1.0);
  EXPECT_EQ(codeOf([&] { (void)buildClassicalGenerator(bad); }), ErrorCode::InvalidParameter);
  auto badMu = spec(GeneratorKind::Reasoning);
  badMu.set("clauses", std::vector<Clause>{{{{0, false, 0.5}}}}).set("mu", std::vector<double>{0.0});
  EXPECT_EQ(codeOf([&] { (void)buildClassicalGenerator(badMu); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(codeOf([] { (void)buildClassicalGenerator(GeneratorSpec{GeneratorKind::Recursion, Side::Quantum, {}}); }),
            ErrorCode::InvalidParameter);
  EXPECT_EQ(codeOf([] { (void)parseGeneratorKind("telepathy"); }), ErrorCode::UnknownKind);
}

TEST(Hamiltonian, TotalIsSumOfTerms) {
  auto a = spec(GeneratorKind::Recursion);
  auto b = spec(GeneratorKind::Sensing);
  b.set("kappa", 0.4);
  const auto h = buildClassicalGenerator(a) + buildClassicalGenerator(b);
  SeededStream rng(12);
  for (int i = 0; i < 20; ++i) {
    const PhaseSpaceState s({rng.uniform(0, 1), rng.uniform(-1, 1)}, {rng.uniform(-1, 1), rng.uniform(-1, 1)});
    double sum = 0.0;
    for (const auto& t : h.terms()) sum += t.evaluate(s, 0.0);
    EXPECT_NEAR(h.evaluate(s), sum, 1e-12);
  }
}

TEST(PoissonBracket, CanonicalPairs) {
  const PhaseSpaceState s({0.3, -1.2}, {0.5, 2.0});
  EXPECT_NEAR(poissonBracket(observable::coordinate(0), observable::momentum(0), s), 1.0, 1e-6);
  EXPECT_NEAR(poissonBracket(observable::coordinate(0), observable::coordinate(1), s), 0.0, 1e-8);
}

TEST(PoissonBracket, Antisymmetric) {
  SeededStream rng(13);
  const Observable f = [](const PhaseSpaceState& s) { return std::sin(s.q[0]) * s.p[1] + s.q[1] * s.q[1]; };
  const Observable g = [](const PhaseSpaceState& s) { return s.p[0] * s.p[0] * s.q[1] - std::cos(s.p[1]); };
  for (int i = 0; i < 50; ++i) {
    const PhaseSpaceState s({rng.uniform(-2, 2), rng.uniform(-2, 2)}, {rng.uniform(-2, 2), rng.uniform(-2, 2)});
    EXPECT_LE(std::abs(poissonBracket(f, g, s) + poissonBracket(g, f, s)), 2e-8);
  }
}

TEST(PoissonBracket, NonfiniteObservableIsReported) {
  const Observable bad = [](const PhaseSpaceState& s) { return std::log(s.q[0]); };
  EXPECT_EQ(codeOf([&] { (void)poissonBracket(bad, observable::momentum(0), PhaseSpaceState({0.0}, {0.0})); }),
            ErrorCode::NonfiniteEvaluation);
}

TEST(Leapfrog, OscillatorReturnsAfterOnePeriod) {
  const auto h = oscillator();
  PhaseSpaceState s({1.0}, {0.0});
  const int steps = int(std::lround(2 * std::numbers::pi / 1e-3));
  const double dt = 2 * std::numbers::pi / steps;
  for (int k = 0; k < steps; ++k) s = leapfrogStep(h, s, dt);
  EXPECT_NEAR(s.q[0], 1.0, 1e-5);
  EXPECT_NEAR(s.p[0], 0.0, 1e-5);
}

TEST(Leapfrog, FreeParticleDrifts) {
  const auto s = leapfrogStep(freeParticle(), PhaseSpaceState({0.0}, {1.0}), 0.1);
  EXPECT_NEAR(s.q[0], 0.1, 1e-15);
  EXPECT_EQ(s.p[0], 1.0);
}

TEST(Leapfrog, RejectsNonpositiveStep) {
  EXPECT_EQ(codeOf([] { (void)leapfrogStep(oscillator(), PhaseSpaceState({1.0}, {0.0}), 0.0); }),
            ErrorCode::InvalidParameter);
}

TEST(Leapfrog, NonfiniteGradientIsReported) {
  ClassicalHamiltonian h(1);
  h.addTerm({"log", [](const PhaseSpaceState& s, double) { return std::log(s.q[0]); }});
  EXPECT_EQ(codeOf([&] { (void)leapfrogStep(h, PhaseSpaceState({0.0}, {0.0}), 0.1); }),
            ErrorCode::NonfiniteEvaluation);
}

TEST(Leapfrog, RecursionEnergyDriftIsSmall) {
  const auto h = buildClassicalGenerator(spec(GeneratorKind::Recursion));
  PhaseSpaceState s({0.7}, {0.4});
  const double e0 = h.evaluate(s);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    s = leapfrogStep(h, s, 1e-3);
    worst = std::max(worst, std::abs(h.evaluate(s) - e0) / e0);
    EXPECT_GE(s.q[0], 0.0);
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(Leapfrog, QuadraticLearningEnergyDriftIsSmall) {
  auto sp = spec(GeneratorKind::Learning);
  sp.set("loss", std::string("quadratic")).set("target", std::vector<double>{1.0, -0.5}).set("lambda", 2.0);
  const auto h = buildClassicalGenerator(sp);
  PhaseSpaceState s({0.0, 0.0}, {0.3, 0.0});
  const double e0 = h.evaluate(s);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    s = leapfrogStep(h, s, 1e-3);
    worst = std::max(worst, std::abs(h.evaluate(s) - e0) / e0);
  }
  EXPECT_LE(worst, 1e-5);
}

TEST(Leapfrog, NonseparableSensingIsVolumePreserving) {
  auto sp = spec(GeneratorKind::Sensing);
  sp.set("kappa", 0.5).set("smoothing", 0.3);
  const auto h = buildClassicalGenerator(sp) + buildClassicalGenerator(spec(GeneratorKind::Environment));
  SeededStream rng(14);
  for (int i = 0; i < 10; ++i) {
    const PhaseSpaceState s({rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)}, {rng.uniform(-1, 1), rng.uniform(-1, 1)});
    EXPECT_NEAR(liouvilleJacobian(h, s, 1e-2), 1.0, 1e-6);
  }
}

TEST(Liouville, OscillatorIsUnit) {
  EXPECT_NEAR(liouvilleJacobian(oscillator(), PhaseSpaceState({0.4}, {-0.2}), 1e-3), 1.0, 1e-8);
}

TEST(Liouville, FreeParticleIsExactlyOne) {
  EXPECT_EQ(liouvilleJacobian(freeParticle(), PhaseSpaceState({0.4}, {-0.2}), 0.37), 1.0);
}

TEST(Liouville, ExplicitEulerIsNotSymplectic) {
  const auto h = oscillator();
  const double det = liouvilleJacobian([&](const PhaseSpaceState& x) { return explicitEulerStep(h, x, 0.1); },
                                       PhaseSpaceState({0.4}, {-0.2}));
  EXPECT_GT(std::abs(det - 1.0), 1e-4);
  EXPECT_NEAR(det, 1.01, 1e-7);
}

TEST(Liouville, CatalogueGeneratorsAtRandomStates) {
  std::vector<ClassicalHamiltonian> hs;
  hs.push_back(buildClassicalGenerator(spec(GeneratorKind::Recursion)));
  auto learn = spec(GeneratorKind::Learning);
  learn.set("loss", std::string("quadratic")).set("target", std::vector<double>{0.5});
  hs.push_back(buildClassicalGenerator(learn));
  auto ind = spec(GeneratorKind::Induction);
  ind.set("inputs", std::vector<std::vector<double>>{{1.0}, {0.5}})
      .set("targets", std::vector<double>{0.3, -0.1})
      .set("weights", std::vector<double>{1.0, 2.0})
      .set("predictor", std::string("tanh"));
  hs.push_back(buildClassicalGenerator(ind));
  hs.push_back(buildClassicalGenerator(spec(GeneratorKind::Environment)));
  SeededStream rng(15);
  for (const auto& h : hs)
    for (int i = 0; i < 5; ++i) {
      std::vector<double> q(h.dim()), p(h.dim());
      for (auto& x : q) x = rng.uniform(0.2, 1.0);
      for (auto& x : p) x = rng.uniform(-1, 1);
      EXPECT_NEAR(liouvilleJacobian(h, PhaseSpaceState(q, p), 1e-2), 1.0, 1e-6);
    }
}

TEST(Evolve, OneStepReproducesLeapfrog) {
  const auto h = oscillator();
  const PhaseSpaceState s0({0.3}, {0.1});
  const auto traj = evolveClassical(h, s0, 0.01, 1);
  const auto direct = leapfrogStep(h, s0, 0.01);
  ASSERT_EQ(traj.states.size(), 2u);
  EXPECT_EQ(traj.states[1].q, direct.q);
  EXPECT_EQ(traj.states[1].p, direct.p);
}

TEST(Evolve, RecordedEnergyMatchesOfflineEvaluation) {
  const auto h = buildClassicalGenerator(spec(GeneratorKind::Recursion));
  const auto traj = evolveClassical(h, PhaseSpaceState({1.0}, {0.0}), 0.01, 200, {"energy", "term_energies"});
  const auto& e = traj.metrics.at("energy");
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    EXPECT_NEAR(e[i], h.evaluate(traj.states[i]), 1e-12);
    EXPECT_NEAR(e[i], traj.metrics.at("energy_recursion_kinetic")[i] + traj.metrics.at("energy_recursion_potential")[i],
                1e-12);
  }
}

TEST(Evolve, DampedConvexLossIsNonincreasing) {
  auto sp = spec(GeneratorKind::Learning);
  sp.set("loss", std::string("quadratic")).set("target", std::vector<double>{1.0, 1.0}).set("damping", 3.0);
  const auto h = buildClassicalGenerator(sp);
  const auto traj = evolveClassical(h, PhaseSpaceState({0.0, 0.0}, {0.0, 0.0}), 0.01, 2000, {"energy", "term_energies"});
  const auto& loss = traj.metrics.at("energy_learning_loss");
  const auto& energy = traj.metrics.at("energy");
  for (std::size_t i = 1; i < loss.size(); ++i) {
    EXPECT_LE(loss[i], loss[i - 1] + 1e-12);
    EXPECT_LE(energy[i], energy[i - 1] + 1e-12);
  }
  EXPECT_LT(loss.back(), 1e-6);
}

TEST(Evolve, DefaultDampingDissipatesEnergy) {
  auto sp = spec(GeneratorKind::Learning);
  sp.set("loss", std::string("quadratic")).set("target", std::vector<double>{1.0}).set("damped", 1.0);
  const auto h = buildClassicalGenerator(sp);
  EXPECT_DOUBLE_EQ(h.damping(), kDefaultLearningDamping);
  const auto traj = evolveClassical(h, PhaseSpaceState({0.0}, {0.0}), 0.01, 3000);
  const auto& e = traj.metrics.at("energy");
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_LE(e[i], e[i - 1] + 1e-12);
  EXPECT_LT(e.back(), 0.05 * e.front());
}

TEST(Evolve, MetricErrors) {
  const auto h = oscillator();
  const PhaseSpaceState s({1.0}, {0.0});
  EXPECT_EQ(codeOf([&] { (void)evolveClassical(h, s, 0.01, 1, {"bogus"}); }), ErrorCode::UnknownMetric);
  EXPECT_EQ(codeOf([&] { (void)evolveClassical(h, s, 0.01, 1, {"shannon_entropy"}); }), ErrorCode::MissingSupplier);
  EXPECT_EQ(codeOf([&] { (void)evolveClassical(h, s, 0.01, 0); }), ErrorCode::InvalidParameter);
}

TEST(Evolve, ShannonEntropyOfSuppliedEnsemble) {
  const auto traj = evolveClassical(oscillator(), PhaseSpaceState({1.0}, {0.0}), 0.01, 3, {"shannon_entropy"},
                                    [](const PhaseSpaceState&) { return ProbabilityVector({0.5, 0.5}); });
  for (double h : traj.metrics.at("shannon_entropy")) EXPECT_NEAR(h, std::log(2.0), 1e-15);
}
