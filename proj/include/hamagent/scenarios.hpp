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

#pragma once

// Agent-environment scenarios. The quantum toy lives on four qubits
// (A1, A2, m, E) with factor 0 most significant:
//   H = kappa (|1><0|_m x Z_E + h.c.) + mu (I - Pi) + g X_A1 + J Z_A1 Z_A2,
//   Pi = (I + Z_m)/2 x (I + Z_A1)/2.
// The classical toy has coordinates q = (q_m, theta), p = (p_m, p_theta) and
//   H = kappa (1 - [q_m = b_E]) + mu (1 - phi) + p_theta^2/2m + lambda |theta|,
//   phi = [(1 - q_m) q_A = 1], q_A = [theta > 0], b_E = (1 - q_E)/2,
// plus an actuator eta(t) q_A Z_E that only writes to the environment qubit.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hamagent/classical.hpp"
#include "hamagent/config.hpp"
#include "hamagent/error.hpp"
#include "hamagent/infogeo.hpp"
#include "hamagent/quantum.hpp"
#include "hamagent/rng.hpp"
#include "hamagent/tensor.hpp"
#include "hamagent/trajectory.hpp"
#include "hamagent/version.hpp"

namespace hamagent {

struct MeasurementEvent {
  std::size_t step = 0;
  double time = 0.0;
  std::string kind;  // "pointer", "pointer-average" or "reader"
  int outcome = 0;   // -1 for outcome-averaged read-outs
  double probability = 1.0;
  double energyBefore = 0.0;
  double energyAfter = 0.0;
  std::uint64_t seed = 0;
};

struct CommutationMatrix {
  std::vector<std::string> names;
  Eigen::MatrixXd values;
  Side side = Side::Quantum;
};

struct TrajectoryRecord {
  std::vector<double> times;
  MetricTable metrics;  // CSV columns after t, in order
  std::vector<MeasurementEvent> events;
  std::vector<ComplexMatrix> envStates;  // rho_E at each time
  CommutationMatrix commutation;
  ScenarioConfig config;
  std::string version = kVersion;

  void check() const {
    for (const auto& [name, series] : metrics.columns())
      require(series.size() == times.size(), ErrorCode::InvariantViolation,
              "series '" + name + "' does not match the time grid");
    require(envStates.size() == times.size(), ErrorCode::InvariantViolation, "environment states off the time grid");
  }
};

// ---------------------------------------------------------------------------
// Commutation reports

struct ReportTerm {
  std::string name;
  Side side = Side::Quantum;
  ComplexMatrix op;  // quantum terms
  Observable fn;     // classical terms
};

/// Symmetric matrix of |{H_i, H_j}| (classical, at the probe) or ||[H_i, H_j]||_F.
inline CommutationMatrix commutationReport(const std::vector<ReportTerm>& terms, Side side,
                                           const std::optional<PhaseSpaceState>& probe = std::nullopt) {
  require(!terms.empty(), ErrorCode::InvalidParameter, "no terms to compare");
  for (const auto& t : terms)
    require(t.side == side, ErrorCode::MixedSide, "term '" + t.name + "' is on the other side");
  require(side == Side::Quantum || probe.has_value(), ErrorCode::InvalidParameter,
          "classical reports need a probe state");
  const Index n = Index(terms.size());
  CommutationMatrix out{{}, Eigen::MatrixXd::Zero(n, n), side};
  for (const auto& t : terms) out.names.push_back(t.name);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const auto& a = terms[std::size_t(i)];
      const auto& b = terms[std::size_t(j)];
      const double v = side == Side::Quantum ? commutatorNorm(a.op, b.op) : std::abs(poissonBracket(a.fn, b.fn, *probe));
      out.values(i, j) = v;
      out.values(j, i) = v;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Quantum toy

namespace qagi {
inline constexpr std::size_t kA1 = 0, kA2 = 1, kPointer = 2, kEnv = 3;
inline constexpr double kPolicyShift = 1e-5;
}  // namespace qagi

struct QagiToy {
  std::vector<Index> dims{2, 2, 2, 2};
  std::vector<std::string> termNames;
  std::vector<HermitianOperator> terms;
  HermitianOperator hamiltonian = HermitianOperator::zero(16);
  HermitianOperator policyDirection = HermitianOperator::zero(16);  // dH/dg
  LindbladModel dephasing{HermitianOperator::zero(16)};
  std::vector<ComplexMatrix> pointerProjectors;
  DensityOperator initialState = DensityOperator::basis(0, {2, 2, 2, 2});
};

inline QagiToy buildQagiToy(const ScenarioConfig& cfg) {
  require(cfg.scenario == ScenarioKind::QagiToy, ErrorCode::InvalidParameter, "config is not a qagi-toy scenario");
  for (double x : {cfg.kappa, cfg.mu, cfg.g, cfg.J})
    require(std::isfinite(x), ErrorCode::InvalidParameter, "couplings must be finite");
  QagiToy toy;
  const auto& d = toy.dims;
  using namespace qagi;

  GeneratorSpec sensing{GeneratorKind::Sensing, Side::Quantum, {}};
  sensing.set("kappa", cfg.kappa)
      .set("observable", pauli::Z())
      .set("factor_dims", std::vector<double>{2, 2, 2, 2})
      .set("pointer_site", double(kPointer))
      .set("env_site", double(kEnv));
  const std::size_t piSites[2] = {kPointer, kA1};
  const ComplexMatrix up = 0.5 * (pauli::I() + pauli::Z());
  const ComplexMatrix pi = embed(kron(up, up), d, piSites);
  const ComplexMatrix id = ComplexMatrix::Identity(16, 16);
  const ComplexMatrix xA1 = embed(pauli::X(), d, {kA1});
  const ComplexMatrix zz = embed(kron(pauli::Z(), pauli::Z()), d, {kA1, kA2});

  toy.termNames = {"sensing", "reasoning", "learning_x", "learning_zz"};
  toy.terms = {buildQuantumGenerator(sensing), HermitianOperator(cfg.mu * (id - pi)), HermitianOperator(cfg.g * xA1),
               HermitianOperator(cfg.J * zz)};
  toy.hamiltonian = toy.terms[0] + toy.terms[1] + toy.terms[2] + toy.terms[3];
  toy.policyDirection = HermitianOperator(xA1);
  toy.dephasing = LindbladModel(toy.hamiltonian, {{embed(pauli::Z(), d, {kPointer}),
                                                   cfg.dephasingFactor * cfg.kappa * cfg.kappa}});
  toy.pointerProjectors = {embed(up, d, {kPointer}), embed(0.5 * (pauli::I() - pauli::Z()), d, {kPointer})};
  const ComplexVector plus = (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0);
  toy.initialState = DensityOperator::pure(kron(kron(ket(4, 0), ket(2, 0)), plus), d);
  return toy;
}

inline std::vector<ReportTerm> reportTerms(const QagiToy& toy) {
  std::vector<ReportTerm> out;
  for (std::size_t i = 0; i < toy.terms.size(); ++i)
    out.push_back({toy.termNames[i], Side::Quantum, toy.terms[i].matrix(), {}});
  return out;
}

// ---------------------------------------------------------------------------
// Classical toy

namespace cagi {
inline constexpr std::size_t kMemory = 0, kTheta = 1;

/// sigma log cosh(x / sigma), a smooth |x|.
inline double softAbs(double x, double sigma) {
  const double a = std::abs(x) / sigma;
  return sigma * (a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0));
}
}  // namespace cagi

/// Writes eta(t) q_A Z_E onto the environment qubit: rho_E -> U rho_E U^+ with
/// U = exp(-i eta dt q_A Z_E). Does nothing when eta(t) q_A = 0.
struct ActuatorHook {
  std::vector<Pulse> eta;

  void apply(ComplexMatrix& rhoE, double qA, double t, double dt) const {
    const double phase = scheduleValue(eta, t) * dt * qA;
    if (phase == 0.0) return;
    const Complex u0 = std::polar(1.0, -phase);
    rhoE(0, 1) *= u0 * u0;
    rhoE(1, 0) *= std::conj(u0 * u0);
  }

  double energy(const ComplexMatrix& rhoE, double qA, double t) const {
    return scheduleValue(eta, t) * qA * (rhoE(0, 0) - rhoE(1, 1)).real();
  }
};

struct CagiToy {
  ClassicalHamiltonian hamiltonian;  // terms "copy", "logic", "learning"
  ActuatorHook actuator;
  int sensedValue = 1;  // q_E in {+1, -1}
  double sensedBit = 0.0;
};

inline double actionBit(double theta) { return theta > 0.0 ? 1.0 : 0.0; }

/// The reader supplies q_E in {+1, -1}; the agent never touches the quantum register.
inline CagiToy buildCagiToy(const ScenarioConfig& cfg, const std::function<int()>& reader) {
  require(cfg.scenario == ScenarioKind::CagiToy, ErrorCode::InvalidParameter, "config is not a cagi-toy scenario");
  require(static_cast<bool>(reader), ErrorCode::MissingSupplier, "cagi-toy needs a q_E reader");
  for (double x : {cfg.kappa, cfg.mu, cfg.lambda, cfg.m})
    require(std::isfinite(x), ErrorCode::InvalidParameter, "couplings must be finite");
  require(cfg.m > 0.0 && cfg.smoothing > 0.0, ErrorCode::InvalidParameter, "mass and smoothing must be positive");
  CagiToy toy;
  toy.sensedValue = reader();
  require(toy.sensedValue == 1 || toy.sensedValue == -1, ErrorCode::InvalidParameter, "q_E must be +1 or -1");
  const double b = 0.5 * (1.0 - toy.sensedValue);
  toy.sensedBit = b;
  const double kappa = cfg.kappa, mu = cfg.mu, lambda = cfg.lambda, m = cfg.m, sigma = cfg.smoothing;
  using cagi::kMemory;
  using cagi::kTheta;

  ClassicalHamiltonian h(2);
  h.addTerm({"copy",
             [=](const PhaseSpaceState& s, double) {
               const double x = s.q[kMemory] - b;
               return kappa * (1.0 - std::exp(-0.5 * x * x / (sigma * sigma)));
             },
             [=](const PhaseSpaceState& s, double) { return s.q[kMemory] == b ? 0.0 : kappa; },
             [=](const PhaseSpaceState& s, double, std::span<double> dq, std::span<double>) {
               const double x = s.q[kMemory] - b;
               dq[kMemory] += kappa * x / (sigma * sigma) * std::exp(-0.5 * x * x / (sigma * sigma));
             }});
  h.addTerm({"logic",
             [=](const PhaseSpaceState& s, double) {
               return mu * (1.0 - (1.0 - s.q[kMemory]) * smooth::logistic(s.q[kTheta] / sigma));
             },
             [=](const PhaseSpaceState& s, double) {
               return (1.0 - s.q[kMemory]) * actionBit(s.q[kTheta]) == 1.0 ? 0.0 : mu;
             },
             [=](const PhaseSpaceState& s, double, std::span<double> dq, std::span<double>) {
               const double l = smooth::logistic(s.q[kTheta] / sigma);
               dq[kMemory] += mu * l;
               dq[kTheta] -= mu * (1.0 - s.q[kMemory]) * l * (1.0 - l) / sigma;
             }});
  h.addTerm({"learning",
             [=](const PhaseSpaceState& s, double) {
               return s.p[kTheta] * s.p[kTheta] / (2.0 * m) + lambda * cagi::softAbs(s.q[kTheta], sigma);
             },
             [=](const PhaseSpaceState& s, double) {
               return s.p[kTheta] * s.p[kTheta] / (2.0 * m) + lambda * std::abs(s.q[kTheta]);
             },
             [=](const PhaseSpaceState& s, double, std::span<double> dq, std::span<double> dp) {
               dq[kTheta] += lambda * std::tanh(s.q[kTheta] / sigma);
               dp[kTheta] += s.p[kTheta] / m;
             }});
  toy.hamiltonian = std::move(h);
  toy.actuator.eta = cfg.eta;
  return toy;
}

/// Exact (unsmoothed) term functions, as used for bracket checks.
inline std::vector<ReportTerm> reportTerms(const CagiToy& toy, double t = 0.0) {
  std::vector<ReportTerm> out;
  for (const auto& term : toy.hamiltonian.terms())
    out.push_back({term.name, Side::Classical, {}, [term, t](const PhaseSpaceState& s) { return term.evaluateExact(s, t); }});
  const ActuatorHook act = toy.actuator;
  const double zE = toy.sensedValue;
  out.push_back({"actuator", Side::Classical, {}, [act, zE, t](const PhaseSpaceState& s) {
                   return scheduleValue(act.eta, t) * actionBit(s.q[cagi::kTheta]) * zE;
                 }});
  return out;
}

// ---------------------------------------------------------------------------
// Runs

namespace detail {

inline double coherence(const ComplexMatrix& rhoE) { return std::abs(rhoE(0, 1)); }

inline double entropyOfMatrix(const ComplexMatrix& rho) {
  const RealVector ev = hermEig(ComplexMatrix(0.5 * (rho + rho.adjoint()))).values;
  return entropyOf(std::span<const double>(ev.data(), std::size_t(ev.size())));
}

inline double energyOf(const HermitianOperator& h, const ComplexMatrix& rho) { return h.expectation(rho); }

inline void recordEnvironment(TrajectoryRecord& rec, const ScenarioConfig& cfg, const ComplexMatrix& rhoE) {
  rec.envStates.push_back(rhoE);
  if (cfg.wants("vn_entropy_env")) rec.metrics.push("vn_entropy_env", entropyOfMatrix(rhoE));
  if (cfg.wants("offdiag_env_abs")) rec.metrics.push("offdiag_env_abs", coherence(rhoE));
}

/// Unitary or dephasing evolution of a main state and two shifted copies used
/// for the policy QFI; read-out events act identically on all three.
struct QuantumRun {
  std::vector<std::string> termNames;
  std::vector<HermitianOperator> terms;
  HermitianOperator hamiltonian = HermitianOperator::zero(1);
  HermitianOperator direction = HermitianOperator::zero(1);  // dH/dparameter
  std::vector<Index> dims;
  std::vector<std::size_t> policySites;
  std::size_t envSite = 0;
  ComplexMatrix rho0;
  std::optional<ComplexMatrix> jump;  // dephasing mode
  double jumpRate = 0.0;
  std::vector<ComplexMatrix> projectors;
};

inline TrajectoryRecord runQuantum(const QuantumRun& q, const ScenarioConfig& cfg) {
  TrajectoryRecord rec;
  rec.config = cfg;
  std::vector<ReportTerm> rt;
  for (std::size_t i = 0; i < q.terms.size(); ++i) rt.push_back({q.termNames[i], Side::Quantum, q.terms[i].matrix(), {}});
  rec.commutation = commutationReport(rt, Side::Quantum);

  const bool wantQfi = cfg.wants("qfi_policy");
  const double delta = qagi::kPolicyShift;
  const HermitianOperator hp = q.hamiltonian + q.direction * delta;
  const HermitianOperator hm = q.hamiltonian - q.direction * delta;
  const bool dephase = cfg.readout == ReadoutMode::Dephasing;
  const bool measure = cfg.readout == ReadoutMode::Projective || cfg.readout == ReadoutMode::Nonselective;

  auto jumps = [&]() {
    std::vector<JumpOperator> js;
    if (q.jump) js.push_back({*q.jump, q.jumpRate});
    return js;
  };
  const LindbladModel lm(q.hamiltonian, jumps()), lp(hp, jumps()), lmn(hm, jumps());
  if (dephase) checkLindbladStep(lm, cfg.dt);
  const ComplexMatrix u = expMinusIHt(q.hamiltonian, cfg.dt);
  const ComplexMatrix up = expMinusIHt(hp, cfg.dt);
  const ComplexMatrix um = expMinusIHt(hm, cfg.dt);

  ComplexMatrix rho = q.rho0, rhoP = q.rho0, rhoM = q.rho0;
  SeededStream stream(cfg.seed);
  const std::vector<std::size_t> envKeep{q.envSite};

  auto sample = [&](double t, bool event) {
    rec.times.push_back(t);
    if (cfg.wants("energy")) {
      rec.metrics.push("energy_total", energyOf(q.hamiltonian, rho));
      for (std::size_t i = 0; i < q.terms.size(); ++i)
        rec.metrics.push("energy_" + q.termNames[i], energyOf(q.terms[i], rho));
    }
    recordEnvironment(rec, cfg, partialTraceMatrix(rho, q.dims, envKeep));
    if (wantQfi) {
      const ComplexMatrix pol = partialTraceMatrix(rho, q.dims, q.policySites);
      const ComplexMatrix dpol = (partialTraceMatrix(rhoP, q.dims, q.policySites) -
                                  partialTraceMatrix(rhoM, q.dims, q.policySites)) / (2.0 * delta);
      rec.metrics.push("qfi_policy", sldFisher(pol, dpol));
    }
    rec.metrics.push("event_flag", event ? 1.0 : 0.0);
  };

  auto project = [](const ComplexMatrix& p, const ComplexMatrix& r) {
    ComplexMatrix out = p * r * p;
    const double tr = out.trace().real();
    require(tr > 0.0, ErrorCode::ZeroProbabilityOutcome, "shifted state has no weight on the sampled outcome");
    return ComplexMatrix(out / tr);
  };
  auto average = [&](const ComplexMatrix& r) {
    ComplexMatrix out = ComplexMatrix::Zero(r.rows(), r.cols());
    for (const auto& p : q.projectors) out += p * r * p;
    return out;
  };

  sample(0.0, false);
  for (std::uint64_t k = 1; k <= cfg.steps; ++k) {
    if (dephase) {
      rho = validatedState(rk4Step(lm, rho, cfg.dt), q.dims).matrix();
      if (wantQfi) {
        rhoP = rk4Step(lp, rhoP, cfg.dt);
        rhoM = rk4Step(lmn, rhoM, cfg.dt);
      }
    } else {
      rho = u * rho * u.adjoint();
      if (wantQfi) {
        rhoP = up * rhoP * up.adjoint();
        rhoM = um * rhoM * um.adjoint();
      }
    }
    const double t = double(k) * cfg.dt;
    const bool event = measure && k % cfg.readoutEvery == 0;
    if (event) {
      MeasurementEvent ev;
      ev.step = std::size_t(k);
      ev.time = t;
      ev.seed = cfg.seed;
      ev.energyBefore = energyOf(q.hamiltonian, rho);
      if (cfg.readout == ReadoutMode::Projective) {
        const auto r = projectiveMeasure(DensityOperator(rho, q.dims), q.projectors, stream, cfg.seed);
        rho = r.postState.matrix();
        if (wantQfi) {
          rhoP = project(q.projectors[r.outcomeIndex], rhoP);
          rhoM = project(q.projectors[r.outcomeIndex], rhoM);
        }
        ev.kind = "pointer";
        ev.outcome = int(r.outcomeIndex);
        ev.probability = r.probability;
      } else {
        rho = average(rho);
        if (wantQfi) {
          rhoP = average(rhoP);
          rhoM = average(rhoM);
        }
        ev.kind = "pointer-average";
        ev.outcome = -1;
        ev.probability = 1.0;
      }
      ev.energyAfter = energyOf(q.hamiltonian, rho);
      rec.events.push_back(ev);
    }
    sample(t, event);
  }
  rec.check();
  return rec;
}

inline TrajectoryRecord runQagi(const ScenarioConfig& cfg) {
  const QagiToy toy = buildQagiToy(cfg);
  QuantumRun q{toy.termNames, toy.terms, toy.hamiltonian, toy.policyDirection, toy.dims, {qagi::kA1, qagi::kA2},
               qagi::kEnv, toy.initialState.matrix(), std::nullopt, 0.0, toy.pointerProjectors};
  if (cfg.readout == ReadoutMode::Dephasing) {
    q.jump = toy.dephasing.jumps().front().op;
    q.jumpRate = toy.dephasing.jumps().front().rate;
  }
  return runQuantum(q, cfg);
}

inline TrajectoryRecord runCustom(const ScenarioConfig& cfg) {
  const std::size_t n = cfg.terms.front().pauli.size();
  QuantumRun q;
  q.dims.assign(n, 2);
  const Index dim = Index{1} << n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (const auto& t : cfg.terms) {
    q.termNames.push_back(t.name);
    q.terms.emplace_back(t.coefficient * pauli::string(t.pauli));
    h += t.coefficient * pauli::string(t.pauli);
  }
  q.hamiltonian = HermitianOperator(h);
  q.direction = HermitianOperator(pauli::string(cfg.terms.front().pauli));
  for (std::size_t i = 0; i + 1 < n; ++i) q.policySites.push_back(i);
  q.envSite = n - 1;
  const ComplexVector plus = (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0);
  const ComplexVector psi = kron(ket(dim / 2, 0), plus);
  q.rho0 = psi * psi.adjoint();
  return runQuantum(q, cfg);
}

inline TrajectoryRecord runCagi(const ScenarioConfig& cfg) {
  TrajectoryRecord rec;
  rec.config = cfg;
  SeededStream stream(cfg.seed);
  const double theta0 = stream.uniform(-1.0, 1.0);

  // External read-out of Z_E: Born-sampled value handed to the agent. The
  // harness keeps rho_E as the reference environment; the agent cannot act
  // on it except through the actuator.
  ComplexMatrix rhoE(2, 2);
  rhoE << 0.5, 0.5, 0.5, 0.5;
  const double pUp = rhoE(0, 0).real();
  const double u = stream.uniform();
  MeasurementEvent reader{0, 0.0, "reader", u < pUp ? 1 : -1, u < pUp ? pUp : 1.0 - pUp, 0.0, 0.0, cfg.seed};
  const CagiToy toy = buildCagiToy(cfg, [&] { return reader.outcome; });
  const auto& h = toy.hamiltonian;

  PhaseSpaceState s({toy.sensedBit, theta0}, {0.0, 0.0}, {"memory", "theta"});
  reader.energyBefore = reader.energyAfter = h.evaluate(s, 0.0);
  rec.events.push_back(reader);
  std::vector<ReportTerm> rt = reportTerms(toy);
  rec.commutation = commutationReport(rt, Side::Classical, s);

  auto sample = [&](double t, bool event) {
    rec.times.push_back(t);
    if (cfg.wants("energy")) {
      const double qA = actionBit(s.q[cagi::kTheta]);
      const double act = toy.actuator.energy(rhoE, qA, t);
      rec.metrics.push("energy_total", h.evaluate(s, t) + act);
      for (const auto& term : h.terms()) rec.metrics.push("energy_" + term.name, term.evaluate(s, t));
      rec.metrics.push("energy_actuator", act);
    }
    recordEnvironment(rec, cfg, rhoE);
    if (cfg.wants("qfi_policy")) rec.metrics.push("qfi_policy", 0.0);
    rec.metrics.push("event_flag", event ? 1.0 : 0.0);
  };

  sample(0.0, true);
  const double sub = cfg.dt / double(cfg.substeps);
  for (std::uint64_t k = 1; k <= cfg.steps; ++k) {
    const double t0 = double(k - 1) * cfg.dt;
    for (std::uint64_t j = 0; j < cfg.substeps; ++j) s = leapfrogStep(h, s, sub, t0 + double(j) * sub);
    toy.actuator.apply(rhoE, actionBit(s.q[cagi::kTheta]), t0, cfg.dt);
    sample(double(k) * cfg.dt, false);
  }
  rec.check();
  return rec;
}

}  // namespace detail

inline TrajectoryRecord runScenario(const ScenarioConfig& cfg) {
  detail::validateConfig(cfg);
  switch (cfg.scenario) {
    case ScenarioKind::QagiToy: return detail::runQagi(cfg);
    case ScenarioKind::CagiToy: return detail::runCagi(cfg);
    case ScenarioKind::Custom: return detail::runCustom(cfg);
  }
  fail(ErrorCode::InvalidParameter, "unknown scenario");
}

/// Commutation matrix of a scenario's terms at its initial state.
inline CommutationMatrix scenarioCommutation(const ScenarioConfig& cfg) {
  ScenarioConfig one = cfg;
  one.steps = 1;
  one.metrics = {};
  return runScenario(one).commutation;
}

// ---------------------------------------------------------------------------
// Decoherence fit

struct RateFit {
  double rate = 0.0;
  double rSquared = 0.0;
};

/// Least-squares slope of ln|rho_01| against t, negated.
inline RateFit fitDecoherenceRate(std::span<const double> times, std::span<const double> magnitudes) {
  require(times.size() == magnitudes.size(), ErrorCode::DimensionMismatch, "times and magnitudes differ in length");
  require(times.size() >= 20, ErrorCode::SeriesTooShort, "need at least 20 samples");
  const std::size_t n = times.size();
  double mt = 0.0, my = 0.0;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(magnitudes[i] > 1e-12, ErrorCode::NonpositiveSample, "sample " + std::to_string(i) + " is <= 1e-12");
    y[i] = std::log(magnitudes[i]);
    mt += times[i];
    my += y[i];
  }
  mt /= double(n);
  my /= double(n);
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (times[i] - mt) * (times[i] - mt);
    sty += (times[i] - mt) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(stt > 0.0, ErrorCode::InvalidParameter, "time samples are all equal");
  const double slope = sty / stt;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (my + slope * (times[i] - mt));
    ssr += r * r;
  }
  return {-slope, syy > 0.0 ? 1.0 - ssr / syy : 1.0};
}

/// Uses the read-out instants when at least 20 were flagged, else every sample.
inline RateFit fitDecoherenceRate(const TrajectoryRecord& rec) {
  const auto& mag = rec.metrics.at("offdiag_env_abs");
  std::vector<double> t, v;
  if (rec.metrics.contains("event_flag")) {
    const auto& flag = rec.metrics.at("event_flag");
    for (std::size_t i = 0; i < flag.size(); ++i)
      if (flag[i] != 0.0) {
        t.push_back(rec.times[i]);
        v.push_back(mag[i]);
      }
  }
  if (t.size() < 20) {
    t = rec.times;
    v = mag;
  }
  return fitDecoherenceRate(t, v);
}

}  // namespace hamagent
