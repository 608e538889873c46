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

// Classical phase-space engine. A ClassicalHamiltonian is a sum of named
// terms over (q, p); each term carries a smooth value for dynamics, an
// optional exact (unsmoothed) value for satisfaction checks, and an optional
// analytic gradient. Integration is the generalized Stormer-Verlet scheme,
// which is explicit for separable terms and symplectic for all of them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hamagent/error.hpp"
#include "hamagent/generator.hpp"
#include "hamagent/infogeo.hpp"
#include "hamagent/trajectory.hpp"

namespace hamagent {

struct PhaseSpaceState {
  std::vector<double> q;
  std::vector<double> p;
  std::vector<std::string> labels;

  PhaseSpaceState(std::vector<double> q_, std::vector<double> p_, std::vector<std::string> labels_ = {})
      : q(std::move(q_)), p(std::move(p_)), labels(std::move(labels_)) {
    require(!q.empty() && q.size() == p.size(), ErrorCode::InvalidState, "q and p must have equal length >= 1");
    require(labels.empty() || labels.size() == q.size(), ErrorCode::InvalidState, "one label per coordinate");
    for (std::size_t i = 0; i < q.size(); ++i)
      require(std::isfinite(q[i]) && std::isfinite(p[i]), ErrorCode::NonfiniteEvaluation,
              "non-finite phase-space entry at coordinate " + std::to_string(i));
  }

  std::size_t size() const { return q.size(); }
};

using Observable = std::function<double(const PhaseSpaceState&)>;
using TermFunction = std::function<double(const PhaseSpaceState&, double t)>;
/// Adds dH/dq and dH/dp into the two spans.
using TermGradient = std::function<void(const PhaseSpaceState&, double t, std::span<double>, std::span<double>)>;

struct HamiltonianTerm {
  std::string name;
  TermFunction value;
  TermFunction exact;     // empty: same as value
  TermGradient gradient;  // empty: central differences of value

  double evaluate(const PhaseSpaceState& s, double t) const { return value(s, t); }
  double evaluateExact(const PhaseSpaceState& s, double t) const { return exact ? exact(s, t) : value(s, t); }
};

inline constexpr double kGradientStep = 1e-6;
inline constexpr double kDefaultLearningDamping = 0.1;

class ClassicalHamiltonian {
 public:
  ClassicalHamiltonian() = default;
  explicit ClassicalHamiltonian(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  const std::vector<GeneratorSpec>& params() const { return params_; }
  const std::vector<std::size_t>& reflecting() const { return reflecting_; }
  double damping() const { return damping_; }

  ClassicalHamiltonian& addTerm(HamiltonianTerm term) {
    require(static_cast<bool>(term.value), ErrorCode::InvalidParameter, "term '" + term.name + "' has no value");
    terms_.push_back(std::move(term));
    return *this;
  }
  ClassicalHamiltonian& addSpec(GeneratorSpec spec) {
    params_.push_back(std::move(spec));
    return *this;
  }
  ClassicalHamiltonian& reflectAtZero(std::size_t index) {
    reflecting_.push_back(index);
    dim_ = std::max(dim_, index + 1);
    return *this;
  }
  ClassicalHamiltonian& setDamping(double gamma) {
    require(gamma >= 0.0 && std::isfinite(gamma), ErrorCode::InvalidParameter, "damping must be >= 0");
    damping_ = gamma;
    return *this;
  }
  ClassicalHamiltonian& growTo(std::size_t dim) {
    dim_ = std::max(dim_, dim);
    return *this;
  }

  double evaluate(const PhaseSpaceState& s, double t = 0.0) const {
    checkState(s);
    double e = 0.0;
    for (const auto& term : terms_) e += term.evaluate(s, t);
    return e;
  }

  double evaluateExact(const PhaseSpaceState& s, double t = 0.0) const {
    checkState(s);
    double e = 0.0;
    for (const auto& term : terms_) e += term.evaluateExact(s, t);
    return e;
  }

  const HamiltonianTerm& term(const std::string& name) const {
    auto it = std::find_if(terms_.begin(), terms_.end(), [&](const auto& x) { return x.name == name; });
    require(it != terms_.end(), ErrorCode::InvalidParameter, "no term named '" + name + "'");
    return *it;
  }

  /// Full gradient (dH/dq, dH/dp) at s.
  void gradient(const PhaseSpaceState& s, double t, std::span<double> dq, std::span<double> dp) const {
    checkState(s);
    std::fill(dq.begin(), dq.end(), 0.0);
    std::fill(dp.begin(), dp.end(), 0.0);
    for (const auto& term : terms_) {
      if (term.gradient) {
        term.gradient(s, t, dq, dp);
      } else {
        numericGradient(term, s, t, dq, dp);
      }
    }
    for (std::size_t i = 0; i < dq.size(); ++i)
      require(std::isfinite(dq[i]) && std::isfinite(dp[i]), ErrorCode::NonfiniteEvaluation,
              "non-finite gradient at coordinate " + std::to_string(i));
  }

  /// Sum of Hamiltonians over a shared coordinate layout.
  friend ClassicalHamiltonian operator+(ClassicalHamiltonian a, const ClassicalHamiltonian& b) {
    a.dim_ = std::max(a.dim_, b.dim_);
    a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
    a.params_.insert(a.params_.end(), b.params_.begin(), b.params_.end());
    for (std::size_t r : b.reflecting_)
      if (std::find(a.reflecting_.begin(), a.reflecting_.end(), r) == a.reflecting_.end()) a.reflecting_.push_back(r);
    a.damping_ += b.damping_;
    return a;
  }

 private:
  void checkState(const PhaseSpaceState& s) const {
    require(s.size() >= dim_, ErrorCode::DimensionMismatch,
            "state has " + std::to_string(s.size()) + " coordinates, Hamiltonian needs " + std::to_string(dim_));
  }

  static void numericGradient(const HamiltonianTerm& term, const PhaseSpaceState& s, double t, std::span<double> dq,
                              std::span<double> dp) {
    PhaseSpaceState probe = s;
    for (std::size_t i = 0; i < s.size(); ++i) {
      probe.q[i] = s.q[i] + kGradientStep;
      const double hi = term.evaluate(probe, t);
      probe.q[i] = s.q[i] - kGradientStep;
      const double lo = term.evaluate(probe, t);
      probe.q[i] = s.q[i];
      dq[i] += (hi - lo) / (2.0 * kGradientStep);
      probe.p[i] = s.p[i] + kGradientStep;
      const double phi = term.evaluate(probe, t);
      probe.p[i] = s.p[i] - kGradientStep;
      const double plo = term.evaluate(probe, t);
      probe.p[i] = s.p[i];
      dp[i] += (phi - plo) / (2.0 * kGradientStep);
    }
  }

  std::size_t dim_ = 0;
  std::vector<HamiltonianTerm> terms_;
  std::vector<GeneratorSpec> params_;
  std::vector<std::size_t> reflecting_;
  double damping_ = 0.0;
};

// ---------------------------------------------------------------------------
// Generator catalogue

namespace smooth {

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Normalized Gaussian of width sigma.
inline double gaussian(double x, double sigma) {
  return std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

/// Smoothed truth value of a literal and its derivative with respect to q.
inline std::pair<double, double> literal(const Literal& l, double q, double sigma) {
  const double sign = l.negated ? -1.0 : 1.0;
  const double v = logistic(sign * (q - l.threshold) / sigma);
  return {v, sign * v * (1.0 - v) / sigma};
}

}  // namespace smooth

namespace detail {

inline std::vector<double> defaultedVector(const GeneratorSpec& spec, const std::string& name, std::size_t n,
                                           double fallback) {
  if (!spec.has(name)) return std::vector<double>(n, fallback);
  const auto& v = spec.require<std::vector<double>>(name);
  require(v.size() == n, ErrorCode::InvalidParameter,
          "parameter '" + name + "' needs " + std::to_string(n) + " entries");
  return v;
}

inline void requirePositive(std::span<const double> v, const std::string& what) {
  for (double x : v)
    require(std::isfinite(x) && x > 0.0, ErrorCode::InvalidParameter, what + " must be positive");
}

inline std::size_t indexParam(const GeneratorSpec& spec, const std::string& name, double fallback) {
  const double v = spec.get<double>(name, fallback);
  require(v >= 0.0 && v == std::floor(v), ErrorCode::InvalidParameter, "'" + name + "' must be a coordinate index");
  return static_cast<std::size_t>(v);
}

/// sum_l p_l^2 / (2 m_l) over coordinates offset .. offset + masses.size().
inline HamiltonianTerm kineticTerm(std::string name, std::size_t offset, std::vector<double> masses) {
  return {std::move(name),
          [offset, masses](const PhaseSpaceState& s, double) {
            double e = 0.0;
            for (std::size_t l = 0; l < masses.size(); ++l) e += s.p[offset + l] * s.p[offset + l] / (2.0 * masses[l]);
            return e;
          },
          {},
          [offset, masses](const PhaseSpaceState& s, double, std::span<double>, std::span<double> dp) {
            for (std::size_t l = 0; l < masses.size(); ++l) dp[offset + l] += s.p[offset + l] / masses[l];
          }};
}

/// Sum with contributions sorted first, so the result does not depend on the
/// order in which clauses were listed.
inline double orderFreeSum(std::vector<double> parts) {
  std::sort(parts.begin(), parts.end());
  double s = 0.0;
  for (double x : parts) s += x;
  return s;
}

struct Dataset {
  std::vector<std::vector<double>> inputs;
  std::vector<double> targets;
};

inline Dataset datasetParam(const GeneratorSpec& spec) {
  Dataset d{spec.require<std::vector<std::vector<double>>>("inputs"), spec.require<std::vector<double>>("targets")};
  require(!d.inputs.empty() && d.inputs.size() == d.targets.size(), ErrorCode::InvalidParameter,
          "dataset needs matching, nonempty inputs and targets");
  for (const auto& s : d.inputs)
    require(s.size() == d.inputs.front().size() && !s.empty(), ErrorCode::InvalidParameter,
            "all inputs must share one nonzero length");
  return d;
}

inline ClassicalHamiltonian buildInduction(const GeneratorSpec& spec) {
  const auto data = datasetParam(spec);
  const auto& weights = spec.require<std::vector<double>>("weights");
  const auto& form = spec.require<std::string>("predictor");
  require(form == "linear" || form == "tanh", ErrorCode::InvalidParameter, "predictor must be 'linear' or 'tanh'");
  require(weights.size() == data.inputs.size(), ErrorCode::InvalidParameter, "one weight per datum");
  for (double w : weights) require(std::isfinite(w) && w >= 0.0, ErrorCode::InvalidParameter, "weights must be >= 0");
  const std::size_t n = data.inputs.front().size();
  const std::size_t offset = indexParam(spec, "offset", 0);
  const auto masses = defaultedVector(spec, "masses", n, 1.0);
  requirePositive(masses, "masses");
  const bool useTanh = form == "tanh";

  auto predict = [=](const PhaseSpaceState& s, const std::vector<double>& x) {
    double u = 0.0;
    for (std::size_t l = 0; l < n; ++l) u += s.q[offset + l] * x[l];
    return useTanh ? std::tanh(u) : u;
  };

  ClassicalHamiltonian h(offset + n);
  h.addTerm({"induction_fit",
             [=](const PhaseSpaceState& s, double) {
               double e = 0.0;
               for (std::size_t i = 0; i < data.inputs.size(); ++i) {
                 const double r = predict(s, data.inputs[i]) - data.targets[i];
                 e += 0.5 * weights[i] * r * r;
               }
               return e;
             },
             {},
             [=](const PhaseSpaceState& s, double, std::span<double> dq, std::span<double>) {
               for (std::size_t i = 0; i < data.inputs.size(); ++i) {
                 const double f = predict(s, data.inputs[i]);
                 const double slope = useTanh ? 1.0 - f * f : 1.0;
                 const double c = weights[i] * (f - data.targets[i]) * slope;
                 for (std::size_t l = 0; l < n; ++l) dq[offset + l] += c * data.inputs[i][l];
               }
             }});
  h.addTerm(kineticTerm("induction_kinetic", offset, masses));
  return h;
}

inline ClassicalHamiltonian buildReasoning(const GeneratorSpec& spec) {
  const auto& clauses = spec.require<std::vector<Clause>>("clauses");
  require(!clauses.empty(), ErrorCode::InvalidParameter, "reasoning needs at least one clause");
  const auto mu = defaultedVector(spec, "mu", clauses.size(), 1.0);
  requirePositive(mu, "penalty weights mu");
  const double sigma = spec.get<double>("smoothing", 0.05);
  require(sigma > 0.0, ErrorCode::InvalidParameter, "smoothing width must be positive");
  std::size_t dim = 0;
  for (const auto& c : clauses) {
    require(!c.literals.empty(), ErrorCode::InvalidParameter, "empty clause");
    dim = std::max(dim, c.maxIndex() + 1);
  }

  // mu (1 - phi) with phi = 1 - prod_k (1 - literal_k).
  ClassicalHamiltonian h(dim);
  h.addTerm({"reasoning_penalty",
             [=](const PhaseSpaceState& s, double) {
               std::vector<double> parts;
               for (std::size_t a = 0; a < clauses.size(); ++a) {
                 double unsat = 1.0;
                 for (const auto& l : clauses[a].literals) unsat *= 1.0 - smooth::literal(l, s.q[l.index], sigma).first;
                 parts.push_back(mu[a] * unsat);
               }
               return orderFreeSum(std::move(parts));
             },
             [=](const PhaseSpaceState& s, double) {
               std::vector<double> parts;
               for (std::size_t a = 0; a < clauses.size(); ++a)
                 parts.push_back(clauses[a].satisfied(s.q) ? 0.0 : mu[a]);
               return orderFreeSum(std::move(parts));
             },
             [=](const PhaseSpaceState& s, double, std::span<double> dq, std::span<double>) {
               for (std::size_t a = 0; a < clauses.size(); ++a) {
                 const auto& lits = clauses[a].literals;
                 std::vector<double> miss(lits.size()), dmiss(lits.size());
                 for (std::size_t k = 0; k < lits.size(); ++k) {
                   const auto [v, dv] = smooth::literal(lits[k], s.q[lits[k].index], sigma);
                   miss[k] = 1.0 - v;
                   dmiss[k] = -dv;
                 }
                 for (std::size_t k = 0; k < lits.size(); ++k) {
                   double prod = dmiss[k];
                   for (std::size_t j = 0; j < lits.size(); ++j)
                     if (j != k) prod *= miss[j];
                   dq[lits[k].index] += mu[a] * prod;
                 }
               }
             }});
  return h;
}

inline ClassicalHamiltonian buildRecursion(const GeneratorSpec& spec) {
  const double m = spec.get<double>("mass", 1.0);
  const double k = spec.get<double>("stiffness", 1.0);
  const double one[2] = {m, k};
  requirePositive(one, "recursion mass and stiffness");
  const std::size_t i = indexParam(spec, "index", 0);
  ClassicalHamiltonian h(i + 1);
  h.addTerm(kineticTerm("recursion_kinetic", i, {m}));
  h.addTerm({"recursion_potential", [=](const PhaseSpaceState& s, double) { return 0.5 * k * s.q[i] * s.q[i]; }, {},
             [=](const PhaseSpaceState& s, double, std::span<double> dq, std::span<double>) { dq[i] += k * s.q[i]; }});
  h.reflectAtZero(i);
  return h;
}

inline ClassicalHamiltonian buildLearning(const GeneratorSpec& spec) {
  const auto& lossKind = spec.require<std::string>("loss");
  const double lambda = spec.get<double>("lambda", 1.0);
  require(std::isfinite(lambda) && lambda > 0.0, ErrorCode::InvalidParameter, "lambda must be positive");
  const std::size_t offset = indexParam(spec, "offset", 0);

  std::function<double(const PhaseSpaceState&)> loss;
  std::function<void(const PhaseSpaceState&, std::span<double>)> lossGrad;
  std::size_t n = 0;
  if (lossKind == "quadratic") {
    const auto target = spec.require<std::vector<double>>("target");
    require(!target.empty(), ErrorCode::InvalidParameter, "empty target");
    n = target.size();
    loss = [=](const PhaseSpaceState& s) {
      double e = 0.0;
      for (std::size_t l = 0; l < n; ++l) e += 0.5 * (s.q[offset + l] - target[l]) * (s.q[offset + l] - target[l]);
      return e;
    };
    lossGrad = [=](const PhaseSpaceState& s, std::span<double> dq) {
      for (std::size_t l = 0; l < n; ++l) dq[offset + l] += lambda * (s.q[offset + l] - target[l]);
    };
  } else if (lossKind == "mse") {
    const auto data = datasetParam(spec);
    n = data.inputs.front().size();
    const double inv = 1.0 / double(data.inputs.size());
    auto residual = [=](const PhaseSpaceState& s, std::size_t i) {
      double u = 0.0;
      for (std::size_t l = 0; l < n; ++l) u += s.q[offset + l] * data.inputs[i][l];
      return u - data.targets[i];
    };
    loss = [=](const PhaseSpaceState& s) {
      double e = 0.0;
      for (std::size_t i = 0; i < data.inputs.size(); ++i) e += residual(s, i) * residual(s, i);
      return e * inv;
    };
    lossGrad = [=](const PhaseSpaceState& s, std::span<double> dq) {
      for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        const double c = lambda * 2.0 * inv * residual(s, i);
        for (std::size_t l = 0; l < n; ++l) dq[offset + l] += c * data.inputs[i][l];
      }
    };
  } else {
    fail(ErrorCode::InvalidParameter, "loss must be 'quadratic' or 'mse'");
  }
  const auto masses = defaultedVector(spec, "masses", n, 1.0);
  requirePositive(masses, "masses");

  ClassicalHamiltonian h(offset + n);
  h.addTerm(kineticTerm("learning_kinetic", offset, masses));
  h.addTerm({"learning_loss", [=](const PhaseSpaceState& s, double) { return lambda * loss(s); }, {},
             [=](const PhaseSpaceState& s, double, std::span<double> dq, std::span<double>) { lossGrad(s, dq); }});
  // "damped" switches on the default damping; an explicit "damping" wins.
  const double fallback = spec.get<double>("damped", 0.0) != 0.0 ? kDefaultLearningDamping : 0.0;
  h.setDamping(spec.get<double>("damping", fallback));
  return h;
}

inline ClassicalHamiltonian buildSensing(const GeneratorSpec& spec) {
  const double kappa = spec.require<double>("kappa");
  require(std::isfinite(kappa) && kappa > 0.0, ErrorCode::InvalidParameter, "kappa must be positive");
  const double sigma = spec.get<double>("smoothing", 0.05);
  require(sigma > 0.0, ErrorCode::InvalidParameter, "smoothing width must be positive");
  const std::size_t is = indexParam(spec, "sensor_index", 0);
  const std::size_t ie = indexParam(spec, "env_index", 1);
  require(is != ie, ErrorCode::InvalidParameter, "sensor and environment need distinct coordinates");

  // kappa * P * g_sigma(q_sens - q_env), P the sensor momentum.
  ClassicalHamiltonian h(std::max(is, ie) + 1);
  h.addTerm({"sensing_coupling",
             [=](const PhaseSpaceState& s, double) { return kappa * s.p[is] * smooth::gaussian(s.q[is] - s.q[ie], sigma); },
             {},
             [=](const PhaseSpaceState& s, double, std::span<double> dq, std::span<double> dp) {
               const double x = s.q[is] - s.q[ie];
               const double g = smooth::gaussian(x, sigma);
               const double dg = -x / (sigma * sigma) * g;
               dq[is] += kappa * s.p[is] * dg;
               dq[ie] -= kappa * s.p[is] * dg;
               dp[is] += kappa * g;
             }});
  return h;
}

inline ClassicalHamiltonian buildEnvironment(const GeneratorSpec& spec) {
  const std::size_t ie = indexParam(spec, "env_index", 1);
  const double m = spec.get<double>("env_mass", 1.0);
  const double k = spec.get<double>("env_stiffness", 1.0);
  const double mk[2] = {m, k};
  requirePositive(mk, "environment mass and stiffness");
  const auto control = spec.get<std::vector<Pulse>>("control", {});

  // Harmonic bare environment; the drive couples u(t) to F = dH_bare/dq = k q.
  ClassicalHamiltonian h(ie + 1);
  h.addTerm(kineticTerm("environment_kinetic", ie, {m}));
  h.addTerm({"environment_potential", [=](const PhaseSpaceState& s, double) { return 0.5 * k * s.q[ie] * s.q[ie]; }, {},
             [=](const PhaseSpaceState& s, double, std::span<double> dq, std::span<double>) { dq[ie] += k * s.q[ie]; }});
  h.addTerm({"environment_drive",
             [=](const PhaseSpaceState& s, double t) { return -scheduleValue(control, t) * k * s.q[ie]; }, {},
             [=](const PhaseSpaceState&, double t, std::span<double> dq, std::span<double>) {
               dq[ie] -= scheduleValue(control, t) * k;
             }});
  return h;
}

}  // namespace detail

inline ClassicalHamiltonian buildClassicalGenerator(const GeneratorSpec& spec) {
  require(spec.side == Side::Classical, ErrorCode::InvalidParameter, "spec is not a classical generator");
  ClassicalHamiltonian h;
  switch (spec.kind) {
    case GeneratorKind::Induction: h = detail::buildInduction(spec); break;
    case GeneratorKind::Reasoning: h = detail::buildReasoning(spec); break;
    case GeneratorKind::Recursion: h = detail::buildRecursion(spec); break;
    case GeneratorKind::Learning: h = detail::buildLearning(spec); break;
    case GeneratorKind::Sensing: h = detail::buildSensing(spec); break;
    case GeneratorKind::Environment: h = detail::buildEnvironment(spec); break;
    default: fail(ErrorCode::UnknownKind, "unknown classical generator kind");
  }
  h.addSpec(spec);
  return h;
}

// ---------------------------------------------------------------------------
// Observables and brackets

namespace observable {
inline Observable coordinate(std::size_t i) {
  return [i](const PhaseSpaceState& s) { return s.q.at(i); };
}
inline Observable momentum(std::size_t i) {
  return [i](const PhaseSpaceState& s) { return s.p.at(i); };
}
inline Observable term(const ClassicalHamiltonian& h, const std::string& name, bool exact = false, double t = 0.0) {
  const HamiltonianTerm& tm = h.term(name);
  return [tm, exact, t](const PhaseSpaceState& s) { return exact ? tm.evaluateExact(s, t) : tm.evaluate(s, t); };
}
inline Observable energy(const ClassicalHamiltonian& h, double t = 0.0) {
  return [h, t](const PhaseSpaceState& s) { return h.evaluate(s, t); };
}
}  // namespace observable

namespace detail {
inline double centralDiff(const Observable& f, PhaseSpaceState& probe, double& slot, double step) {
  const double orig = slot;
  slot = orig + step;
  const double hi = f(probe);
  slot = orig - step;
  const double lo = f(probe);
  slot = orig;
  require(std::isfinite(hi) && std::isfinite(lo), ErrorCode::NonfiniteEvaluation, "observable not finite near probe");
  return (hi - lo) / (2.0 * step);
}
}  // namespace detail

/// {f, g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i) by central differences.
inline double poissonBracket(const Observable& f, const Observable& g, const PhaseSpaceState& at,
                             double step = 1e-6) {
  require(step > 0.0, ErrorCode::InvalidParameter, "finite-difference step must be positive");
  PhaseSpaceState probe = at;
  double sum = 0.0;
  for (std::size_t i = 0; i < at.size(); ++i) {
    const double fq = detail::centralDiff(f, probe, probe.q[i], step);
    const double fp = detail::centralDiff(f, probe, probe.p[i], step);
    const double gq = detail::centralDiff(g, probe, probe.q[i], step);
    const double gp = detail::centralDiff(g, probe, probe.p[i], step);
    sum += fq * gp - fp * gq;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Integration

inline constexpr int kMaxImplicitIterations = 100;

namespace detail {
inline bool settled(std::span<const double> a, std::span<const double> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-14 * (1.0 + std::abs(a[i]))) return false;
  return true;
}

inline void applyBoundaries(const ClassicalHamiltonian& h, PhaseSpaceState& s) {
  for (std::size_t i : h.reflecting())
    if (s.q[i] < 0.0) {
      s.q[i] = -s.q[i];
      s.p[i] = -s.p[i];
    }
}
}  // namespace detail

/// One generalized Stormer-Verlet step from time t:
///   p' = p - dt/2 dH/dq(q, p')                       (implicit in p')
///   Q  = q + dt/2 [dH/dp(q, p') + dH/dp(Q, p')]      (implicit in Q)
///   P  = p' - dt/2 dH/dq(Q, p')
/// Both fixed points converge in one pass for separable Hamiltonians. Linear
/// momentum damping, when set, is split symmetrically around the step.
inline PhaseSpaceState leapfrogStep(const ClassicalHamiltonian& h, const PhaseSpaceState& s, double dt,
                                    double t = 0.0) {
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::InvalidParameter, "dt must be positive");
  const std::size_t n = s.size();
  std::vector<double> dq(n), dp(n);
  const double shrink = std::exp(-0.5 * h.damping() * dt);

  PhaseSpaceState cur = s;
  for (double& x : cur.p) x *= shrink;

  // Half kick.
  PhaseSpaceState half = cur;
  for (int it = 0;; ++it) {
    require(it < kMaxImplicitIterations, ErrorCode::ConvergenceFailure, "momentum half-step did not converge");
    h.gradient(half, t, dq, dp);
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = cur.p[i] - 0.5 * dt * dq[i];
    const bool done = detail::settled(next, half.p);
    half.p = std::move(next);
    if (done && it > 0) break;
  }

  // Drift.
  h.gradient(half, t + 0.5 * dt, dq, dp);
  const std::vector<double> vStart = dp;
  PhaseSpaceState drift = half;
  for (int it = 0;; ++it) {
    require(it < kMaxImplicitIterations, ErrorCode::ConvergenceFailure, "position update did not converge");
    h.gradient(drift, t + 0.5 * dt, dq, dp);
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = half.q[i] + 0.5 * dt * (vStart[i] + dp[i]);
    const bool done = detail::settled(next, drift.q);
    drift.q = std::move(next);
    if (done && it > 0) break;
  }

  // Half kick.
  h.gradient(drift, t + dt, dq, dp);
  PhaseSpaceState out = drift;
  for (std::size_t i = 0; i < n; ++i) out.p[i] = (drift.p[i] - 0.5 * dt * dq[i]) * shrink;
  detail::applyBoundaries(h, out);
  return PhaseSpaceState(std::move(out.q), std::move(out.p), s.labels);
}

/// Forward Euler; not symplectic. Kept as a reference map for volume checks.
inline PhaseSpaceState explicitEulerStep(const ClassicalHamiltonian& h, const PhaseSpaceState& s, double dt,
                                         double t = 0.0) {
  require(dt > 0.0, ErrorCode::InvalidParameter, "dt must be positive");
  std::vector<double> dq(s.size()), dp(s.size());
  h.gradient(s, t, dq, dp);
  PhaseSpaceState out = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.q[i] = s.q[i] + dt * dp[i];
    out.p[i] = s.p[i] - dt * dq[i];
  }
  return PhaseSpaceState(std::move(out.q), std::move(out.p), s.labels);
}

using StepMap = std::function<PhaseSpaceState(const PhaseSpaceState&)>;

/// Determinant of the Jacobian of a one-step map (q, p) -> (q', p').
inline double liouvilleJacobian(const StepMap& step, const PhaseSpaceState& s, double fdStep = 0x1.0p-20) {
  const std::size_t n = s.size();
  const auto flat = [n](const PhaseSpaceState& x) {
    Eigen::VectorXd v(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      v(Index(i)) = x.q[i];
      v(Index(n + i)) = x.p[i];
    }
    return v;
  };
  Eigen::MatrixXd jac(2 * n, 2 * n);
  for (std::size_t c = 0; c < 2 * n; ++c) {
    PhaseSpaceState hi = s, lo = s;
    double& a = c < n ? hi.q[c] : hi.p[c - n];
    double& b = c < n ? lo.q[c] : lo.p[c - n];
    a += fdStep;
    b -= fdStep;
    jac.col(Index(c)) = (flat(step(hi)) - flat(step(lo))) / (2.0 * fdStep);
  }
  const double det = jac.determinant();
  require(std::isfinite(det), ErrorCode::NonfiniteEvaluation, "non-finite Jacobian determinant");
  return det;
}

inline double liouvilleJacobian(const ClassicalHamiltonian& h, const PhaseSpaceState& s, double dt, double t = 0.0) {
  require(dt > 0.0, ErrorCode::InvalidParameter, "dt must be positive");
  return liouvilleJacobian([&](const PhaseSpaceState& x) { return leapfrogStep(h, x, dt, t); }, s);
}

using EnsembleFn = std::function<ProbabilityVector(const PhaseSpaceState&)>;

/// Integrates `steps` leapfrog steps and samples metrics at every state,
/// including the initial one. Metric names: "energy", "exact_energy",
/// "term_energies" (one "energy_<term>" series per term), "shannon_entropy"
/// (needs an ensemble supplier).
inline Trajectory<PhaseSpaceState> evolveClassical(const ClassicalHamiltonian& h, const PhaseSpaceState& s0, double dt,
                                                   std::size_t steps,
                                                   const std::vector<std::string>& metrics = {"energy"},
                                                   const EnsembleFn& ensemble = {}, double t0 = 0.0) {
  require(steps >= 1, ErrorCode::InvalidParameter, "steps must be >= 1");
  for (const auto& m : metrics) {
    require(m == "energy" || m == "exact_energy" || m == "term_energies" || m == "shannon_entropy",
            ErrorCode::UnknownMetric, "unknown classical metric '" + m + "'");
    require(m != "shannon_entropy" || static_cast<bool>(ensemble), ErrorCode::MissingSupplier,
            "shannon_entropy needs an ensemble supplier");
  }
  Trajectory<PhaseSpaceState> traj;
  auto sample = [&](const PhaseSpaceState& s, double t) {
    traj.times.push_back(t);
    traj.states.push_back(s);
    for (const auto& m : metrics) {
      if (m == "energy") {
        traj.metrics.push("energy", h.evaluate(s, t));
      } else if (m == "exact_energy") {
        traj.metrics.push("exact_energy", h.evaluateExact(s, t));
      } else if (m == "term_energies") {
        for (const auto& term : h.terms()) traj.metrics.push("energy_" + term.name, term.evaluate(s, t));
      } else {
        traj.metrics.push("shannon_entropy", shannonEntropy(ensemble(s)));
      }
    }
  };
  PhaseSpaceState s = s0;
  sample(s, t0);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + double(k) * dt;
    s = leapfrogStep(h, s, dt, t);
    sample(s, t0 + double(k + 1) * dt);
  }
  return traj;
}

}  // namespace hamagent
