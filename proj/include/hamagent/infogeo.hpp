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

// Entropies, divergences, fidelity and Fisher information. All logarithms
// are natural, so entropies come out in nats.

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "hamagent/error.hpp"
#include "hamagent/tensor.hpp"

namespace hamagent {

/// Eigenvalues at or below this are treated as exact zeros when taking logs.
inline constexpr double kSupportCutoff = 1e-12;

class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
    require(!probs_.empty(), ErrorCode::InvalidState, "empty probability vector");
    double sum = 0.0;
    for (double p : probs_) {
      require(std::isfinite(p) && p >= 0.0 && p <= 1.0, ErrorCode::InvalidState,
              "probability entry outside [0, 1]");
      sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-10, ErrorCode::InvalidState, "probabilities do not sum to 1");
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& values() const { return probs_; }

 private:
  std::vector<double> probs_;
};

inline double entropyOf(std::span<const double> spectrum) {
  double s = 0.0;
  for (double p : spectrum)
    if (p > 0.0) s -= p * std::log(p);
  return s;
}

inline double shannonEntropy(const ProbabilityVector& p) { return entropyOf(p.values()); }

inline double vonNeumannEntropy(const DensityOperator& rho) {
  const RealVector ev = rho.eigenvalues();
  return entropyOf(std::span<const double>(ev.data(), std::size_t(ev.size())));
}

/// Divergence value, or an off-support marker when the true value is +infinity.
struct Divergence {
  double value = 0.0;
  bool offSupport = false;

  static Divergence infinite() { return {std::numeric_limits<double>::infinity(), true}; }
  bool finite() const { return !offSupport; }
};

inline Divergence klDivergence(const ProbabilityVector& p, const ProbabilityVector& q) {
  require(p.size() == q.size(), ErrorCode::DimensionMismatch, "distributions over different alphabets");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= kSupportCutoff) continue;
    if (q[i] <= kSupportCutoff) return Divergence::infinite();
    d += p[i] * std::log(p[i] / q[i]);
  }
  return {std::max(0.0, d), false};
}

/// S(rho || sigma) = Tr[rho (ln rho - ln sigma)].
inline Divergence relativeEntropy(const DensityOperator& rho, const DensityOperator& sigma) {
  require(rho.dim() == sigma.dim(), ErrorCode::DimensionMismatch, "relative entropy of unequal dimensions");
  const auto a = hermEig(rho.matrix());
  const auto b = hermEig(sigma.matrix());
  const ComplexMatrix overlap = a.vectors.adjoint() * b.vectors;  // <a_i|b_j>
  double d = 0.0;
  for (Index i = 0; i < a.values.size(); ++i) {
    const double p = a.values(i);
    if (p <= kSupportCutoff) continue;
    d += p * std::log(p);
    for (Index j = 0; j < b.values.size(); ++j) {
      const double w = std::norm(overlap(i, j));
      if (w <= 1e-10) continue;
      const double q = b.values(j);
      if (q <= kSupportCutoff) return Divergence::infinite();
      d -= p * w * std::log(q);
    }
  }
  return {std::max(0.0, d), false};
}

inline ComplexMatrix psdSqrt(const ComplexMatrix& m) {
  return hermitianFunction(m, [](double x) { return std::sqrt(std::max(0.0, x)); });
}

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
inline double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  require(rho.dim() == sigma.dim(), ErrorCode::DimensionMismatch, "fidelity of unequal dimensions");
  const ComplexMatrix s = psdSqrt(rho.matrix());
  ComplexMatrix inner = s * sigma.matrix() * s;
  inner = 0.5 * (inner + inner.adjoint());
  const RealVector ev = hermEig(inner).values;
  double root = 0.0;
  for (Index i = 0; i < ev.size(); ++i) root += std::sqrt(std::max(0.0, ev(i)));
  return std::clamp(root * root, 0.0, 1.0);
}

inline double buresDistance(const DensityOperator& rho, const DensityOperator& sigma) {
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - std::sqrt(fidelity(rho, sigma)))));
}

/// A smooth family theta -> rho_theta probed by central differences.
struct ParametrizedState {
  std::function<DensityOperator(std::span<const double>)> map;
  std::size_t paramDim = 1;
  double perturbation = 1e-5;

  DensityOperator operator()(std::span<const double> theta) const { return map(theta); }
};

/// Directional derivative of rho_theta by central differences.
inline ComplexMatrix stateDerivative(const ParametrizedState& ps, std::span<const double> theta,
                                     std::span<const double> direction) {
  require(ps.perturbation > 0.0, ErrorCode::InvalidParameter, "perturbation step must be positive");
  require(theta.size() == ps.paramDim && direction.size() == ps.paramDim, ErrorCode::DimensionMismatch,
          "parameter vector length does not match the family");
  std::vector<double> plus(theta.begin(), theta.end()), minus(theta.begin(), theta.end());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    plus[i] += ps.perturbation * direction[i];
    minus[i] -= ps.perturbation * direction[i];
  }
  return (ps(plus).matrix() - ps(minus).matrix()) / (2.0 * ps.perturbation);
}

/// SLD Fisher information of rho given its derivative d rho:
/// F = 2 sum_{lambda_i + lambda_j > eps} |<i|d rho|j>|^2 / (lambda_i + lambda_j).
inline double sldFisher(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  require(rho.rows() == drho.rows() && rho.cols() == drho.cols(), ErrorCode::DimensionMismatch,
          "state and derivative differ in shape");
  const auto eig = hermEig(rho);
  const ComplexMatrix d = eig.vectors.adjoint() * drho * eig.vectors;
  constexpr double eps = 1e-10;
  double f = 0.0;
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j) {
      const double s = eig.values(i) + eig.values(j);
      if (s > eps) f += 2.0 * std::norm(d(i, j)) / s;
    }
  return f;
}

/// SLD quantum Fisher information along a unit direction of the family.
inline double quantumFisherInformation(const ParametrizedState& ps, std::span<const double> theta,
                                       std::span<const double> direction) {
  double n2 = 0.0;
  for (double d : direction) n2 += d * d;
  require(std::abs(std::sqrt(n2) - 1.0) <= 1e-9, ErrorCode::InvalidParameter, "direction must be a unit vector");
  return sldFisher(ps(theta).matrix(), stateDerivative(ps, theta, direction));
}

inline double quantumFisherInformation(const ParametrizedState& ps, std::span<const double> theta) {
  require(ps.paramDim == 1, ErrorCode::InvalidParameter, "direction required for multi-parameter families");
  const double dir[1] = {1.0};
  return quantumFisherInformation(ps, theta, dir);
}

/// Fisher-Rao information sum_i (d p_i)^2 / p_i of a one-parameter family.
inline double classicalFisher(const std::function<ProbabilityVector(double)>& family, double theta, double step) {
  require(step > 0.0, ErrorCode::InvalidParameter, "finite-difference step must be positive");
  const auto p = family(theta);
  const auto hi = family(theta + step);
  const auto lo = family(theta - step);
  require(hi.size() == p.size() && lo.size() == p.size(), ErrorCode::DimensionMismatch,
          "family changes alphabet size");
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1e-12) continue;
    const double dp = (hi[i] - lo[i]) / (2.0 * step);
    f += dp * dp / p[i];
  }
  return f;
}

/// Single-qubit Bloch map r -> (I + r.sigma)/2, with |r| scaled back to at
/// most 1 - margin so the state stays full rank.
inline DensityOperator blochState(std::span<const double> r, double margin = 1e-6) {
  require(r.size() == 3, ErrorCode::DimensionMismatch, "Bloch vector needs three components");
  double n = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  const double scale = n > 1.0 - margin ? (1.0 - margin) / n : 1.0;
  const ComplexMatrix m =
      0.5 * (pauli::I() + scale * (r[0] * pauli::X() + r[1] * pauli::Y() + r[2] * pauli::Z()));
  return DensityOperator(m);
}

inline ParametrizedState blochFamily() {
  return {[](std::span<const double> r) { return blochState(r); }, 3, 1e-5};
}

}  // namespace hamagent
