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

// Quantum engine: unitary and Lindblad evolution of density operators,
// projective measurement with seeded Born sampling, and the quantum generator
// catalogue (penalty projectors, clock construction, transverse-field Ising,
// pointer coupling, driven environment) plus the relative-entropy induction
// cost and its gradient flow.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hamagent/error.hpp"
#include "hamagent/generator.hpp"
#include "hamagent/infogeo.hpp"
#include "hamagent/rng.hpp"
#include "hamagent/tensor.hpp"
#include "hamagent/trajectory.hpp"

namespace hamagent {

inline DensityOperator evolveUnitary(const HermitianOperator& h, const DensityOperator& rho0, double t) {
  require(h.dim() == rho0.dim(), ErrorCode::DimensionMismatch, "Hamiltonian and state dimensions differ");
  const ComplexMatrix u = expMinusIHt(h, t);
  return DensityOperator(u * rho0.matrix() * u.adjoint(), rho0.factorDims());
}

// ---------------------------------------------------------------------------
// Lindblad dynamics

namespace tol {
inline constexpr double kLindbladTrace = 1e-7;
inline constexpr double kLindbladPositivity = 1e-6;
inline constexpr double kLindbladStability = 0.1;
}  // namespace tol

struct JumpOperator {
  ComplexMatrix op;
  double rate = 1.0;  // 1/time; the dissipator uses sqrt(rate) * op
};

class LindbladModel {
 public:
  explicit LindbladModel(HermitianOperator hamiltonian, std::vector<JumpOperator> jumps = {})
      : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
    const Index d = hamiltonian_.dim();
    for (const auto& j : jumps_) {
      require(j.op.rows() == d && j.op.cols() == d, ErrorCode::DimensionMismatch,
              "jump operator does not match the Hamiltonian dimension");
      require(std::isfinite(j.rate) && j.rate >= 0.0, ErrorCode::InvalidParameter, "jump rates must be >= 0");
    }
  }

  Index dim() const { return hamiltonian_.dim(); }
  const HermitianOperator& hamiltonian() const { return hamiltonian_; }
  const std::vector<JumpOperator>& jumps() const { return jumps_; }

  /// L(rho) = -i[H, rho] + sum_a g_a (L rho L^+ - {L^+ L, rho}/2).
  ComplexMatrix apply(const ComplexMatrix& rho) const {
    const Complex i(0.0, 1.0);
    const ComplexMatrix& h = hamiltonian_.matrix();
    ComplexMatrix out = -i * (h * rho - rho * h);
    for (const auto& j : jumps_) {
      if (j.rate == 0.0) continue;
      const ComplexMatrix ldag = j.op.adjoint();
      const ComplexMatrix ll = ldag * j.op;
      out += j.rate * (j.op * rho * ldag - 0.5 * (ll * rho + rho * ll));
    }
    return out;
  }

  /// ||H|| + sum_a g_a ||L_a||^2 in spectral norm.
  double stiffness() const {
    double s = operatorNorm(hamiltonian_.matrix());
    for (const auto& j : jumps_) {
      const double n = operatorNorm(j.op);
      s += j.rate * n * n;
    }
    return s;
  }

 private:
  HermitianOperator hamiltonian_;
  std::vector<JumpOperator> jumps_;
};

/// One classical RK4 step of d rho/dt = L(rho), without validation.
inline ComplexMatrix rk4Step(const LindbladModel& model, const ComplexMatrix& rho, double dt) {
  const ComplexMatrix k1 = model.apply(rho);
  const ComplexMatrix k2 = model.apply(rho + 0.5 * dt * k1);
  const ComplexMatrix k3 = model.apply(rho + 0.5 * dt * k2);
  const ComplexMatrix k4 = model.apply(rho + dt * k3);
  return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline void checkLindbladStep(const LindbladModel& model, double dt) {
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::InvalidParameter, "dt must be positive");
  const double s = dt * model.stiffness();
  require(s <= tol::kLindbladStability, ErrorCode::StepTooLarge,
          "dt * (||H|| + sum rate ||L||^2) = " + std::to_string(s) + " exceeds 0.1");
}

/// Validates trace and positivity of an integrated state; never renormalizes.
inline DensityOperator validatedState(const ComplexMatrix& m, const std::vector<Index>& dims) {
  const double tr = m.trace().real();
  require(std::abs(tr - 1.0) <= tol::kLindbladTrace, ErrorCode::TraceDrift,
          "trace drifted to " + std::to_string(tr));
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  const double minEig = hermEig(herm).values(0);
  require(minEig >= -tol::kLindbladPositivity, ErrorCode::PositivityViolation,
          "minimum eigenvalue fell to " + std::to_string(minEig));
  return DensityOperator(herm, dims, tol::kLindbladTrace, tol::kLindbladPositivity);
}

inline DensityOperator lindbladStep(const LindbladModel& model, const DensityOperator& rho, double dt) {
  require(model.dim() == rho.dim(), ErrorCode::DimensionMismatch, "model and state dimensions differ");
  checkLindbladStep(model, dt);
  return validatedState(rk4Step(model, rho.matrix(), dt), rho.factorDims());
}

/// Fixed-step RK4 run. Every step is validated; every `recordEvery`-th state
/// (and the initial one) is stored with "trace" and "min_eigenvalue" series.
inline Trajectory<DensityOperator> lindbladEvolve(const LindbladModel& model, const DensityOperator& rho0, double dt,
                                                  std::size_t steps, std::size_t recordEvery = 1) {
  require(steps >= 1, ErrorCode::InvalidParameter, "steps must be >= 1");
  require(recordEvery >= 1, ErrorCode::InvalidParameter, "recordEvery must be >= 1");
  require(model.dim() == rho0.dim(), ErrorCode::DimensionMismatch, "model and state dimensions differ");
  checkLindbladStep(model, dt);
  Trajectory<DensityOperator> traj;
  auto record = [&](const DensityOperator& rho, double t) {
    traj.times.push_back(t);
    traj.states.push_back(rho);
    traj.metrics.push("trace", rho.trace());
    traj.metrics.push("min_eigenvalue", rho.eigenvalues()(0));
  };
  DensityOperator rho = rho0;
  record(rho, 0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    rho = validatedState(rk4Step(model, rho.matrix(), dt), rho.factorDims());
    if (k % recordEvery == 0 || k == steps) record(rho, double(k) * dt);
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Measurement

struct MeasurementRecord {
  std::size_t outcomeIndex = 0;
  double probability = 0.0;
  DensityOperator postState;
  std::uint64_t seed = 0;
};

inline void checkResolution(const std::vector<ComplexMatrix>& projectors, Index dim) {
  require(!projectors.empty(), ErrorCode::NotResolutionOfIdentity, "empty projector list");
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    const auto& p = projectors[k];
    require(p.rows() == dim && p.cols() == dim, ErrorCode::DimensionMismatch, "projector dimension mismatch");
    require(isProjector(p), ErrorCode::NotProjector, "operator " + std::to_string(k) + " is not a projector");
    for (std::size_t j = 0; j < k; ++j)
      require((p * projectors[j]).norm() <= tol::kProjector, ErrorCode::NotResolutionOfIdentity,
              "projectors " + std::to_string(j) + " and " + std::to_string(k) + " are not orthogonal");
    sum += p;
  }
  require((sum - ComplexMatrix::Identity(dim, dim)).norm() <= tol::kProjector, ErrorCode::NotResolutionOfIdentity,
          "projectors do not sum to the identity");
}

/// Born-rule sample drawn from an existing stream; `seed` is copied into the record.
inline MeasurementRecord projectiveMeasure(const DensityOperator& rho, const std::vector<ComplexMatrix>& projectors,
                                           SeededStream& stream, std::uint64_t seed) {
  checkResolution(projectors, rho.dim());
  std::vector<double> probs;
  for (const auto& p : projectors) probs.push_back(std::max(0.0, (p * rho.matrix()).trace().real()));
  const double u = stream.uniform();
  double acc = 0.0;
  std::size_t k = 0, last = 0;
  bool picked = false;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last = i;
    acc += probs[i];
    if (u < acc) {
      k = i;
      picked = true;
      break;
    }
  }
  if (!picked) k = last;  // rounding at the top of the cumulative sum
  require(probs[k] > 1e-300, ErrorCode::ZeroProbabilityOutcome, "sampled an outcome of probability zero");
  const ComplexMatrix post = projectors[k] * rho.matrix() * projectors[k] / probs[k];
  return {k, probs[k], DensityOperator(post, rho.factorDims()), seed};
}

inline MeasurementRecord projectiveMeasure(const DensityOperator& rho, const std::vector<ComplexMatrix>& projectors,
                                           std::uint64_t seed) {
  SeededStream stream(seed);
  return projectiveMeasure(rho, projectors, stream, seed);
}

/// Outcome-averaged post-measurement state sum_k P_k rho P_k.
inline DensityOperator nonselectiveMeasure(const DensityOperator& rho, const std::vector<ComplexMatrix>& projectors) {
  checkResolution(projectors, rho.dim());
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& p : projectors) out += p * rho.matrix() * p;
  return DensityOperator(out, rho.factorDims());
}

// ---------------------------------------------------------------------------
// Generator catalogue

/// Diagonal projector onto computational basis states of n qubits that satisfy
/// the clause. A literal on qubit i holds when its bit is 1 (0 if negated).
inline ComplexMatrix clauseProjector(const Clause& clause, std::size_t qubits) {
  require(qubits >= 1 && qubits <= 10, ErrorCode::DimensionCapExceeded, "clause projectors support 1..10 qubits");
  require(clause.maxIndex() < qubits, ErrorCode::InvalidFactorIndex, "clause refers to a missing qubit");
  const Index dim = Index{1} << qubits;
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  std::vector<double> bits(qubits);
  for (Index b = 0; b < dim; ++b) {
    for (std::size_t i = 0; i < qubits; ++i) bits[i] = double((b >> (qubits - 1 - i)) & 1);
    if (clause.satisfied(bits)) p(b, b) = 1.0;
  }
  return p;
}

enum class ClockForm { Completed, Literal };

/// Clock Hamiltonian on clock (dim L+1) tensor data. The completed form is
///   sum_t 1/2 (|t><t| + |t+1><t+1|) x I - 1/2 (|t+1><t| x U_t + h.c.)
///   + |0><0| x (I - |psi0><psi0|) + |L><L| x (I - Pi_halt);
/// the literal form keeps only +(|t+1><t| x U_t + h.c.) as the hopping part.
inline HermitianOperator feynmanKitaev(const HistoryStateSpec& spec, ClockForm form = ClockForm::Completed) {
  spec.validate();
  const Index d = spec.dataDim();
  const Index l = Index(spec.length());
  const Index c = l + 1;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  auto unit = [c](Index a, Index b) {
    ComplexMatrix m = ComplexMatrix::Zero(c, c);
    m(a, b) = 1.0;
    return m;
  };
  ComplexMatrix h = ComplexMatrix::Zero(c * d, c * d);
  for (Index t = 0; t < l; ++t) {
    const ComplexMatrix hop = kron(unit(t + 1, t), spec.unitaries[std::size_t(t)]);
    if (form == ClockForm::Completed) {
      h += 0.5 * (kron(unit(t, t), id) + kron(unit(t + 1, t + 1), id)) - 0.5 * (hop + hop.adjoint());
    } else {
      h += hop + hop.adjoint();
    }
  }
  h += kron(unit(0, 0), id - projector(spec.initialState));
  h += kron(unit(l, l), id - spec.haltProjector);
  return HermitianOperator(h);
}

/// (L+1)^{-1/2} sum_t |t> x U_{t-1}...U_0 |psi0>.
inline ComplexVector historyState(const HistoryStateSpec& spec) {
  spec.validate();
  const Index d = spec.dataDim();
  const Index c = Index(spec.length()) + 1;
  ComplexVector out(c * d);
  ComplexVector data = spec.initialState;
  for (Index t = 0; t < c; ++t) {
    out.segment(t * d, d) = data;
    if (t + 1 < c) data = spec.unitaries[std::size_t(t)] * data;
  }
  return out / std::sqrt(double(c));
}

/// -sum_{l<l'} J_{ll'} Z_l Z_l' - sum_l g_l X_l on n qubits.
inline HermitianOperator isingHamiltonian(const std::vector<std::vector<double>>& couplings,
                                          const std::vector<double>& fields) {
  const std::size_t n = couplings.size();
  require(n >= 1 && n <= 10, ErrorCode::DimensionCapExceeded, "Ising model supports 1..10 qubits");
  require(fields.size() == n, ErrorCode::DimensionMismatch, "one field per qubit");
  for (const auto& row : couplings) require(row.size() == n, ErrorCode::DimensionMismatch, "couplings must be n x n");
  const std::vector<Index> dims(n, 2);
  const Index dim = Index{1} << n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  // Z Z terms are diagonal; fill them directly.
  for (Index b = 0; b < dim; ++b) {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double zi = ((b >> (n - 1 - i)) & 1) ? -1.0 : 1.0;
        const double zj = ((b >> (n - 1 - j)) & 1) ? -1.0 : 1.0;
        e -= couplings[i][j] * zi * zj;
      }
    h(b, b) = e;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (fields[i] != 0.0) h -= fields[i] * embed(pauli::X(), dims, {i});
  return HermitianOperator(h);
}

namespace detail {

inline HermitianOperator buildQuantumReasoning(const GeneratorSpec& spec) {
  std::vector<ComplexMatrix> projectors;
  if (spec.has("projectors")) {
    projectors = spec.require<std::vector<ComplexMatrix>>("projectors");
  } else {
    const auto& clauses = spec.require<std::vector<Clause>>("clauses");
    const double n = spec.require<double>("qubits");
    for (const auto& c : clauses) projectors.push_back(clauseProjector(c, std::size_t(n)));
  }
  require(!projectors.empty(), ErrorCode::InvalidParameter, "reasoning needs at least one projector");
  const Index d = projectors.front().rows();
  std::vector<double> mu = spec.get<std::vector<double>>("mu", std::vector<double>(projectors.size(), 1.0));
  require(mu.size() == projectors.size(), ErrorCode::InvalidParameter, "one weight mu per projector");
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (std::size_t a = 0; a < projectors.size(); ++a) {
    require(projectors[a].rows() == d && projectors[a].cols() == d, ErrorCode::DimensionMismatch,
            "projectors act on different spaces");
    require(isProjector(projectors[a]), ErrorCode::NotProjector,
            "reasoning operator " + std::to_string(a) + " is not a projector");
    require(std::isfinite(mu[a]) && mu[a] > 0.0, ErrorCode::InvalidParameter, "penalty weights mu must be positive");
    h += mu[a] * (id - projectors[a]);
  }
  return HermitianOperator(h);
}

inline HermitianOperator buildQuantumLearning(const GeneratorSpec& spec) {
  const auto& j = spec.require<std::vector<std::vector<double>>>("couplings");
  const double n = spec.get<double>("qubits", double(j.size()));
  require(n == double(j.size()), ErrorCode::DimensionMismatch, "coupling matrix size must equal the qubit count");
  const auto g = spec.get<std::vector<double>>("fields", std::vector<double>(j.size(), 0.0));
  return isingHamiltonian(j, g);
}

inline std::vector<Index> layoutParam(const GeneratorSpec& spec, std::vector<Index> fallback) {
  if (!spec.has("factor_dims")) return fallback;
  std::vector<Index> dims;
  for (double x : spec.require<std::vector<double>>("factor_dims")) {
    require(x >= 1.0 && x == std::floor(x), ErrorCode::InvalidParameter, "factor dimensions must be positive integers");
    dims.push_back(Index(x));
  }
  return dims;
}

inline std::size_t siteParam(const GeneratorSpec& spec, const std::string& name, double fallback) {
  const double v = spec.get<double>(name, fallback);
  require(v >= 0.0 && v == std::floor(v), ErrorCode::InvalidFactorIndex, "'" + name + "' must be a factor index");
  return std::size_t(v);
}

/// kappa (|1><0|_m x O_E + h.c.) on the declared layout.
inline HermitianOperator buildQuantumSensing(const GeneratorSpec& spec) {
  const double kappa = spec.require<double>("kappa");
  require(std::isfinite(kappa), ErrorCode::InvalidParameter, "kappa must be finite");
  const auto& obs = spec.require<ComplexMatrix>("observable");
  require(obs.rows() == obs.cols(), ErrorCode::DimensionMismatch, "observable must be square");
  require(maxHermitianDeviation(obs) <= tol::kHermitian, ErrorCode::NotHermitian, "observable is not Hermitian");
  const auto dims = layoutParam(spec, {2, obs.rows()});
  const std::size_t m = siteParam(spec, "pointer_site", 0);
  const std::size_t e = siteParam(spec, "env_site", 1);
  require(m < dims.size() && e < dims.size() && m != e, ErrorCode::InvalidFactorIndex, "bad pointer or env site");
  require(dims[m] == 2, ErrorCode::DimensionMismatch, "pointer factor must be a qubit");
  require(dims[e] == obs.rows(), ErrorCode::DimensionMismatch, "observable does not match the environment factor");
  const std::size_t sites[2] = {m, e};
  const ComplexMatrix half = embed(kron(pauli::raising(), obs), dims, sites);
  return HermitianOperator(kappa * (half + half.adjoint()));
}

/// I_A x (H_E^bare - u(t) F) at the time given by parameter "time".
inline HermitianOperator buildQuantumEnvironment(const GeneratorSpec& spec) {
  const auto& bare = spec.require<ComplexMatrix>("bare");
  require(bare.rows() == bare.cols(), ErrorCode::DimensionMismatch, "bare environment Hamiltonian must be square");
  require(maxHermitianDeviation(bare) <= tol::kHermitian, ErrorCode::NotHermitian, "bare Hamiltonian not Hermitian");
  ComplexMatrix he = bare;
  if (spec.has("drive")) {
    const auto& f = spec.require<ComplexMatrix>("drive");
    require(f.rows() == bare.rows() && f.cols() == bare.cols(), ErrorCode::DimensionMismatch, "drive size mismatch");
    require(maxHermitianDeviation(f) <= tol::kHermitian, ErrorCode::NotHermitian, "drive operator not Hermitian");
    he -= scheduleValue(spec.get<std::vector<Pulse>>("control", {}), spec.get<double>("time", 0.0)) * f;
  }
  const double agent = spec.get<double>("agent_dim", 1.0);
  require(agent >= 1.0 && agent == std::floor(agent), ErrorCode::InvalidParameter, "agent_dim must be >= 1");
  return HermitianOperator(kron(ComplexMatrix::Identity(Index(agent), Index(agent)), he));
}

}  // namespace detail

inline HermitianOperator buildQuantumGenerator(const GeneratorSpec& spec) {
  require(spec.side == Side::Quantum, ErrorCode::InvalidParameter, "spec is not a quantum generator");
  switch (spec.kind) {
    case GeneratorKind::Reasoning: return detail::buildQuantumReasoning(spec);
    case GeneratorKind::Recursion: {
      const auto form = spec.get<std::string>("form", "completed");
      require(form == "completed" || form == "literal", ErrorCode::InvalidParameter,
              "form must be 'completed' or 'literal'");
      return feynmanKitaev(spec.require<HistoryStateSpec>("history"),
                           form == "literal" ? ClockForm::Literal : ClockForm::Completed);
    }
    case GeneratorKind::Learning: return detail::buildQuantumLearning(spec);
    case GeneratorKind::Sensing: return detail::buildQuantumSensing(spec);
    case GeneratorKind::Environment: return detail::buildQuantumEnvironment(spec);
    case GeneratorKind::Induction:
      fail(ErrorCode::UnknownKind, "quantum induction is a cost functional; use inductionCost");
  }
  fail(ErrorCode::UnknownKind, "unknown quantum generator kind");
}

// ---------------------------------------------------------------------------
// Induction as a relative-entropy cost

/// kBT * S(rho_data || rho_theta); off-support pairs return an infinite Divergence.
inline Divergence inductionCost(const DensityOperator& rhoData, const DensityOperator& rhoTheta, double kBT = 1.0) {
  require(std::isfinite(kBT) && kBT > 0.0, ErrorCode::InvalidParameter, "kBT must be positive");
  Divergence d = relativeEntropy(rhoData, rhoTheta);
  if (d.finite()) d.value *= kBT;
  return d;
}

/// Frobenius norm of [rho_data, log rho_theta]; zero when the two commute.
inline double disturbanceWitness(const DensityOperator& rhoData, const DensityOperator& rhoTheta) {
  const ComplexMatrix logTheta =
      hermitianFunction(rhoTheta.matrix(), [](double x) { return std::log(std::max(x, kSupportCutoff)); });
  return commutatorNorm(rhoData.matrix(), logTheta);
}

struct GradientFlowResult {
  std::vector<std::vector<double>> parameters;
  Trajectory<DensityOperator> trajectory;  // metrics: "cost", "disturbance"
};

/// Finite-difference gradient descent on the induction cost over a family,
/// with rho_data held fixed. Step sizes are halved until the cost does not
/// increase, so the recorded cost is monotone non-increasing.
inline GradientFlowResult inductionGradientFlow(const ParametrizedState& family, const DensityOperator& rhoData,
                                                std::vector<double> theta, std::size_t steps, double rate,
                                                double kBT = 1.0) {
  require(theta.size() == family.paramDim, ErrorCode::DimensionMismatch, "parameter vector length mismatch");
  require(rate > 0.0 && steps >= 1, ErrorCode::InvalidParameter, "rate and steps must be positive");
  auto cost = [&](const std::vector<double>& th) {
    const Divergence d = inductionCost(rhoData, family(th), kBT);
    require(d.finite(), ErrorCode::InvalidParameter, "data state lies outside the model support");
    return d.value;
  };
  GradientFlowResult out;
  auto record = [&](const std::vector<double>& th, double c, double t) {
    const DensityOperator rho = family(th);
    out.parameters.push_back(th);
    out.trajectory.times.push_back(t);
    out.trajectory.metrics.push("cost", c);
    out.trajectory.metrics.push("disturbance", disturbanceWitness(rhoData, rho));
    out.trajectory.states.push_back(rho);
  };
  const double h = 1e-6;
  double c = cost(theta);
  record(theta, c, 0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    std::vector<double> grad(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
      auto hi = theta, lo = theta;
      hi[i] += h;
      lo[i] -= h;
      grad[i] = (cost(hi) - cost(lo)) / (2.0 * h);
    }
    double step = rate;
    std::vector<double> next = theta;
    double cn = c;
    for (int tries = 0; tries < 40; ++tries, step *= 0.5) {
      for (std::size_t i = 0; i < theta.size(); ++i) next[i] = theta[i] - step * grad[i];
      cn = cost(next);
      if (cn <= c) break;
    }
    if (cn <= c) {
      theta = next;
      c = cn;
    }
    record(theta, c, double(k));
  }
  return out;
}

}  // namespace hamagent
