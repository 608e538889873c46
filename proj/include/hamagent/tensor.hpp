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

// Dense complex linear algebra for small composite registers: Kronecker
// products, partial traces, Hermitian eigensolves and exp(-iHt).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hamagent/error.hpp"

namespace hamagent {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Upper bound on rows * cols for any stored matrix.
inline constexpr Index kMaxEntries = Index{1} << 20;
/// Upper bound on the dimension passed to eigensolves and evolutions.
inline constexpr Index kMaxSolveDim = 1024;

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-9;
inline constexpr double kPositivity = 1e-9;
inline constexpr double kUnitary = 1e-9;
inline constexpr double kProjector = 1e-9;
}  // namespace tol

inline void checkEntryCap(Index rows, Index cols) {
  require(rows >= 1 && cols >= 1, ErrorCode::InvalidParameter, "matrix dimensions must be positive");
  require(rows <= kMaxEntries / cols, ErrorCode::DimensionCapExceeded,
          std::to_string(rows) + "x" + std::to_string(cols) + " exceeds 2^20 entries");
}

inline void checkSolveCap(Index dim) {
  require(dim <= kMaxSolveDim, ErrorCode::DimensionCapExceeded,
          "dimension " + std::to_string(dim) + " exceeds solver cap " + std::to_string(kMaxSolveDim));
}

inline double maxHermitianDeviation(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

class HermitianOperator {
 public:
  /// Symmetrizes inputs within 1e-10 of Hermitian; rejects anything else.
  explicit HermitianOperator(const ComplexMatrix& m) {
    require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "Hermitian operator must be square");
    checkEntryCap(m.rows(), m.cols());
    const double dev = maxHermitianDeviation(m);
    require(dev <= tol::kHermitian, ErrorCode::NotHermitian,
            "max |M - M^dagger| = " + std::to_string(dev));
    matrix_ = 0.5 * (m + m.adjoint());
  }

  static HermitianOperator zero(Index dim) { return HermitianOperator(ComplexMatrix::Zero(dim, dim)); }
  static HermitianOperator identity(Index dim) {
    return HermitianOperator(ComplexMatrix::Identity(dim, dim));
  }

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  HermitianOperator operator+(const HermitianOperator& o) const {
    require(dim() == o.dim(), ErrorCode::DimensionMismatch, "operator sum");
    return HermitianOperator(matrix_ + o.matrix_);
  }
  HermitianOperator operator-(const HermitianOperator& o) const {
    require(dim() == o.dim(), ErrorCode::DimensionMismatch, "operator difference");
    return HermitianOperator(matrix_ - o.matrix_);
  }
  HermitianOperator operator*(double s) const { return HermitianOperator(s * matrix_); }
  friend HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

  /// Real expectation value Tr(H rho) for a square rho of the same dimension.
  double expectation(const ComplexMatrix& rho) const { return (matrix_ * rho).trace().real(); }

 private:
  ComplexMatrix matrix_;
};

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns
};

inline EigenDecomposition hermEig(const ComplexMatrix& hermitian) {
  checkSolveCap(hermitian.rows());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
  require(solver.info() == Eigen::Success, ErrorCode::ConvergenceFailure,
          "Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline EigenDecomposition hermEig(const HermitianOperator& h) { return hermEig(h.matrix()); }

inline double productOf(std::span<const Index> dims) {
  return std::accumulate(dims.begin(), dims.end(), 1.0, [](double a, Index d) { return a * double(d); });
}

/// Row-major strides with factor 0 most significant, matching kron ordering.
inline std::vector<Index> strides(std::span<const Index> dims) {
  std::vector<Index> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

class DensityOperator {
 public:
  DensityOperator(const ComplexMatrix& m, std::vector<Index> factorDims = {}, double traceTol = tol::kTrace,
                  double positivityTol = tol::kPositivity) {
    require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "density operator must be square");
    checkEntryCap(m.rows(), m.cols());
    checkSolveCap(m.rows());
    if (factorDims.empty()) factorDims = {m.rows()};
    for (Index d : factorDims) require(d >= 1, ErrorCode::InvalidState, "factor dimensions must be positive");
    require(productOf(factorDims) == double(m.rows()), ErrorCode::DimensionMismatch,
            "product of factor dimensions does not match operator dimension");
    const double dev = maxHermitianDeviation(m);
    require(dev <= tol::kHermitian, ErrorCode::InvalidState,
            "density operator not Hermitian (deviation " + std::to_string(dev) + ")");
    matrix_ = 0.5 * (m + m.adjoint());
    const double tr = matrix_.trace().real();
    require(std::abs(tr - 1.0) <= traceTol, ErrorCode::InvalidState,
            "trace " + std::to_string(tr) + " differs from 1");
    const double minEig = hermEig(matrix_).values(0);
    require(minEig >= -positivityTol, ErrorCode::InvalidState,
            "minimum eigenvalue " + std::to_string(minEig) + " below tolerance");
    factorDims_ = std::move(factorDims);
  }

  static DensityOperator pure(const ComplexVector& psi, std::vector<Index> factorDims = {}) {
    const double n = psi.norm();
    require(n > 0.0, ErrorCode::InvalidState, "zero state vector");
    const ComplexVector v = psi / n;
    return DensityOperator(v * v.adjoint(), std::move(factorDims));
  }

  static DensityOperator basis(Index index, std::vector<Index> factorDims) {
    const Index dim = static_cast<Index>(productOf(factorDims));
    require(index >= 0 && index < dim, ErrorCode::InvalidParameter, "basis index out of range");
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(index, index) = 1.0;
    return DensityOperator(m, std::move(factorDims));
  }

  static DensityOperator maximallyMixed(std::vector<Index> factorDims) {
    const Index dim = static_cast<Index>(productOf(factorDims));
    return DensityOperator(ComplexMatrix::Identity(dim, dim) / double(dim), std::move(factorDims));
  }

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<Index>& factorDims() const { return factorDims_; }
  double trace() const { return matrix_.trace().real(); }
  RealVector eigenvalues() const { return hermEig(matrix_).values; }

 private:
  ComplexMatrix matrix_;
  std::vector<Index> factorDims_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  checkEntryCap(a.rows() * b.rows(), a.cols() * b.cols());
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  checkEntryCap(a.size() * b.size(), 1);
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

namespace detail {

// Offsets into the full index for every multi-index over `sites`.
inline std::vector<Index> siteOffsets(std::span<const Index> dims, std::span<const std::size_t> sites) {
  const auto st = strides(dims);
  std::vector<Index> offs{0};
  for (std::size_t s : sites) {
    std::vector<Index> next;
    next.reserve(offs.size() * dims[s]);
    for (Index o : offs)
      for (Index k = 0; k < dims[s]; ++k) next.push_back(o + k * st[s]);
    offs = std::move(next);
  }
  return offs;
}

inline std::vector<std::size_t> complementSites(std::size_t n, std::span<const std::size_t> sites) {
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(sites.begin(), sites.end(), i) == sites.end()) rest.push_back(i);
  return rest;
}

inline void checkSites(std::size_t n, std::span<const std::size_t> sites) {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    require(sites[i] < n, ErrorCode::InvalidFactorIndex, "factor index " + std::to_string(sites[i]) + " out of range");
    for (std::size_t j = 0; j < i; ++j)
      require(sites[i] != sites[j], ErrorCode::InvalidFactorIndex, "repeated factor index");
  }
}

}  // namespace detail

/// Places `op` (acting on the listed factors, in listed order) into the full
/// register described by `dims`, tensored with identity elsewhere.
inline ComplexMatrix embed(const ComplexMatrix& op, std::span<const Index> dims,
                           std::span<const std::size_t> sites) {
  detail::checkSites(dims.size(), sites);
  const auto inner = detail::siteOffsets(dims, sites);
  require(op.rows() == op.cols() && op.rows() == Index(inner.size()), ErrorCode::DimensionMismatch,
          "operator dimension does not match the selected factors");
  const auto rest = detail::complementSites(dims.size(), sites);
  const auto outer = detail::siteOffsets(dims, rest);
  const Index dim = static_cast<Index>(productOf(dims));
  checkEntryCap(dim, dim);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Index o : outer)
    for (std::size_t i = 0; i < inner.size(); ++i)
      for (std::size_t j = 0; j < inner.size(); ++j) out(o + inner[i], o + inner[j]) = op(Index(i), Index(j));
  return out;
}

inline ComplexMatrix embed(const ComplexMatrix& op, const std::vector<Index>& dims,
                           std::initializer_list<std::size_t> sites) {
  const std::vector<std::size_t> s(sites);
  return embed(op, std::span<const Index>(dims), std::span<const std::size_t>(s));
}

inline ComplexMatrix partialTraceMatrix(const ComplexMatrix& m, std::span<const Index> dims,
                                        std::vector<std::size_t> keep) {
  require(!keep.empty(), ErrorCode::InvalidFactorIndex, "keep set must be nonempty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  detail::checkSites(dims.size(), keep);
  const auto traced = detail::complementSites(dims.size(), keep);
  const auto kOff = detail::siteOffsets(dims, keep);
  const auto tOff = detail::siteOffsets(dims, traced);
  const Index kd = Index(kOff.size());
  ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
  for (Index a = 0; a < kd; ++a)
    for (Index b = 0; b < kd; ++b) {
      Complex acc = 0.0;
      for (Index t : tOff) acc += m(kOff[a] + t, kOff[b] + t);
      out(a, b) = acc;
    }
  return out;
}

inline DensityOperator partialTrace(const DensityOperator& rho, std::vector<std::size_t> keep) {
  const auto& dims = rho.factorDims();
  auto sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  ComplexMatrix reduced = partialTraceMatrix(rho.matrix(), dims, sorted);
  std::vector<Index> keptDims;
  for (std::size_t s : sorted) keptDims.push_back(dims[s]);
  return DensityOperator(reduced, std::move(keptDims));
}

/// exp(-i H t) with hbar = 1, built from the eigendecomposition of H.
inline ComplexMatrix expMinusIHt(const HermitianOperator& h, double t) {
  const auto eig = hermEig(h);
  ComplexVector phases(eig.values.size());
  for (Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(Complex(0.0, -eig.values(i) * t));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols() && a.rows() == a.cols(), ErrorCode::DimensionMismatch,
          "commutator needs square operators of equal dimension");
  return a * b - b * a;
}

inline ComplexMatrix commutator(const HermitianOperator& a, const HermitianOperator& b) {
  return commutator(a.matrix(), b.matrix());
}

inline double commutatorNorm(const ComplexMatrix& a, const ComplexMatrix& b) { return commutator(a, b).norm(); }

inline double commutatorNorm(const HermitianOperator& a, const HermitianOperator& b) {
  return commutator(a, b).norm();
}

/// Largest singular value.
inline double operatorNorm(const ComplexMatrix& a) {
  const ComplexMatrix g = a.adjoint() * a;
  return std::sqrt(std::max(0.0, hermEig(g).values.maxCoeff()));
}

inline bool isUnitary(const ComplexMatrix& u, double tolerance = tol::kUnitary) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tolerance;
}

inline bool isProjector(const ComplexMatrix& p, double tolerance = tol::kProjector) {
  if (p.rows() != p.cols()) return false;
  return maxHermitianDeviation(p) <= tolerance && (p * p - p).cwiseAbs().maxCoeff() <= tolerance;
}

/// Applies f to the eigenvalues of a Hermitian matrix.
inline ComplexMatrix hermitianFunction(const ComplexMatrix& h, const std::function<double(double)>& f) {
  const auto eig = hermEig(h);
  RealVector fv(eig.values.size());
  for (Index i = 0; i < fv.size(); ++i) fv(i) = f(eig.values(i));
  return eig.vectors * fv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

namespace pauli {
inline ComplexMatrix I() { return ComplexMatrix::Identity(2, 2); }
inline ComplexMatrix X() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline ComplexMatrix Y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline ComplexMatrix Z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
/// |1><0|
inline ComplexMatrix raising() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

/// Kronecker product of single-qubit Paulis named by a string such as "XIZI".
inline ComplexMatrix string(std::string_view word) {
  require(!word.empty(), ErrorCode::InvalidParameter, "empty Pauli string");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char c : word) {
    switch (c) {
      case 'I': out = kron(out, I()); break;
      case 'X': out = kron(out, X()); break;
      case 'Y': out = kron(out, Y()); break;
      case 'Z': out = kron(out, Z()); break;
      default: fail(ErrorCode::InvalidParameter, std::string("bad Pauli letter '") + c + "'");
    }
  }
  return out;
}
}  // namespace pauli

inline ComplexVector ket(Index dim, Index index) {
  require(index >= 0 && index < dim, ErrorCode::InvalidParameter, "basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

inline ComplexMatrix projector(const ComplexVector& v) {
  const double n = v.norm();
  require(n > 0.0, ErrorCode::InvalidParameter, "zero vector has no projector");
  return (v / n) * (v / n).adjoint();
}

}  // namespace hamagent
