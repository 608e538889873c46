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

// Channel typing. Every channel is stored as Kraus operators; a classical
// register of size n is the diagonal subalgebra of n x n matrices, so
// stochastic maps and state preparations become Kraus lists too.

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hamagent/error.hpp"
#include "hamagent/tensor.hpp"

namespace hamagent {

enum class RegisterKind { Classical, Quantum };
enum class ChannelType { CTC, CTQ, QTC, QTQ };

inline const char* to_string(ChannelType t) {
  switch (t) {
    case ChannelType::CTC: return "CTC";
    case ChannelType::CTQ: return "CTQ";
    case ChannelType::QTC: return "QTC";
    case ChannelType::QTQ: return "QTQ";
  }
  return "?";
}

struct ChannelDescriptor {
  RegisterKind inputKind = RegisterKind::Quantum;
  RegisterKind outputKind = RegisterKind::Quantum;
  std::vector<ComplexMatrix> kraus;  // each outputDim x inputDim

  Index inputDim() const { return kraus.empty() ? 0 : kraus.front().cols(); }
  Index outputDim() const { return kraus.empty() ? 0 : kraus.front().rows(); }
};

inline ComplexMatrix applyChannel(const ChannelDescriptor& c, const ComplexMatrix& rho) {
  require(!c.kraus.empty(), ErrorCode::InconsistentChannel, "channel has no Kraus operators");
  require(rho.rows() == c.inputDim() && rho.cols() == c.inputDim(), ErrorCode::DimensionMismatch,
          "input does not match channel dimension");
  ComplexMatrix out = ComplexMatrix::Zero(c.outputDim(), c.outputDim());
  for (const auto& k : c.kraus) out += k * rho * k.adjoint();
  return out;
}

/// second after first.
inline ChannelDescriptor compose(const ChannelDescriptor& second, const ChannelDescriptor& first) {
  require(second.inputDim() == first.outputDim(), ErrorCode::DimensionMismatch, "channel dimensions do not chain");
  ChannelDescriptor out{first.inputKind, second.outputKind, {}};
  for (const auto& b : second.kraus)
    for (const auto& a : first.kraus) out.kraus.push_back(b * a);
  return out;
}

namespace channels {

/// Column-stochastic map t(out, in) on classical symbols.
inline ChannelDescriptor stochastic(const Eigen::MatrixXd& t) {
  ChannelDescriptor c{RegisterKind::Classical, RegisterKind::Classical, {}};
  for (Index j = 0; j < t.rows(); ++j)
    for (Index i = 0; i < t.cols(); ++i) {
      require(t(j, i) >= 0.0, ErrorCode::TraceNonpreserving, "negative transition probability");
      if (t(j, i) == 0.0) continue;
      ComplexMatrix k = ComplexMatrix::Zero(t.rows(), t.cols());
      k(j, i) = std::sqrt(t(j, i));
      c.kraus.push_back(k);
    }
  if (c.kraus.empty()) c.kraus.push_back(ComplexMatrix::Zero(t.rows(), t.cols()));
  return c;
}

/// Symbol i is encoded as the density operator states[i].
inline ChannelDescriptor preparation(const std::vector<ComplexMatrix>& states) {
  require(!states.empty(), ErrorCode::InvalidParameter, "no states to prepare");
  const Index n = Index(states.size());
  const Index d = states.front().rows();
  ChannelDescriptor c{RegisterKind::Classical, RegisterKind::Quantum, {}};
  for (Index i = 0; i < n; ++i) {
    const auto& s = states[std::size_t(i)];
    require(s.rows() == d && s.cols() == d, ErrorCode::DimensionMismatch, "prepared states differ in dimension");
    const auto eig = hermEig(s);
    for (Index k = 0; k < d; ++k) {
      const double w = std::max(0.0, eig.values(k));
      if (w == 0.0) continue;
      ComplexMatrix op = ComplexMatrix::Zero(d, n);
      op.col(i) = std::sqrt(w) * eig.vectors.col(k);
      c.kraus.push_back(op);
    }
  }
  return c;
}

/// rho -> sum_k Tr(P_k rho) |k><k|: read-out to a classical register.
inline ChannelDescriptor measurement(const std::vector<ComplexMatrix>& projectors) {
  require(!projectors.empty(), ErrorCode::InvalidParameter, "no projectors");
  const Index d = projectors.front().rows();
  const Index n = Index(projectors.size());
  ChannelDescriptor c{RegisterKind::Quantum, RegisterKind::Classical, {}};
  for (Index k = 0; k < n; ++k) {
    const auto eig = hermEig(projectors[std::size_t(k)]);
    for (Index v = 0; v < d; ++v) {
      if (eig.values(v) < 0.5) continue;
      ComplexMatrix op = ComplexMatrix::Zero(n, d);
      op.row(k) = eig.vectors.col(v).adjoint();
      c.kraus.push_back(op);
    }
  }
  return c;
}

/// Computational-basis read-out of a d-level system.
inline ChannelDescriptor basisMeasurement(Index d) {
  std::vector<ComplexMatrix> ps;
  for (Index i = 0; i < d; ++i) ps.push_back(projector(ket(d, i)));
  return measurement(ps);
}

inline ChannelDescriptor unitary(const ComplexMatrix& u) {
  require(isUnitary(u), ErrorCode::NotUnitary, "conjugation channel needs a unitary");
  return {RegisterKind::Quantum, RegisterKind::Quantum, {u}};
}

}  // namespace channels

/// Types a channel by its register kinds after checking that the Kraus list is
/// trace preserving on its admissible inputs and that classical outputs are
/// diagonal: for every diagonal input when the input is classical, and for
/// every matrix unit when the input is quantum.
inline ChannelType classifyChannel(const ChannelDescriptor& c) {
  require(!c.kraus.empty(), ErrorCode::InconsistentChannel, "channel has no Kraus operators");
  const Index din = c.inputDim();
  const Index dout = c.outputDim();
  ComplexMatrix sum = ComplexMatrix::Zero(din, din);
  for (const auto& k : c.kraus) {
    require(k.rows() == dout && k.cols() == din, ErrorCode::InconsistentChannel, "Kraus operators differ in shape");
    sum += k.adjoint() * k;
  }
  const ComplexMatrix gap = sum - ComplexMatrix::Identity(din, din);
  const bool classicalIn = c.inputKind == RegisterKind::Classical;
  const double dev = classicalIn ? gap.diagonal().cwiseAbs().maxCoeff() : gap.cwiseAbs().maxCoeff();
  require(dev <= 1e-9, ErrorCode::TraceNonpreserving, "sum of K^+ K differs from identity by " + std::to_string(dev));

  if (c.outputKind == RegisterKind::Classical) {
    for (Index a = 0; a < din; ++a)
      for (Index b = 0; b < din; ++b) {
        if (classicalIn && a != b) continue;
        ComplexMatrix unit = ComplexMatrix::Zero(din, din);
        unit(a, b) = 1.0;
        ComplexMatrix out = applyChannel(c, unit);
        out.diagonal().setZero();
        require(out.cwiseAbs().maxCoeff() <= 1e-9, ErrorCode::InconsistentChannel,
                "classical output is not diagonal in the computational basis");
      }
  }
  if (classicalIn) return c.outputKind == RegisterKind::Classical ? ChannelType::CTC : ChannelType::CTQ;
  return c.outputKind == RegisterKind::Classical ? ChannelType::QTC : ChannelType::QTQ;
}

}  // namespace hamagent
