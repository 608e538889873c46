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

#include <gtest/gtest.h>

#include "hamagent/channel.hpp"

using namespace hamagent;

namespace {

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

TEST(Channel, IdentityOnBitsIsClassicalToClassical) {
  EXPECT_EQ(classifyChannel(channels::stochastic(Eigen::MatrixXd::Identity(2, 2))), ChannelType::CTC);
  Eigen::MatrixXd noisy(2, 2);
  noisy << 0.9, 0.2, 0.1, 0.8;
  EXPECT_EQ(classifyChannel(channels::stochastic(noisy)), ChannelType::CTC);
}

TEST(Channel, BasisMeasurementIsQuantumToClassical) {
  EXPECT_EQ(classifyChannel(channels::basisMeasurement(2)), ChannelType::QTC);
  EXPECT_STREQ(to_string(ChannelType::QTC), "QTC");
}

TEST(Channel, UnitaryIsQuantumToQuantum) {
  EXPECT_EQ(classifyChannel(channels::unitary(pauli::X())), ChannelType::QTQ);
}

TEST(Channel, PreparationIsClassicalToQuantum) {
  const ComplexVector plus = (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0);
  EXPECT_EQ(classifyChannel(channels::preparation({projector(ket(2, 0)), projector(plus)})), ChannelType::CTQ);
}

TEST(Channel, RejectsTraceNonpreservingMaps) {
  Eigen::MatrixXd leaky(2, 2);
  leaky << 0.5, 0.0, 0.0, 1.0;
  EXPECT_EQ(codeOf([&] { (void)classifyChannel(channels::stochastic(leaky)); }), ErrorCode::TraceNonpreserving);
  const ChannelDescriptor half{RegisterKind::Quantum, RegisterKind::Quantum, {0.5 * pauli::I()}};
  EXPECT_EQ(codeOf([&] { (void)classifyChannel(half); }), ErrorCode::TraceNonpreserving);
}

TEST(Channel, RejectsQuantumOutputsLabelledClassical) {
  const ChannelDescriptor fake{RegisterKind::Quantum, RegisterKind::Classical, {channels::unitary(pauli::Y()).kraus}};
  EXPECT_EQ(codeOf([&] { (void)classifyChannel(fake); }), ErrorCode::InconsistentChannel);
}

TEST(Channel, PrepareThenMeasureRoundTripIsClassical) {
  const auto prep = channels::preparation({projector(ket(2, 0)), projector(ket(2, 1))});
  const auto round = compose(channels::basisMeasurement(2), prep);
  EXPECT_EQ(round.inputKind, RegisterKind::Classical);
  EXPECT_EQ(round.outputKind, RegisterKind::Classical);
  EXPECT_EQ(classifyChannel(round), ChannelType::CTC);
  ComplexMatrix in = ComplexMatrix::Zero(2, 2);
  in(0, 0) = 0.3;
  in(1, 1) = 0.7;
  const ComplexMatrix out = applyChannel(round, in);
  EXPECT_LE((out - in).norm(), 1e-12);
}

TEST(Channel, CompositionChecksDimensions) {
  EXPECT_EQ(codeOf([] { (void)compose(channels::basisMeasurement(3), channels::unitary(pauli::X())); }),
            ErrorCode::DimensionMismatch);
}
