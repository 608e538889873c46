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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hamagent/rng.hpp"
#include "hamagent/tensor.hpp"

using namespace hamagent;

namespace {

ComplexMatrix randomHermitian(Index d, SeededStream& rng) {
  ComplexMatrix a(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return 0.5 * (a + a.adjoint());
}

ComplexMatrix randomDensity(Index d, SeededStream& rng) {
  ComplexMatrix a(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  ComplexMatrix r = a * a.adjoint();
  return r / r.trace().real();
}

const Complex kI(0.0, 1.0);

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_TRUE(kron(pauli::I(), pauli::I()).isApprox(ComplexMatrix::Identity(4, 4)));
}

TEST(Kron, ZTimesZIsDiagonalSigns) {
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect.diagonal() << 1, -1, -1, 1;
  EXPECT_TRUE(kron(pauli::Z(), pauli::Z()).isApprox(expect));
}

TEST(Kron, XOnFirstFactorFlipsMostSignificantBit) {
  const ComplexVector out = kron(pauli::X(), pauli::I()) * ket(4, 0);
  EXPECT_TRUE(out.isApprox(ket(4, 2)));  // |00> -> |10>
}

TEST(Kron, Associative) {
  SeededStream rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto a = randomHermitian(2, rng), b = randomHermitian(3, rng), c = randomHermitian(2, rng);
    EXPECT_LE((kron(kron(a, b), c) - kron(a, kron(b, c))).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Kron, RejectsProductsOverTheEntryCap) {
  const ComplexMatrix big = ComplexMatrix::Identity(1024, 1024);
  try {
    (void)kron(big, pauli::I());
    FAIL() << "expected a dimension cap error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionCapExceeded);
  }
}

TEST(HermitianOperator, RejectsNonHermitianInput) {
  ComplexMatrix m = pauli::X();
  m(0, 1) = 2.0;
  EXPECT_THROW(HermitianOperator{m}, Error);
}

TEST(HermitianOperator, SymmetrizesWithinTolerance) {
  ComplexMatrix m = pauli::X();
  m(0, 1) += 1e-12;
  const HermitianOperator h(m);
  EXPECT_EQ(h.matrix(), h.matrix().adjoint());
}

TEST(DensityOperator, ValidatesTracePositivityAndFactors) {
  EXPECT_THROW(DensityOperator(ComplexMatrix::Identity(2, 2)), Error);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityOperator{neg}, Error);
  EXPECT_THROW(DensityOperator(ComplexMatrix::Identity(4, 4) / 4.0, {2, 3}), Error);
  EXPECT_NO_THROW(DensityOperator(ComplexMatrix::Identity(4, 4) / 4.0, {2, 2}));
}

TEST(PartialTrace, ProductStateKeepsFirstFactor) {
  const auto rho = DensityOperator(kron(projector(ket(2, 0)), projector(ket(2, 1))), {2, 2});
  EXPECT_TRUE(partialTrace(rho, {0}).matrix().isApprox(projector(ket(2, 0))));
}

TEST(PartialTrace, BellStateMarginalIsMaximallyMixed) {
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const auto reduced = partialTrace(DensityOperator::pure(bell, {2, 2}), {0});
  EXPECT_LE((reduced.matrix() - 0.5 * pauli::I()).norm(), 1e-12);
  EXPECT_EQ(reduced.factorDims(), std::vector<Index>{2});
}

TEST(PartialTrace, KeepAllIsIdentity) {
  SeededStream rng(3);
  const DensityOperator rho(randomDensity(6, rng), {2, 3});
  EXPECT_LE((partialTrace(rho, {0, 1}).matrix() - rho.matrix()).norm(), 1e-14);
}

TEST(PartialTrace, PreservesTraceAndPositivity) {
  SeededStream rng(4);
  for (int i = 0; i < 20; ++i) {
    const DensityOperator rho(randomDensity(12, rng), {2, 3, 2});
    for (std::vector<std::size_t> keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
      const auto r = partialTrace(rho, keep);
      EXPECT_NEAR(r.trace(), 1.0, 1e-10);
      EXPECT_GE(r.eigenvalues()(0), -1e-9);
    }
  }
}

TEST(PartialTrace, MiddleFactorMatchesExplicitSum) {
  SeededStream rng(5);
  const ComplexMatrix m = randomDensity(12, rng);
  const std::vector<Index> dims{2, 3, 2};
  const ComplexMatrix r = partialTraceMatrix(m, dims, {1});
  for (Index a = 0; a < 3; ++a)
    for (Index b = 0; b < 3; ++b) {
      Complex acc = 0.0;
      for (Index x = 0; x < 2; ++x)
        for (Index z = 0; z < 2; ++z) acc += m(x * 6 + a * 2 + z, x * 6 + b * 2 + z);
      EXPECT_LE(std::abs(acc - r(a, b)), 1e-14);
    }
}

TEST(PartialTrace, RejectsBadFactorIndex) {
  const auto rho = DensityOperator::maximallyMixed({2, 2});
  try {
    (void)partialTrace(rho, {2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidFactorIndex);
  }
  EXPECT_THROW((void)partialTrace(rho, {}), Error);
}

TEST(Embed, MatchesKronOnAdjacentAndSwappedSites) {
  const std::vector<Index> dims{2, 2, 2};
  EXPECT_TRUE(embed(pauli::X(), dims, {1}).isApprox(kron({pauli::I(), pauli::X(), pauli::I()})));
  EXPECT_TRUE(embed(kron(pauli::X(), pauli::Z()), dims, {2, 0}).isApprox(kron({pauli::Z(), pauli::I(), pauli::X()})));
}

TEST(HermEig, PauliZ) {
  const auto e = hermEig(pauli::Z());
  EXPECT_DOUBLE_EQ(e.values(0), -1.0);
  EXPECT_DOUBLE_EQ(e.values(1), 1.0);
}

TEST(HermEig, PauliXEigenvectorsAreMinusAndPlus) {
  const auto e = hermEig(pauli::X());
  EXPECT_NEAR(e.values(0), -1.0, 1e-15);
  EXPECT_NEAR(e.values(1), 1.0, 1e-15);
  const ComplexVector minus = (ket(2, 0) - ket(2, 1)) / std::sqrt(2.0);
  const ComplexVector plus = (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(Complex(minus.adjoint() * e.vectors.col(0))), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(Complex(plus.adjoint() * e.vectors.col(1))), 1.0, 1e-12);
}

TEST(HermEig, RandomReconstruction) {
  SeededStream rng(6);
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix h = randomHermitian(8, rng);
    const auto e = hermEig(h);
    const ComplexMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LE((back - h).norm(), 1e-9);
    EXPECT_LE((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(8, 8)).norm(), 1e-9);
  }
}

TEST(HermEig, RejectsOverCapDimension) {
  EXPECT_THROW((void)hermEig(ComplexMatrix::Identity(1025, 1025)), Error);
}

TEST(ExpMinusIHt, ZeroTimeIsIdentity) {
  SeededStream rng(7);
  const HermitianOperator h(randomHermitian(4, rng));
  EXPECT_LE((expMinusIHt(h, 0.0) - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(ExpMinusIHt, PauliZQuarterTurn) {
  const ComplexMatrix u = expMinusIHt(HermitianOperator(pauli::Z()), std::numbers::pi / 2);
  EXPECT_LE(std::abs(u(0, 0) - std::exp(-kI * std::numbers::pi / 2.0)), 1e-12);
  EXPECT_LE(std::abs(u(1, 1) - std::exp(kI * std::numbers::pi / 2.0)), 1e-12);
  EXPECT_LE(std::abs(u(0, 1)), 1e-12);
}

TEST(ExpMinusIHt, PauliXHalfTurnIsMinusIdentity) {
  const ComplexMatrix u = expMinusIHt(HermitianOperator(pauli::X()), std::numbers::pi);
  EXPECT_LE((u + ComplexMatrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(ExpMinusIHt, GroupPropertyAndUnitarity) {
  SeededStream rng(8);
  for (int i = 0; i < 20; ++i) {
    const HermitianOperator h(randomHermitian(5, rng));
    const double s = rng.uniform(-10, 10), t = rng.uniform(-10, 10);
    EXPECT_LE((expMinusIHt(h, s) * expMinusIHt(h, t) - expMinusIHt(h, s + t)).norm(), 1e-8);
    EXPECT_TRUE(isUnitary(expMinusIHt(h, t)));
  }
}

TEST(Commutator, SelfCommutationVanishes) { EXPECT_EQ(commutatorNorm(pauli::Z(), pauli::Z()), 0.0); }

TEST(Commutator, XZIsMinusTwoIY) {
  EXPECT_LE((commutator(pauli::X(), pauli::Z()) - (-2.0 * kI) * pauli::Y()).norm(), 1e-15);
}

TEST(Commutator, DisjointFactorsCommute) {
  EXPECT_EQ(commutatorNorm(kron(pauli::Z(), pauli::I()), kron(pauli::I(), pauli::X())), 0.0);
}

TEST(Commutator, SymmetricAndZeroOnCommutingDiagonals) {
  SeededStream rng(9);
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix a = randomHermitian(4, rng), b = randomHermitian(4, rng);
    EXPECT_DOUBLE_EQ(commutatorNorm(a, b), commutatorNorm(b, a));
    ComplexMatrix d1 = ComplexMatrix::Zero(4, 4), d2 = ComplexMatrix::Zero(4, 4);
    for (Index k = 0; k < 4; ++k) {
      d1(k, k) = rng.uniform(-1, 1);
      d2(k, k) = rng.uniform(-1, 1);
    }
    const ComplexMatrix u = expMinusIHt(HermitianOperator(a), 1.0);
    EXPECT_LE(commutatorNorm(u * d1 * u.adjoint(), u * d2 * u.adjoint()), 1e-12);
  }
}

TEST(Commutator, DimensionMismatchIsReported) {
  try {
    (void)commutator(pauli::X(), ComplexMatrix::Identity(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Pauli, StringOrdersFactorZeroFirst) {
  EXPECT_TRUE(pauli::string("XZ").isApprox(kron(pauli::X(), pauli::Z())));
  EXPECT_THROW((void)pauli::string("XQ"), Error);
}
