// Copyright 2026 The zpdcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zpd/spanning.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace zpd {
namespace {

TEST(ClockShiftTest, OrdersRanksAndBounds) {
  const std::size_t orders[] = {2, 16, 54, 128};
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto sys = ClockShiftGroup(n);
    EXPECT_EQ(sys.order(), orders[n - 1]) << n;
    EXPECT_EQ(sys.span_rank, n * n);
    EXPECT_NEAR(sys.bound, 1.0, 1e-12);
    EXPECT_EQ(sys.table.order(), sys.order());
  }
}

TEST(ClockShiftTest, TableMatchesMatrixProducts) {
  const auto sys = ClockShiftGroup(2);
  for (std::size_t s = 0; s < sys.order(); ++s) {
    for (std::size_t t = 0; t < sys.order(); ++t) {
      const CMatrix prod = sys.elements[s] * sys.elements[t];
      EXPECT_LE((prod - sys.elements[sys.table.mul[s][t]]).norm(), 1e-12);
    }
  }
}

TEST(SpanningSystemTest, RejectsNonGroups) {
  CMatrix one = CMatrix::Identity(2, 2);
  try {
    MakeSpanningSystem({one, 2.0 * one});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstruction);
  }
}

TEST(SpanningSystemTest, RepresentationIsHomomorphism) {
  const auto sys = ClockShiftGroup(2);
  const std::size_t m = sys.order();
  Rng rng(4);
  const CVector f = rng.ComplexGaussianVector(m), g = rng.ComplexGaussianVector(m);
  CVector fg = CVector::Zero(m);
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) fg(sys.table.mul[s][t]) += f(s) * g(t);
  }
  EXPECT_LE((RepresentationOf(fg, sys) - RepresentationOf(f, sys) * RepresentationOf(g, sys)).norm(),
            1e-10);
  const double op = RepresentationOf(f, sys).jacobiSvd().singularValues()(0);
  EXPECT_LE(op, f.cwiseAbs().sum() * sys.bound + 1e-12);
}

TEST(DiagonalTest, ProductIsIdentityAndCoefficient) {
  const auto sys = ClockShiftGroup(2);
  const auto d = ApproximateDiagonal(sys);
  EXPECT_LE((ProductMap(d) - CMatrix::Identity(2, 2)).norm(), 1e-12);
  // Coefficient of E01 (x) E10; flattened indices 1 and 2.
  EXPECT_NEAR(std::abs(d.coeffs(1, 2) - 0.5), 0.0, 1e-12);
}

TEST(DiagonalTest, CommutesWithMatrices) {
  for (std::size_t n : {2u, 3u}) {
    const auto sys = ClockShiftGroup(n);
    const auto d = ApproximateDiagonal(sys);
    Rng rng(n);
    CMatrix s(n, n);
    for (std::size_t i = 0; i < n * n; ++i) s(i / n, i % n) = rng.ComplexGaussian();
    EXPECT_LE((LeftAction(s, d).coeffs - RightAction(d, s).coeffs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DiagonalTest, XiRecoversProductForms) {
  const auto sys = ClockShiftGroup(2);
  const auto alg = MatrixAlgebra(2);
  Rng rng(9);
  const LinearFunctional xi0(rng.ComplexGaussianVector(4));
  const auto phi = ComposeWithProduct(alg, xi0);
  const auto xi = XiFromDiagonal(phi, sys);
  EXPECT_LE((xi.coeffs - xi0.coeffs).norm(), 1e-12);
  const CMatrix s = ToMatrix(rng.ComplexGaussianVector(4), 2);
  const CMatrix t = ToMatrix(rng.ComplexGaussianVector(4), 2);
  for (std::size_t g = 0; g < sys.order(); ++g) {
    EXPECT_LE(AveragingDefect(phi, sys, s, t, g), 1e-12);
  }
  EXPECT_THROW(AveragingDefect(phi, sys, s, t, sys.order()), Error);
}

TEST(DiagonalTest, XiIsIdempotent) {
  const auto sys = ClockShiftGroup(2);
  const auto alg = MatrixAlgebra(2);
  const auto phi = RandomForm(4, 12);
  const auto xi = XiFromDiagonal(phi, sys);
  const auto again = XiFromDiagonal(ComposeWithProduct(alg, xi), sys);
  EXPECT_LE((again.coeffs - xi.coeffs).norm(), 1e-12);
}

TEST(ReportTest, ClockShiftPasses) {
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto rep = AnalyzeClockShift(n, 10, 5);
    EXPECT_TRUE(rep.passed) << n;
    EXPECT_EQ(rep.span_rank, n * n);
    EXPECT_LE(rep.homomorphism_residual, 1e-9);
    EXPECT_LE(rep.norm_ratio, 1.0 + 1e-9);
    EXPECT_LE(rep.product_residual, 1e-12);
  }
}

}  // namespace
}  // namespace zpd
