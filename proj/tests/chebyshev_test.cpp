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

#include "zpd/chebyshev.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "zpd/nelder_mead.hpp"

namespace zpd {
namespace {

// Smallest radius over all circles through two or three of the points that
// contain every point. O(n^4), independent of the incremental algorithm.
double BruteForceRadius(const std::vector<Complex>& pts) {
  if (pts.size() == 1) return 0.0;
  double best = INFINITY;
  auto covers = [&](Complex c, double r) {
    for (Complex p : pts) {
      if (std::abs(p - c) > r * (1 + 1e-12) + 1e-15) return false;
    }
    return true;
  };
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex c = 0.5 * (pts[i] + pts[j]);
      const double r = std::abs(pts[i] - c);
      if (covers(c, r)) best = std::min(best, r);
      for (std::size_t k = j + 1; k < n; ++k) {
        const Complex a = pts[i], b = pts[j], d = pts[k];
        const double det = 2.0 * ((b - a).real() * (d - a).imag() - (b - a).imag() * (d - a).real());
        if (std::abs(det) < 1e-14) continue;
        const double bb = std::norm(b - a), dd = std::norm(d - a);
        const Complex center = a + Complex(((d - a).imag() * bb - (b - a).imag() * dd) / det,
                                           ((b - a).real() * dd - (d - a).real() * bb) / det);
        const double rr = std::abs(a - center);
        if (covers(center, rr)) best = std::min(best, rr);
      }
    }
  }
  return best;
}

TEST(MinimalEnclosingDisk, SmallExamples) {
  const std::vector<Complex> one{{2.0, 3.0}};
  const Disk d1 = MinimalEnclosingDisk(one);
  EXPECT_EQ(d1.radius, 0.0);
  EXPECT_EQ(d1.center, one[0]);

  const std::vector<Complex> two{{0.0, 0.0}, {1.0, 0.0}};
  const Disk d2 = MinimalEnclosingDisk(two);
  EXPECT_NEAR(d2.radius, 0.5, 1e-15);
  EXPECT_NEAR(std::abs(d2.center - Complex(0.5, 0.0)), 0.0, 1e-15);

  std::vector<Complex> tri;
  for (int k = 0; k < 3; ++k) tri.push_back(std::polar(1.0, 2.0 * M_PI * k / 3.0));
  tri.push_back({0.1, 0.2});
  const Disk d3 = MinimalEnclosingDisk(tri);
  EXPECT_NEAR(d3.radius, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(d3.center), 0.0, 1e-12);
}

TEST(MinimalEnclosingDisk, MatchesBruteForce) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.Index(9));
    std::vector<Complex> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.ComplexGaussian());
    const Disk d = MinimalEnclosingDisk(pts, rng.NextU64());
    EXPECT_NEAR(d.radius, BruteForceRadius(pts), 1e-12);
    EXPECT_TRUE(VerifyDisk(pts, d));
    ASSERT_EQ(d.support.size(), d.support_weights.size());
    Complex c(0.0, 0.0);
    double total = 0.0;
    for (std::size_t k = 0; k < d.support.size(); ++k) {
      EXPECT_GE(d.support_weights[k], -1e-12);
      c += d.support_weights[k] * pts[d.support[k]];
      total += d.support_weights[k];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(std::abs(c - d.center), 0.0, 1e-10);
  }
}

TEST(MinimalEnclosingDisk, OrderIndependent) {
  Rng rng(5);
  std::vector<Complex> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(rng.ComplexGaussian());
  const double r0 = MinimalEnclosingDisk(pts, 1).radius;
  for (std::uint64_t s = 2; s < 10; ++s) EXPECT_NEAR(MinimalEnclosingDisk(pts, s).radius, r0, 1e-13);
}

TEST(SolveChebyshev, ConstantFitIsEnclosingDisk) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.Index(8));
    std::vector<Complex> pts;
    CVector target(n);
    for (int i = 0; i < n; ++i) {
      pts.push_back(rng.ComplexGaussian());
      target(i) = pts.back();
    }
    const auto sol = SolveChebyshev(target, CMatrix::Ones(n, 1));
    const Disk d = MinimalEnclosingDisk(pts);
    EXPECT_NEAR(sol.value, d.radius, 1e-9);
    EXPECT_LE(sol.dual_value, sol.value + 1e-12);
    EXPECT_NEAR(sol.dual_value, d.radius, 1e-9);
  }
}

TEST(SolveChebyshev, EmptyBasisIsWeightedMaximum) {
  CVector t(3);
  t << Complex(1.0, 1.0), Complex(-3.0, 0.0), Complex(0.0, 2.0);
  RVector w(3);
  w << 1.0, 2.0, 0.5;
  const auto sol = SolveChebyshev(t, CMatrix(3, 0), w);
  EXPECT_NEAR(sol.value, 4.0, 1e-15);
  EXPECT_NEAR(sol.dual_value, 4.0, 1e-12);
}

TEST(SolveChebyshev, DualWitnessCertifiesGap) {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int rows = 6 + static_cast<int>(rng.Index(10));
    const int cols = 1 + static_cast<int>(rng.Index(4));
    const CVector t = rng.ComplexGaussianVector(rows);
    CMatrix basis(rows, cols);
    for (int j = 0; j < cols; ++j) basis.col(j) = rng.ComplexGaussianVector(rows);
    RVector w(rows);
    for (int i = 0; i < rows; ++i) w(i) = rng.Uniform(0.5, 2.0);
    const auto sol = SolveChebyshev(t, basis, w);
    // Primal value re-evaluated from the coefficients.
    const CVector r = t - basis * sol.coefficients;
    EXPECT_NEAR((r.cwiseAbs().array() / w.array()).maxCoeff(), sol.value, 1e-12);
    // Dual feasibility: basis^T b = 0, sum w |b| = 1.
    EXPECT_LE((basis.transpose() * sol.dual_witness).norm(), 1e-9);
    EXPECT_NEAR((w.array() * sol.dual_witness.cwiseAbs().array()).sum(), 1.0, 1e-9);
    EXPECT_LE(sol.dual_value, sol.value + 1e-12);
    EXPECT_LE(sol.value - sol.dual_value, 1e-8 * sol.value);
  }
}

TEST(NelderMead, FindsRosenbrockMinimum) {
  auto rosen = [](const RVector& x) {
    return 100.0 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1.0 - x(0), 2);
  };
  RVector x0(2);
  x0 << -1.2, 1.0;
  const auto r = NelderMead(rosen, x0, 0.5, 1e-16, 5000);
  EXPECT_NEAR(r.x(0), 1.0, 1e-4);
  EXPECT_NEAR(r.x(1), 1.0, 1e-4);
  EXPECT_LT(r.value, 1e-8);
  EXPECT_LE(r.evaluations, 5000 + 3);
}

}  // namespace
}  // namespace zpd
