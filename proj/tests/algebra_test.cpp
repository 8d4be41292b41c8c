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

#include "zpd/algebra.hpp"

#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

namespace zpd {
namespace {

CVector Vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

// S3 as permutations of {0, 1, 2}, composed right to left.
GroupTable S3() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<std::size_t>> mul(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      std::vector<int> c(3);
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      mul[a][b] = std::find(perms.begin(), perms.end(), c) - perms.begin();
    }
  }
  return MakeGroupTable(mul);
}

std::string ConstructionMessage(std::vector<std::vector<std::size_t>> mul) {
  try {
    MakeGroupTable(std::move(mul));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstruction);
    return e.what();
  }
  return "";
}

TEST(GroupAlgebra, TrivialGroupIsScalars) {
  const auto alg = GroupAlgebra(CyclicGroupTable(1));
  ASSERT_EQ(alg.dim(), 1u);
  EXPECT_NEAR(std::abs(alg.BasisProduct(0, 0)(0) - 1.0), 0.0, 0.0);
  EXPECT_EQ(alg.approx_id_bound(), 1.0);
}

TEST(GroupAlgebra, CyclicTwoRelation) {
  const auto alg = GroupAlgebra(CyclicGroupTable(2));
  const auto d1 = alg.Basis(1);
  const auto sq = alg.Multiply(d1, d1);
  EXPECT_EQ(sq.coeffs, Vec({1.0, 0.0}));
}

TEST(GroupAlgebra, SymmetricGroupIsNoncommutative) {
  const auto table = S3();
  EXPECT_FALSE(table.abelian);
  const auto alg = GroupAlgebra(table);
  bool differs = false;
  for (std::size_t s = 0; s < 6; ++s) {
    for (std::size_t t = 0; t < 6; ++t) {
      const auto st = alg.Multiply(alg.Basis(s), alg.Basis(t)).coeffs;
      const auto ts = alg.Multiply(alg.Basis(t), alg.Basis(s)).coeffs;
      differs = differs || (st - ts).norm() > 0.5;
    }
  }
  EXPECT_TRUE(differs);
}

TEST(GroupAlgebra, RejectsNonGroupTablesNamingTheAxiom) {
  EXPECT_NE(ConstructionMessage({{0, 2}, {1, 0}}).find("closure"), std::string::npos);
  // x*y = y is associative with every element a left identity but no
  // two-sided identity.
  EXPECT_NE(ConstructionMessage({{0, 1}, {0, 1}}).find("identity"), std::string::npos);
  // Identity 0, but 1*1 = 1 leaves 1 without an inverse.
  EXPECT_NE(ConstructionMessage({{0, 1}, {1, 1}}).find("inverse"), std::string::npos);
  // Commutative Latin square with identity 0 that is not associative.
  EXPECT_NE(ConstructionMessage({{0, 1, 2, 3, 4},
                                 {1, 0, 3, 4, 2},
                                 {2, 4, 0, 1, 3},
                                 {3, 2, 4, 0, 1},
                                 {4, 3, 1, 2, 0}})
                .find("associativity"),
            std::string::npos);
}

TEST(GroupAlgebra, WeightsMustBeSubmultiplicative) {
  EXPECT_THROW(GroupAlgebra(CyclicGroupTable(2), {1.0, 0.5}), Error);
  const auto alg = GroupAlgebra(CyclicGroupTable(3), {1.0, 2.0, 2.0});
  EXPECT_NEAR(alg.Norm(AlgebraElement(Vec({0.0, 1.0, -1.0}))), 4.0, 1e-15);
}

TEST(GroupAlgebra, ConvolutionExample) {
  const auto alg = GroupAlgebra(CyclicGroupTable(2));
  const AlgebraElement a(Vec({1.0, 1.0})), b(Vec({1.0, -1.0}));
  EXPECT_LT(alg.Multiply(a, b).coeffs.norm(), 1e-15);
}

TEST(GroupAlgebra, ConvolutionMatchesDirectSum) {
  const auto alg = GroupAlgebra(CyclicGroupTable(5));
  Rng rng(3);
  const CVector f = rng.ComplexGaussianVector(5), g = rng.ComplexGaussianVector(5);
  CVector direct = CVector::Zero(5);
  for (int s = 0; s < 5; ++s) {
    for (int t = 0; t < 5; ++t) direct((s + t) % 5) += f(s) * g(t);
  }
  EXPECT_LT((alg.Multiply(AlgebraElement(f), AlgebraElement(g)).coeffs - direct).norm(), 1e-13);
}

TEST(GroupAlgebra, L1NormIsSubmultiplicative) {
  EXPECT_TRUE(GroupAlgebra(S3()).CheckSubmultiplicative(200, 5));
  EXPECT_TRUE(GroupAlgebra(CyclicGroupTable(6)).CheckSubmultiplicative(200, 6));
}

TEST(MatrixAlgebra, SizeOneIsScalars) {
  const auto alg = MatrixAlgebra(1);
  EXPECT_EQ(alg.dim(), 1u);
  EXPECT_NEAR(alg.Norm(AlgebraElement(Vec({Complex(3.0, 4.0)}))), 5.0, 1e-14);
}

TEST(MatrixAlgebra, ZeroSideIsInvalid) {
  try {
    MatrixAlgebra(0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("invalid dimension"), std::string::npos);
  }
}

TEST(MatrixAlgebra, NormsAndProducts) {
  const auto alg = MatrixAlgebra(2);
  // Row-major basis: E11 = 0, E12 = 1, E21 = 2, E22 = 3.
  EXPECT_NEAR(alg.Norm(AlgebraElement(Vec({1.0, 1.0, 0.0, 0.0}))), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(alg.Norm(AlgebraElement(Vec({1.0, 0.0, 0.0, 1.0}))), 1.0, 1e-14);
  EXPECT_NEAR(alg.Norm(AlgebraElement(Vec({0.0, 2.0, 0.0, 0.0}))), 2.0, 1e-14);
  EXPECT_LT(alg.Multiply(alg.Basis(1), alg.Basis(1)).coeffs.norm(), 1e-15);
  EXPECT_EQ(alg.Multiply(alg.Basis(1), alg.Basis(2)).coeffs, alg.Basis(0).coeffs);
}

TEST(MatrixAlgebra, ProductMatchesMatrixProduct) {
  const auto alg = MatrixAlgebra(3);
  Rng rng(8);
  const CVector a = rng.ComplexGaussianVector(9), b = rng.ComplexGaussianVector(9);
  const CMatrix expect = ToMatrix(a, 3) * ToMatrix(b, 3);
  EXPECT_LT((ToMatrix(alg.Multiply(AlgebraElement(a), AlgebraElement(b)).coeffs, 3) - expect).norm(),
            1e-13);
  EXPECT_TRUE(alg.CheckSubmultiplicative(200, 9));
}

TEST(Algebra, IdentityActsTrivially) {
  for (const auto& alg : {GroupAlgebra(S3()), MatrixAlgebra(3)}) {
    Rng rng(2);
    const AlgebraElement a(rng.ComplexGaussianVector(static_cast<Eigen::Index>(alg.dim())));
    const AlgebraElement one(*alg.identity());
    EXPECT_LT((alg.Multiply(one, a).coeffs - a.coeffs).norm(), 1e-14);
    EXPECT_LT((alg.Multiply(a, one).coeffs - a.coeffs).norm(), 1e-14);
  }
}

TEST(Algebra, DimensionMismatchIsReported) {
  const auto alg = MatrixAlgebra(2);
  try {
    alg.Multiply(AlgebraElement(Vec({1.0})), alg.Basis(0));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Annihilator, Examples) {
  const auto m2 = MatrixAlgebra(2);
  EXPECT_TRUE(m2.AnnihilatorBasis(AlgebraElement(*m2.identity()), Side::kLeft).empty());

  const auto z2 = GroupAlgebra(CyclicGroupTable(2));
  const auto ker = z2.AnnihilatorBasis(AlgebraElement(Vec({1.0, 1.0})), Side::kLeft);
  ASSERT_EQ(ker.size(), 1u);
  // Proportional to (1, -1).
  EXPECT_NEAR(std::abs(ker[0].coeffs(0) + ker[0].coeffs(1)), 0.0, 1e-14);

  // E11 * x = 0 exactly when the first row of x vanishes: span{E21, E22}.
  const auto kl = m2.AnnihilatorBasis(m2.Basis(0), Side::kLeft);
  ASSERT_EQ(kl.size(), 2u);
  for (const auto& v : kl) {
    EXPECT_LT(std::abs(v.coeffs(0)) + std::abs(v.coeffs(1)), 1e-14);
  }
}

TEST(Annihilator, KernelPropertyOnRandomElements) {
  Rng rng(21);
  const auto m3 = MatrixAlgebra(3);
  for (int trial = 0; trial < 20; ++trial) {
    // Rank-deficient a = u v^T + w z^T.
    const CVector u = rng.ComplexGaussianVector(3), v = rng.ComplexGaussianVector(3);
    const CVector w = rng.ComplexGaussianVector(3), z = rng.ComplexGaussianVector(3);
    const CMatrix am = u * v.transpose() + (trial % 2 ? CMatrix(w * z.transpose()) : CMatrix::Zero(3, 3));
    const AlgebraElement a(FromMatrix(am));
    for (Side side : {Side::kLeft, Side::kRight}) {
      const auto basis = m3.AnnihilatorBasis(a, side);
      const CMatrix mult = side == Side::kLeft ? m3.LeftMultiplication(a) : m3.RightMultiplication(a);
      Eigen::JacobiSVD<CMatrix> svd(mult);
      const auto rank = (svd.singularValues().array() > 1e-10 * svd.singularValues()(0)).count();
      EXPECT_EQ(basis.size(), 9u - static_cast<std::size_t>(rank));
      for (const auto& b : basis) {
        const auto prod = side == Side::kLeft ? m3.Multiply(a, b) : m3.Multiply(b, a);
        EXPECT_LE(prod.coeffs.norm(), 1e-10);
      }
    }
  }
}

TEST(DualNorm, L1IsWeightedMaximum) {
  const auto alg = GroupAlgebra(CyclicGroupTable(3), {1.0, 2.0, 2.0});
  const CVector y = Vec({1.0, Complex(0.0, 3.0), -1.0});
  const auto d = alg.DualNorm(y);
  EXPECT_NEAR(d.value, 1.5, 1e-15);
  EXPECT_NEAR(alg.Norm(AlgebraElement(d.maximizer)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs((y.array() * d.maximizer.array()).sum()), 1.5, 1e-15);
}

TEST(DualNorm, MatrixIsNuclearNorm) {
  const auto alg = MatrixAlgebra(3);
  Rng rng(4);
  const CVector y = rng.ComplexGaussianVector(9);
  const auto d = alg.DualNorm(y);
  Eigen::JacobiSVD<CMatrix> svd(ToMatrix(y, 3));
  EXPECT_NEAR(d.value, svd.singularValues().sum(), 1e-12);
  EXPECT_NEAR(alg.Norm(AlgebraElement(d.maximizer)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs((y.array() * d.maximizer.array()).sum()), d.value, 1e-12);
}

TEST(DualNorm, RestrictedMaximizerIsFeasibleAndDominatesSamples) {
  Rng rng(12);
  for (const auto& alg : {MatrixAlgebra(2), GroupAlgebra(CyclicGroupTable(4))}) {
    const auto n = static_cast<Eigen::Index>(alg.dim());
    for (int trial = 0; trial < 10; ++trial) {
      const CVector y = rng.ComplexGaussianVector(n);
      // Singular elements: a rank-one matrix, or delta_0 + delta_2 in Z4
      // (two characters vanish on it).
      CVector a = Vec({1.0, 0.0, 1.0, 0.0});
      if (alg.matrix_side()) {
        const CVector u = rng.ComplexGaussianVector(2), v = rng.ComplexGaussianVector(2);
        a = FromMatrix(u * v.transpose());
      }
      for (Side side : {Side::kLeft, Side::kRight}) {
        const auto r = alg.RestrictedDualNorm(y, AlgebraElement(a), side);
        const auto basis = alg.AnnihilatorBasis(AlgebraElement(a), side);
        const AlgebraElement x(r.maximizer);
        const auto prod = side == Side::kLeft ? alg.Multiply(AlgebraElement(a), x)
                                              : alg.Multiply(x, AlgebraElement(a));
        EXPECT_LE(prod.coeffs.norm(), 1e-9);
        EXPECT_LE(alg.Norm(x), 1.0 + 1e-9);
        EXPECT_NEAR(std::abs((y.array() * r.maximizer.array()).sum()), r.value, 1e-9);
        for (int s = 0; s < 200; ++s) {
          CVector z = CVector::Zero(n);
          for (const auto& b : basis) z += rng.ComplexGaussian() * b.coeffs;
          const double nz = alg.Norm(AlgebraElement(z));
          if (nz == 0.0) continue;
          EXPECT_LE(std::abs((y.array() * z.array()).sum()) / nz, r.value + 1e-9);
        }
      }
    }
  }
}

}  // namespace
}  // namespace zpd
