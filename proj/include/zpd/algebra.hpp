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

// Finite-dimensional Banach algebras given by structure constants.
//
// An algebra of dimension n stores, for every ordered pair of basis vectors,
// the coefficient vector of e_i * e_j. Two norm families are supported:
// weighted l1 (group algebras) and the operator norm on n x n matrices
// (with basis E_jk in row-major order, index j * side + k).

#ifndef ZPD_ALGEBRA_HPP_
#define ZPD_ALGEBRA_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zpd/types.hpp"

namespace zpd {

struct L1Weighted {
  std::vector<double> weights;
};

struct MatrixOperator {
  std::size_t side = 0;
};

using NormKind = std::variant<L1Weighted, MatrixOperator>;

struct AlgebraElement {
  CVector coeffs;

  AlgebraElement() = default;
  explicit AlgebraElement(CVector c) : coeffs(std::move(c)) {}

  std::size_t dim() const { return static_cast<std::size_t>(coeffs.size()); }
};

// Multiplication table of a finite group over indices 0..order-1.
struct GroupTable {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> mul;
  std::size_t identity = 0;
  std::vector<std::size_t> inverse;
  bool abelian = false;

  std::size_t order() const { return mul.size(); }
  std::size_t IndexOf(const std::string& label) const;
};

// Validates the group axioms and fills identity/inverse/abelian. Throws
// Error(kConstruction) naming the failed axiom.
GroupTable MakeGroupTable(std::vector<std::vector<std::size_t>> mul,
                          std::vector<std::string> labels = {});

GroupTable CyclicGroupTable(std::size_t order);

enum class Side {
  kLeft,   // ker L_a: solutions of a * x = 0
  kRight,  // ker R_a: solutions of x * a = 0
};

// Supremum of |y . x| over the unit ball of the algebra (or a slice of it),
// with a maximizer attaining it. y . x = sum_i y_i x_i, no conjugation.
struct DualMaximum {
  double value = 0.0;
  CVector maximizer;
};

class FiniteBanachAlgebra {
 public:
  // structure[i * dim + j] holds the coefficients of e_i * e_j. Checks
  // associativity and the identity axioms; throws Error(kConstruction).
  FiniteBanachAlgebra(std::vector<std::string> labels, std::vector<CVector> structure,
                      NormKind norm_kind, std::optional<CVector> identity,
                      double approx_id_bound);

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const NormKind& norm_kind() const { return norm_kind_; }
  const std::optional<CVector>& identity() const { return identity_; }
  double approx_id_bound() const { return approx_id_bound_; }

  const CVector& BasisProduct(std::size_t i, std::size_t j) const {
    return structure_[i * dim_ + j];
  }

  // Group algebras remember their table; matrix algebras their side.
  const std::optional<GroupTable>& group() const { return group_; }
  std::optional<std::size_t> matrix_side() const;
  bool is_l1() const { return std::holds_alternative<L1Weighted>(norm_kind_); }
  bool has_unit_weights() const;
  const std::vector<double>& l1_weights() const;

  AlgebraElement Multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  double Norm(const AlgebraElement& a) const;

  // Matrices of x -> a x and x -> x a in the basis.
  CMatrix LeftMultiplication(const AlgebraElement& a) const;
  CMatrix RightMultiplication(const AlgebraElement& a) const;

  // Hermitian-orthonormal basis of ker L_a or ker R_a. Rank cutoff is
  // 1e-10 times the largest singular value.
  std::vector<AlgebraElement> AnnihilatorBasis(const AlgebraElement& a, Side side) const;

  // sup{|y . x| : ||x|| <= 1}.
  DualMaximum DualNorm(const CVector& y) const;

  // sup{|y . x| : ||x|| <= 1, a x = 0} (kLeft) or x a = 0 (kRight).
  DualMaximum RestrictedDualNorm(const CVector& y, const AlgebraElement& a, Side side) const;

  AlgebraElement Basis(std::size_t i) const;
  AlgebraElement Zero() const { return AlgebraElement(CVector::Zero(dim_)); }

  // Checks ||a b|| <= ||a|| ||b|| + 1e-9 on random pairs.
  bool CheckSubmultiplicative(int samples, std::uint64_t seed) const;

 private:
  friend FiniteBanachAlgebra GroupAlgebra(GroupTable table, std::vector<double> weights);
  friend FiniteBanachAlgebra MatrixAlgebra(std::size_t n);

  void RequireElement(const AlgebraElement& a, const char* what) const;

  std::size_t dim_;
  std::vector<std::string> labels_;
  std::vector<CVector> structure_;
  NormKind norm_kind_;
  std::optional<CVector> identity_;
  double approx_id_bound_;
  std::optional<GroupTable> group_;
};

// l1(G) with convolution; unit weights unless given. Non-unit weights must be
// submultiplicative (w_st <= w_s w_t).
FiniteBanachAlgebra GroupAlgebra(GroupTable table, std::vector<double> weights = {});

// M_n with the operator norm.
FiniteBanachAlgebra MatrixAlgebra(std::size_t n);

// Row-major reshape helpers for matrix algebras.
CMatrix ToMatrix(const CVector& coeffs, std::size_t side);
CVector FromMatrix(const CMatrix& m);

}  // namespace zpd

#endif  // ZPD_ALGEBRA_HPP_
