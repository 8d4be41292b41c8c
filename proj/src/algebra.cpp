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
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "zpd/chebyshev.hpp"

namespace zpd {

namespace {

constexpr double kAssociativityTol = 1e-12;
constexpr double kRankCutoff = 1e-10;

struct NuclearMax {
  double value = 0.0;
  CMatrix maximizer;
};

// sup{|tr(Y^T X)| : ||X||_op <= 1} = nuclear norm of Y. With Y^T = U S V^*,
// X = V U^* gives tr(Y^T X) = tr(S).
NuclearMax NuclearDual(const CMatrix& y) {
  NuclearMax out;
  out.maximizer = CMatrix::Zero(y.rows(), y.cols());
  if (y.size() == 0) return out;
  Eigen::JacobiSVD<CMatrix> svd(y.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.value = svd.singularValues().sum();
  out.maximizer = svd.matrixV() * svd.matrixU().adjoint();
  return out;
}

Eigen::Index NumericalRank(const RVector& singular_values) {
  if (singular_values.size() == 0 || singular_values(0) == 0.0) return 0;
  const double cutoff = kRankCutoff * singular_values(0);
  Eigen::Index rank = 0;
  while (rank < singular_values.size() && singular_values(rank) > cutoff) ++rank;
  return rank;
}

// Hermitian-orthonormal basis of the null space of m (columns).
CMatrix NullSpace(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::Index rank = NumericalRank(svd.singularValues());
  return svd.matrixV().rightCols(m.cols() - rank);
}

// Basis of {z : z^T x = 0 for all x in ker m}, i.e. the range of m^T.
CMatrix BilinearComplementOfKernel(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::Index rank = NumericalRank(svd.singularValues());
  return svd.matrixV().leftCols(rank).conjugate();
}

}  // namespace

std::size_t GroupTable::IndexOf(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) Fail(ErrorCode::kInvalidArgument, "unknown group element '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

GroupTable MakeGroupTable(std::vector<std::vector<std::size_t>> mul,
                          std::vector<std::string> labels) {
  const std::size_t n = mul.size();
  if (n == 0) Fail(ErrorCode::kConstruction, "group table is empty");
  for (const auto& row : mul) {
    if (row.size() != n) Fail(ErrorCode::kConstruction, "group table is not square");
    for (std::size_t v : row) {
      if (v >= n) Fail(ErrorCode::kConstruction, "closure fails: entry outside the element set");
    }
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n) Fail(ErrorCode::kConstruction, "label count does not match table size");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != n) {
    Fail(ErrorCode::kConstruction, "labels are not distinct");
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) {
          Fail(ErrorCode::kConstruction, "associativity fails for (" + labels[a] + ", " +
                                             labels[b] + ", " + labels[c] + ")");
        }
      }
    }
  }

  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = mul[e][x] == x && mul[x][e] == x;
    if (ok) identity = e;
  }
  if (!identity) Fail(ErrorCode::kConstruction, "identity axiom fails: no two-sided identity");

  std::vector<std::size_t> inverse(n);
  for (std::size_t x = 0; x < n; ++x) {
    bool found = false;
    for (std::size_t y = 0; y < n && !found; ++y) {
      if (mul[x][y] == *identity && mul[y][x] == *identity) {
        inverse[x] = y;
        found = true;
      }
    }
    if (!found) Fail(ErrorCode::kConstruction, "inverse axiom fails for element " + labels[x]);
  }

  bool abelian = true;
  for (std::size_t a = 0; a < n && abelian; ++a) {
    for (std::size_t b = 0; b < n && abelian; ++b) abelian = mul[a][b] == mul[b][a];
  }

  GroupTable t;
  t.labels = std::move(labels);
  t.mul = std::move(mul);
  t.identity = *identity;
  t.inverse = std::move(inverse);
  t.abelian = abelian;
  return t;
}

GroupTable CyclicGroupTable(std::size_t order) {
  if (order == 0) Fail(ErrorCode::kConstruction, "cyclic group order must be positive");
  std::vector<std::vector<std::size_t>> mul(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) mul[a][b] = (a + b) % order;
  }
  return MakeGroupTable(std::move(mul));
}

FiniteBanachAlgebra::FiniteBanachAlgebra(std::vector<std::string> labels,
                                         std::vector<CVector> structure, NormKind norm_kind,
                                         std::optional<CVector> identity,
                                         double approx_id_bound)
    : dim_(labels.size()),
      labels_(std::move(labels)),
      structure_(std::move(structure)),
      norm_kind_(std::move(norm_kind)),
      identity_(std::move(identity)),
      approx_id_bound_(approx_id_bound) {
  const std::size_t n = dim_;
  if (n == 0) Fail(ErrorCode::kConstruction, "algebra dimension must be positive");
  if (structure_.size() != n * n) {
    Fail(ErrorCode::kConstruction, "structure tensor must have dim^2 products");
  }
  for (const CVector& v : structure_) {
    if (static_cast<std::size_t>(v.size()) != n) {
      Fail(ErrorCode::kConstruction, "structure tensor entries must have length dim");
    }
  }
  if (!(approx_id_bound_ > 0.0)) {
    Fail(ErrorCode::kConstruction, "approximate identity bound must be positive");
  }
  if (const auto* l1 = std::get_if<L1Weighted>(&norm_kind_)) {
    if (l1->weights.size() != n) Fail(ErrorCode::kConstruction, "weight count must equal dim");
    for (double w : l1->weights) {
      if (!(w > 0.0)) Fail(ErrorCode::kConstruction, "norm weights must be positive");
    }
  } else {
    const auto side = std::get<MatrixOperator>(norm_kind_).side;
    if (side * side != n) Fail(ErrorCode::kConstruction, "matrix algebra needs dim = side^2");
  }

  // Sparse view of the structure constants for the axiom checks.
  std::vector<std::vector<std::pair<std::size_t, Complex>>> nz(n * n);
  for (std::size_t p = 0; p < n * n; ++p) {
    for (std::size_t l = 0; l < n; ++l) {
      if (structure_[p](l) != 0.0) nz[p].emplace_back(l, structure_[p](l));
    }
  }
  CVector lhs(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        lhs.setZero();
        rhs.setZero();
        for (const auto& [l, c] : nz[i * n + j]) lhs += c * structure_[l * n + k];
        for (const auto& [l, c] : nz[j * n + k]) rhs += c * structure_[i * n + l];
        if ((lhs - rhs).cwiseAbs().maxCoeff() > kAssociativityTol) {
          Fail(ErrorCode::kConstruction, "associativity fails for basis triple (" + labels_[i] +
                                             ", " + labels_[j] + ", " + labels_[k] + ")");
        }
      }
    }
  }

  if (identity_) {
    if (static_cast<std::size_t>(identity_->size()) != n) {
      Fail(ErrorCode::kConstruction, "identity must have length dim");
    }
    const AlgebraElement one(*identity_);
    for (std::size_t i = 0; i < n; ++i) {
      const AlgebraElement e = Basis(i);
      if ((Multiply(one, e).coeffs - e.coeffs).cwiseAbs().maxCoeff() > kAssociativityTol ||
          (Multiply(e, one).coeffs - e.coeffs).cwiseAbs().maxCoeff() > kAssociativityTol) {
        Fail(ErrorCode::kConstruction, "identity axiom fails at basis element " + labels_[i]);
      }
    }
    if (Norm(one) > approx_id_bound_ + 1e-12) {
      Fail(ErrorCode::kConstruction, "identity norm exceeds the approximate identity bound");
    }
  }
}

std::optional<std::size_t> FiniteBanachAlgebra::matrix_side() const {
  if (const auto* m = std::get_if<MatrixOperator>(&norm_kind_)) return m->side;
  return std::nullopt;
}

bool FiniteBanachAlgebra::has_unit_weights() const {
  const auto* l1 = std::get_if<L1Weighted>(&norm_kind_);
  return l1 && std::all_of(l1->weights.begin(), l1->weights.end(),
                           [](double w) { return w == 1.0; });
}

const std::vector<double>& FiniteBanachAlgebra::l1_weights() const {
  const auto* l1 = std::get_if<L1Weighted>(&norm_kind_);
  if (!l1) Fail(ErrorCode::kInvalidArgument, "algebra does not carry an l1 norm");
  return l1->weights;
}

void FiniteBanachAlgebra::RequireElement(const AlgebraElement& a, const char* what) const {
  RequireSameDim(dim_, a.dim(), what);
}

AlgebraElement FiniteBanachAlgebra::Basis(std::size_t i) const {
  CVector v = CVector::Zero(dim_);
  v(i) = 1.0;
  return AlgebraElement(std::move(v));
}

AlgebraElement FiniteBanachAlgebra::Multiply(const AlgebraElement& a,
                                             const AlgebraElement& b) const {
  RequireElement(a, "multiply (left factor)");
  RequireElement(b, "multiply (right factor)");
  if (group_) {
    CVector c = CVector::Zero(dim_);
    for (std::size_t s = 0; s < dim_; ++s) {
      if (a.coeffs(s) == 0.0) continue;
      for (std::size_t t = 0; t < dim_; ++t) c(group_->mul[s][t]) += a.coeffs(s) * b.coeffs(t);
    }
    return AlgebraElement(std::move(c));
  }
  if (auto side = matrix_side()) {
    return AlgebraElement(FromMatrix(ToMatrix(a.coeffs, *side) * ToMatrix(b.coeffs, *side)));
  }
  CVector c = CVector::Zero(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a.coeffs(i) == 0.0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b.coeffs(j) == 0.0) continue;
      c += (a.coeffs(i) * b.coeffs(j)) * BasisProduct(i, j);
    }
  }
  return AlgebraElement(std::move(c));
}

double FiniteBanachAlgebra::Norm(const AlgebraElement& a) const {
  RequireElement(a, "norm");
  if (const auto* l1 = std::get_if<L1Weighted>(&norm_kind_)) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) sum += l1->weights[i] * std::abs(a.coeffs(i));
    return sum;
  }
  const std::size_t side = std::get<MatrixOperator>(norm_kind_).side;
  Eigen::JacobiSVD<CMatrix> svd(ToMatrix(a.coeffs, side));
  return svd.singularValues()(0);
}

CMatrix FiniteBanachAlgebra::LeftMultiplication(const AlgebraElement& a) const {
  RequireElement(a, "left multiplication");
  CMatrix m = CMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a.coeffs(i) == 0.0) continue;
    for (std::size_t j = 0; j < dim_; ++j) m.col(j) += a.coeffs(i) * BasisProduct(i, j);
  }
  return m;
}

CMatrix FiniteBanachAlgebra::RightMultiplication(const AlgebraElement& a) const {
  RequireElement(a, "right multiplication");
  CMatrix m = CMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a.coeffs(i) == 0.0) continue;
    for (std::size_t j = 0; j < dim_; ++j) m.col(j) += a.coeffs(i) * BasisProduct(j, i);
  }
  return m;
}

std::vector<AlgebraElement> FiniteBanachAlgebra::AnnihilatorBasis(const AlgebraElement& a,
                                                                  Side side) const {
  const CMatrix m = side == Side::kLeft ? LeftMultiplication(a) : RightMultiplication(a);
  const CMatrix kernel = NullSpace(m);
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(kernel.cols()));
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) out.emplace_back(kernel.col(c));
  return out;
}

DualMaximum FiniteBanachAlgebra::DualNorm(const CVector& y) const {
  RequireSameDim(dim_, static_cast<std::size_t>(y.size()), "dual norm");
  DualMaximum out;
  if (const auto* l1 = std::get_if<L1Weighted>(&norm_kind_)) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < dim_; ++i) {
      if (std::abs(y(i)) / l1->weights[i] > std::abs(y(best)) / l1->weights[best]) best = i;
    }
    out.value = std::abs(y(best)) / l1->weights[best];
    out.maximizer = CVector::Zero(dim_);
    const Complex phase = y(best) == 0.0 ? Complex(1.0) : std::conj(y(best)) / std::abs(y(best));
    out.maximizer(best) = phase / l1->weights[best];
    return out;
  }
  const std::size_t side = std::get<MatrixOperator>(norm_kind_).side;
  NuclearMax nm = NuclearDual(ToMatrix(y, side));
  out.value = nm.value;
  out.maximizer = FromMatrix(nm.maximizer);
  return out;
}

DualMaximum FiniteBanachAlgebra::RestrictedDualNorm(const CVector& y, const AlgebraElement& a,
                                                    Side side) const {
  RequireSameDim(dim_, static_cast<std::size_t>(y.size()), "restricted dual norm");
  RequireElement(a, "restricted dual norm");
  DualMaximum out;
  out.maximizer = CVector::Zero(dim_);

  if (auto n = matrix_side()) {
    const CMatrix am = ToMatrix(a.coeffs, *n);
    const CMatrix ym = ToMatrix(y, *n);
    if (side == Side::kLeft) {
      // a x = 0  <=>  x = Q X with Q an isometry onto ker(a).
      const CMatrix q = NullSpace(am);
      if (q.cols() == 0) return out;
      NuclearMax nm = NuclearDual(q.transpose() * ym);
      out.maximizer = FromMatrix(q * nm.maximizer);
    } else {
      // x a = 0  <=>  x = X W^* with W an isometry onto ker(a^*).
      const CMatrix w = NullSpace(am.adjoint());
      if (w.cols() == 0) return out;
      NuclearMax nm = NuclearDual(ym * w.conjugate());
      out.maximizer = FromMatrix(nm.maximizer * w.adjoint());
    }
    out.value = std::abs((y.array() * out.maximizer.array()).sum());
    return out;
  }

  const CMatrix m = side == Side::kLeft ? LeftMultiplication(a) : RightMultiplication(a);
  const CMatrix complement = BilinearComplementOfKernel(m);
  if (complement.cols() == static_cast<Eigen::Index>(dim_)) return out;
  const auto& w = l1_weights();
  const RVector weights = Eigen::Map<const RVector>(w.data(), static_cast<Eigen::Index>(dim_));
  const ChebyshevSolution sol = SolveChebyshev(y, complement, weights);
  out.maximizer = sol.dual_witness;
  out.value = std::abs((y.array() * out.maximizer.array()).sum());
  return out;
}

bool FiniteBanachAlgebra::CheckSubmultiplicative(int samples, std::uint64_t seed) const {
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const AlgebraElement a(rng.ComplexGaussianVector(static_cast<Eigen::Index>(dim_)));
    const AlgebraElement b(rng.ComplexGaussianVector(static_cast<Eigen::Index>(dim_)));
    if (Norm(Multiply(a, b)) > Norm(a) * Norm(b) + 1e-9) return false;
  }
  return true;
}

FiniteBanachAlgebra GroupAlgebra(GroupTable table, std::vector<double> weights) {
  const std::size_t n = table.order();
  if (weights.empty()) weights.assign(n, 1.0);
  if (weights.size() != n) Fail(ErrorCode::kConstruction, "weight count must equal group order");
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (weights[table.mul[s][t]] > weights[s] * weights[t] * (1.0 + 1e-12)) {
        Fail(ErrorCode::kConstruction, "weights are not submultiplicative at (" +
                                           table.labels[s] + ", " + table.labels[t] + ")");
      }
    }
  }
  std::vector<CVector> structure(n * n, CVector::Zero(n));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) structure[s * n + t](table.mul[s][t]) = 1.0;
  }
  CVector one = CVector::Zero(n);
  one(table.identity) = 1.0;
  const double bound = weights[table.identity];
  FiniteBanachAlgebra alg(table.labels, std::move(structure), L1Weighted{std::move(weights)},
                          std::move(one), bound);
  alg.group_ = std::move(table);
  return alg;
}

FiniteBanachAlgebra MatrixAlgebra(std::size_t n) {
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "invalid dimension: matrix side must be >= 1");
  const std::size_t dim = n * n;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      labels.push_back("E" + std::to_string(j + 1) + "," + std::to_string(k + 1));
    }
  }
  std::vector<CVector> structure(dim * dim, CVector::Zero(dim));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t m = 0; m < n; ++m) {
        // E_jk E_km = E_jm
        structure[(j * n + k) * dim + (k * n + m)](j * n + m) = 1.0;
      }
    }
  }
  return FiniteBanachAlgebra(std::move(labels), std::move(structure), MatrixOperator{n},
                             FromMatrix(CMatrix::Identity(n, n)), 1.0);
}

CMatrix ToMatrix(const CVector& coeffs, std::size_t side) {
  RequireSameDim(side * side, static_cast<std::size_t>(coeffs.size()), "matrix reshape");
  CMatrix m(side, side);
  for (std::size_t j = 0; j < side; ++j) {
    for (std::size_t k = 0; k < side; ++k) m(j, k) = coeffs(j * side + k);
  }
  return m;
}

CVector FromMatrix(const CMatrix& m) {
  CVector v(m.rows() * m.cols());
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) v(j * m.cols() + k) = m(j, k);
  }
  return v;
}

}  // namespace zpd
