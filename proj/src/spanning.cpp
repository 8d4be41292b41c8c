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

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>

namespace zpd {
namespace {

using Key = std::vector<long long>;

Key HashKey(const CMatrix& m) {
  Key key;
  key.reserve(static_cast<std::size_t>(2 * m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      key.push_back(std::llround(m(i, j).real() * 1e12));
      key.push_back(std::llround(m(i, j).imag() * 1e12));
    }
  }
  return key;
}

double MaxAbs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

SpanningGroupSystem MakeSpanningSystem(std::vector<CMatrix> elements) {
  if (elements.empty()) Fail(ErrorCode::kConstruction, "empty group");
  const Eigen::Index n = elements.front().rows();
  std::map<Key, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].rows() != n || elements[i].cols() != n) {
      Fail(ErrorCode::kDimensionMismatch, "group elements must share one square size");
    }
    if (!index.emplace(HashKey(elements[i]), i).second) {
      Fail(ErrorCode::kConstruction, "duplicate group element " + std::to_string(i));
    }
  }
  const std::size_t order = elements.size();
  std::vector<std::vector<std::size_t>> mul(order, std::vector<std::size_t>(order));
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) {
      const CMatrix prod = elements[i] * elements[j];
      const auto it = index.find(HashKey(prod));
      if (it == index.end() || MaxAbs(elements[it->second] - prod) > 1e-12) {
        Fail(ErrorCode::kConstruction, "closure fails for elements " + std::to_string(i) +
                                           " and " + std::to_string(j));
      }
      mul[i][j] = it->second;
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < order; ++i) labels.push_back("g" + std::to_string(i));

  SpanningGroupSystem sys;
  sys.side = static_cast<std::size_t>(n);
  sys.table = MakeGroupTable(std::move(mul), std::move(labels));
  CMatrix span(n * n, static_cast<Eigen::Index>(order));
  for (std::size_t i = 0; i < order; ++i) {
    span.col(static_cast<Eigen::Index>(i)) = FromMatrix(elements[i]);
    const Eigen::JacobiSVD<CMatrix> svd(elements[i]);
    sys.bound = std::max(sys.bound, svd.singularValues()(0));
  }
  const Eigen::BDCSVD<CMatrix> svd(span);
  const RVector& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * sv(0)) ++sys.span_rank;
  }
  sys.elements = std::move(elements);
  return sys;
}

SpanningGroupSystem ClockShiftGroup(std::size_t n, std::size_t cap) {
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "invalid dimension 0");
  const auto side = static_cast<Eigen::Index>(n);
  const double pi = std::numbers::pi;
  CMatrix clock = CMatrix::Zero(side, side);
  CMatrix shift = CMatrix::Zero(side, side);
  for (Eigen::Index j = 0; j < side; ++j) {
    clock(j, j) = std::polar(1.0, 2.0 * pi * static_cast<double>(j) / static_cast<double>(n));
    shift((j + 1) % side, j) = 1.0;
  }
  const CMatrix phase = CMatrix::Identity(side, side) * std::polar(1.0, pi / static_cast<double>(n));
  const CMatrix generators[] = {clock, shift, phase};

  std::vector<CMatrix> elements{CMatrix::Identity(side, side)};
  std::map<Key, std::size_t> seen{{HashKey(elements.front()), 0}};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (const CMatrix& g : generators) {
      CMatrix next = elements[cur] * g;
      if (seen.emplace(HashKey(next), elements.size()).second) {
        if (elements.size() >= cap) {
          Fail(ErrorCode::kConstruction, "group closure exceeds cap " + std::to_string(cap));
        }
        queue.push_back(elements.size());
        elements.push_back(std::move(next));
      }
    }
  }
  return MakeSpanningSystem(std::move(elements));
}

CMatrix RepresentationOf(const CVector& f, const SpanningGroupSystem& sys) {
  RequireSameDim(sys.order(), static_cast<std::size_t>(f.size()), "group function");
  const auto side = static_cast<Eigen::Index>(sys.side);
  CMatrix out = CMatrix::Zero(side, side);
  for (std::size_t t = 0; t < sys.order(); ++t) out += f(static_cast<Eigen::Index>(t)) * sys.elements[t];
  return out;
}

DiagonalTensor ApproximateDiagonal(const SpanningGroupSystem& sys) {
  const auto dim = static_cast<Eigen::Index>(sys.side * sys.side);
  DiagonalTensor d{sys.side, CMatrix::Zero(dim, dim)};
  for (std::size_t t = 0; t < sys.order(); ++t) {
    d.coeffs += FromMatrix(sys.elements[t]) *
                FromMatrix(sys.elements[sys.table.inverse[t]]).transpose();
  }
  d.coeffs /= static_cast<double>(sys.order());
  return d;
}

CMatrix ProductMap(const DiagonalTensor& d) {
  // E_{ab} E_{cd} = [b == c] E_{ad}.
  const auto n = static_cast<Eigen::Index>(d.side);
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      for (Eigen::Index e = 0; e < n; ++e) out(a, e) += d.coeffs(a * n + b, b * n + e);
    }
  }
  return out;
}

DiagonalTensor LeftAction(const CMatrix& s, const DiagonalTensor& d) {
  DiagonalTensor out{d.side, d.coeffs};
  for (Eigen::Index q = 0; q < d.coeffs.cols(); ++q) {
    out.coeffs.col(q) = FromMatrix(s * ToMatrix(d.coeffs.col(q), d.side));
  }
  return out;
}

DiagonalTensor RightAction(const DiagonalTensor& d, const CMatrix& s) {
  DiagonalTensor out{d.side, d.coeffs};
  for (Eigen::Index p = 0; p < d.coeffs.rows(); ++p) {
    const CVector row = d.coeffs.row(p).transpose();
    out.coeffs.row(p) = FromMatrix(ToMatrix(row, d.side) * s).transpose();
  }
  return out;
}

LinearFunctional XiFromDiagonal(const BilinearForm& phi, const SpanningGroupSystem& sys) {
  const std::size_t dim = sys.side * sys.side;
  RequireSameDim(dim, phi.dim(), "bilinear form");
  // phi(A, B) = sum_ij Y[i, j] B[i, j] with Y = reshape(vec(A)^T Phi), so
  // xi(E_pq) averages (theta(t^{-1})^T Y_t)[p, q].
  const auto n = static_cast<Eigen::Index>(sys.side);
  CMatrix acc = CMatrix::Zero(n, n);
  for (std::size_t t = 0; t < sys.order(); ++t) {
    const CVector y = phi.values.transpose() * FromMatrix(sys.elements[t]);
    acc += sys.elements[sys.table.inverse[t]].transpose() * ToMatrix(y, sys.side);
  }
  acc /= static_cast<double>(sys.order());
  return LinearFunctional(FromMatrix(acc));
}

double AveragingDefect(const BilinearForm& phi, const SpanningGroupSystem& sys, const CMatrix& s,
                       const CMatrix& t_matrix, std::size_t t) {
  if (t >= sys.order()) {
    Fail(ErrorCode::kInvalidArgument, "group index " + std::to_string(t) + " out of range");
  }
  RequireSameDim(sys.side * sys.side, phi.dim(), "bilinear form");
  const CMatrix& g = sys.elements[t];
  const CMatrix& g_inv = sys.elements[sys.table.inverse[t]];
  return std::abs(phi(FromMatrix(s * g), FromMatrix(g_inv * t_matrix)) -
                  phi(FromMatrix(s), FromMatrix(t_matrix)));
}

SpanningReport AnalyzeClockShift(std::size_t n, int samples, std::uint64_t seed) {
  SpanningReport r;
  const SpanningGroupSystem sys = ClockShiftGroup(n);
  r.side = n;
  r.order = sys.order();
  r.span_rank = sys.span_rank;
  r.bound = sys.bound;
  Rng rng(seed);
  const auto order = static_cast<Eigen::Index>(sys.order());
  const auto side = static_cast<Eigen::Index>(n);
  const FiniteBanachAlgebra group_alg = GroupAlgebra(sys.table);
  const FiniteBanachAlgebra mat = MatrixAlgebra(n);

  for (int i = 0; i < samples; ++i) {
    const CVector f = rng.ComplexGaussianVector(order);
    const CVector g = rng.ComplexGaussianVector(order);
    const CVector fg = group_alg.Multiply(AlgebraElement(f), AlgebraElement(g)).coeffs;
    r.homomorphism_residual =
        std::max(r.homomorphism_residual,
                 MaxAbs(RepresentationOf(fg, sys) - RepresentationOf(f, sys) * RepresentationOf(g, sys)));
    const Eigen::JacobiSVD<CMatrix> svd(RepresentationOf(f, sys));
    r.norm_ratio = std::max(r.norm_ratio, svd.singularValues()(0) / f.cwiseAbs().sum());
  }

  const DiagonalTensor d = ApproximateDiagonal(sys);
  r.product_residual = MaxAbs(ProductMap(d) - CMatrix::Identity(side, side));
  for (int i = 0; i < samples; ++i) {
    CMatrix s(side, side);
    for (Eigen::Index k = 0; k < s.size(); ++k) s.data()[k] = rng.ComplexGaussian();
    r.bimodule_residual =
        std::max(r.bimodule_residual, MaxAbs(LeftAction(s, d).coeffs - RightAction(d, s).coeffs));
  }

  for (int i = 0; i < samples; ++i) {
    const LinearFunctional xi0(rng.ComplexGaussianVector(side * side));
    const BilinearForm phi = ComposeWithProduct(mat, xi0);
    const LinearFunctional xi = XiFromDiagonal(phi, sys);
    r.projection_residual = std::max(r.projection_residual, (xi.coeffs - xi0.coeffs).cwiseAbs().maxCoeff());

    const BilinearForm generic = RandomForm(n * n, rng.NextU64());
    const LinearFunctional once = XiFromDiagonal(generic, sys);
    const LinearFunctional twice = XiFromDiagonal(ComposeWithProduct(mat, once), sys);
    r.idempotence_residual =
        std::max(r.idempotence_residual, (twice.coeffs - once.coeffs).cwiseAbs().maxCoeff());

    const BilinearForm projected = ComposeWithProduct(mat, once);
    CMatrix s(side, side), t(side, side);
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      s.data()[k] = rng.ComplexGaussian();
      t.data()[k] = rng.ComplexGaussian();
    }
    s /= Eigen::JacobiSVD<CMatrix>(s).singularValues()(0);
    t /= Eigen::JacobiSVD<CMatrix>(t).singularValues()(0);
    r.defect_on_products = std::max(
        r.defect_on_products, AveragingDefect(projected, sys, s, t, rng.Index(sys.order())));
  }

  const double tol = 1e-12;
  r.passed = r.span_rank == n * n && std::abs(r.bound - 1.0) <= tol &&
             r.homomorphism_residual <= 1e-10 && r.norm_ratio <= r.bound + 1e-12 &&
             r.product_residual <= tol && r.bimodule_residual <= 1e-10 &&
             r.projection_residual <= 1e-10 && r.idempotence_residual <= 1e-10 &&
             r.defect_on_products <= 1e-10;
  return r;
}

}  // namespace zpd
