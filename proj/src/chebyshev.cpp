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

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zpd {

namespace {

struct Circle {
  Complex center;
  double radius = 0.0;
  std::vector<std::size_t> support;
};

bool Inside(const Circle& c, Complex p) {
  const double slack = 1e-14 * (c.radius + std::abs(c.center) + std::abs(p));
  return std::abs(p - c.center) <= c.radius + slack;
}

Circle FromTwo(std::span<const Complex> pts, std::size_t i, std::size_t j) {
  const Complex mid = 0.5 * (pts[i] + pts[j]);
  return {mid, 0.5 * std::abs(pts[i] - pts[j]), {i, j}};
}

Circle FromThree(std::span<const Complex> pts, std::size_t i, std::size_t j, std::size_t k) {
  const Complex a = pts[i] - pts[k];
  const Complex b = pts[j] - pts[k];
  const double det = a.real() * b.imag() - a.imag() * b.real();
  const double scale = std::max({std::norm(a), std::norm(b), 1e-300});
  if (std::abs(det) <= 1e-14 * scale) {
    // Collinear: the disk on the farthest pair covers the third point.
    Circle best = FromTwo(pts, i, j);
    for (auto [p, q] : {std::pair{i, k}, std::pair{j, k}}) {
      Circle c = FromTwo(pts, p, q);
      if (c.radius > best.radius) best = c;
    }
    return best;
  }
  const double na = std::norm(a);
  const double nb = std::norm(b);
  const double x = (na * b.imag() - nb * a.imag()) / (2.0 * det);
  const double y = (a.real() * nb - b.real() * na) / (2.0 * det);
  const Complex z{x, y};
  return {pts[k] + z, std::abs(z), {i, j, k}};
}

// Convex weights of `center` with respect to the support points. Returns
// false if the center is not (numerically) in their convex hull.
bool ConvexWeights(std::span<const Complex> pts, const std::vector<std::size_t>& support,
                   Complex center, std::vector<double>& weights) {
  weights.assign(support.size(), 0.0);
  if (support.size() == 1) {
    weights[0] = 1.0;
    return true;
  }
  if (support.size() == 2) {
    const Complex d = pts[support[1]] - pts[support[0]];
    const double len2 = std::norm(d);
    if (len2 == 0.0) {
      weights = {1.0, 0.0};
      return true;
    }
    const double s = std::real((center - pts[support[0]]) * std::conj(d)) / len2;
    weights = {1.0 - s, s};
    return s >= -1e-9 && s <= 1.0 + 1e-9;
  }
  const Complex a = pts[support[0]] - pts[support[2]];
  const Complex b = pts[support[1]] - pts[support[2]];
  const Complex c = center - pts[support[2]];
  const double det = a.real() * b.imag() - a.imag() * b.real();
  if (det == 0.0) return false;
  const double l0 = (c.real() * b.imag() - c.imag() * b.real()) / det;
  const double l1 = (a.real() * c.imag() - a.imag() * c.real()) / det;
  weights = {l0, l1, 1.0 - l0 - l1};
  return std::all_of(weights.begin(), weights.end(), [](double w) { return w >= -1e-9; });
}

}  // namespace

Disk MinimalEnclosingDisk(std::span<const Complex> points, std::uint64_t shuffle_seed) {
  Disk out;
  if (points.empty()) return out;
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(shuffle_seed);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.Index(i)]);

  Circle c{points[order[0]], 0.0, {order[0]}};
  for (std::size_t a = 1; a < order.size(); ++a) {
    const std::size_t i = order[a];
    if (Inside(c, points[i])) continue;
    c = Circle{points[i], 0.0, {i}};
    for (std::size_t b = 0; b < a; ++b) {
      const std::size_t j = order[b];
      if (Inside(c, points[j])) continue;
      c = FromTwo(points, i, j);
      for (std::size_t d = 0; d < b; ++d) {
        const std::size_t k = order[d];
        if (Inside(c, points[k])) continue;
        c = FromThree(points, i, j, k);
      }
    }
  }

  out.center = c.center;
  out.radius = c.radius;
  out.support = c.support;
  if (!ConvexWeights(points, out.support, out.center, out.support_weights) &&
      out.support.size() == 3) {
    // Obtuse support triangle from rounding: the disk is then spanned by the
    // longest side.
    const auto& s = out.support;
    std::size_t p = s[0], q = s[1];
    for (auto [u, v] : {std::pair{s[0], s[2]}, std::pair{s[1], s[2]}}) {
      if (std::abs(points[u] - points[v]) > std::abs(points[p] - points[q])) p = u, q = v;
    }
    out.support = {p, q};
    ConvexWeights(points, out.support, out.center, out.support_weights);
  }
  for (double& w : out.support_weights) w = std::clamp(w, 0.0, 1.0);
  const double total =
      std::accumulate(out.support_weights.begin(), out.support_weights.end(), 0.0);
  if (total > 0.0) {
    for (double& w : out.support_weights) w /= total;
  }
  return out;
}

bool VerifyDisk(std::span<const Complex> points, const Disk& disk, double rel_tol) {
  double scale = disk.radius;
  for (const Complex& p : points) scale = std::max(scale, std::abs(p));
  const double slack = rel_tol * std::max(scale, 1e-300);
  for (const Complex& p : points) {
    if (std::abs(p - disk.center) > disk.radius + slack) return false;
  }
  for (std::size_t idx : disk.support) {
    if (std::abs(std::abs(points[idx] - disk.center) - disk.radius) > slack) return false;
  }
  return true;
}

namespace {

// Orthonormal (Hermitian) basis of the column span of m.
CMatrix ColumnSpan(const CMatrix& m) {
  if (m.cols() == 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cutoff = 1e-12 * (s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

ChebyshevSolution SolveChebyshev(const CVector& target, const CMatrix& basis,
                                 const RVector& weights, const ChebyshevOptions& options) {
  const Eigen::Index n = target.size();
  const Eigen::Index k = basis.cols();
  if (basis.rows() != n) {
    Fail(ErrorCode::kDimensionMismatch, "SolveChebyshev: basis rows do not match target");
  }
  RVector w = weights.size() == 0 ? RVector::Ones(n) : weights;
  RequireSameDim(static_cast<std::size_t>(n), static_cast<std::size_t>(w.size()),
                 "SolveChebyshev weights");
  if ((w.array() <= 0.0).any()) Fail(ErrorCode::kInvalidArgument, "weights must be positive");

  ChebyshevSolution sol;
  sol.coefficients = CVector::Zero(k);
  sol.dual_witness = CVector::Zero(n);
  if (n == 0) return sol;

  double scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(target(i)) / w(i));
  if (scale == 0.0) return sol;
  const CVector y = target / scale;

  auto residuals = [&](const CVector& c) -> CVector { return y - basis * c; };
  auto primal = [&](const CVector& r) {
    double v = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) v = std::max(v, std::abs(r(i)) / w(i));
    return v;
  };

  const CMatrix span = ColumnSpan(basis.conjugate());
  auto finish_witness = [&](CVector b) {
    if (span.cols() > 0) b -= span * (span.adjoint() * b);
    const double l1 = (w.array() * b.array().abs()).sum();
    if (l1 > 0.0) b /= l1;
    return b;
  };

  if (k == 0) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(y(i)) / w(i) > std::abs(y(best)) / w(best)) best = i;
    }
    CVector b = CVector::Zero(n);
    b(best) = std::conj(y(best)) / std::abs(y(best));
    b = finish_witness(b);
    sol.value = scale * std::abs(y(best)) / w(best);
    sol.dual_value = scale * std::abs((y.array() * b.array()).sum());
    sol.dual_witness = b;
    return sol;
  }

  // Real parametrization: c_j = x(2j) + i x(2j+1); the residual of row i is
  // q_i - P_i x with P_i the 2 x 2k real block of row i of the basis.
  const Eigen::Index dim = 2 * k + 1;
  RMatrix pr(2 * n, 2 * k);
  RVector qr(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    qr(2 * i) = y(i).real();
    qr(2 * i + 1) = y(i).imag();
    for (Eigen::Index j = 0; j < k; ++j) {
      const Complex v = basis(i, j);
      pr(2 * i, 2 * j) = v.real();
      pr(2 * i, 2 * j + 1) = -v.imag();
      pr(2 * i + 1, 2 * j) = v.imag();
      pr(2 * i + 1, 2 * j + 1) = v.real();
    }
  }
  auto to_complex = [&](const RVector& z) {
    CVector c(k);
    for (Eigen::Index j = 0; j < k; ++j) c(j) = {z(2 * j), z(2 * j + 1)};
    return c;
  };
  const RVector w2 = w.array().square();

  RVector z = RVector::Zero(dim);
  z(dim - 1) = 1.1 * primal(y) + 0.1;
  double mu = 1.0;
  const double barrier_degree = 2.0 * static_cast<double>(n);

  RVector s(n), rr(2 * n);
  // Slacks w^2 t^2 - |r_i|^2; false if any is nonpositive.
  auto slack = [&](const RVector& zz, RVector& out, RVector& res) {
    res.noalias() = qr - pr * zz.head(2 * k);
    const double t = zz(dim - 1);
    if (!(t > 0.0)) return false;
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i) = w2(i) * t * t - res(2 * i) * res(2 * i) - res(2 * i + 1) * res(2 * i + 1);
      if (!(out(i) > 0.0)) return false;
    }
    return true;
  };

  CVector best_c = CVector::Zero(k);
  double best_value = primal(y);
  CVector best_b = CVector::Zero(n);
  double best_dual = 0.0;
  int stale = 0;
  int steps = 0;

  RMatrix grads(n, dim), h(dim, dim);
  RVector g(dim), step(dim), trial(dim), s_trial(n), r_trial(2 * n), dweights(2 * n);
  slack(z, s, rr);
  for (int stage = 0; stage < 60 && steps < options.max_newton_steps; ++stage) {
    for (int it = 0; it < 30 && steps < options.max_newton_steps; ++it, ++steps) {
      const double t = z(dim - 1);
      // Rows: gradient of s_i divided by s_i.
      for (Eigen::Index i = 0; i < n; ++i) {
        const double inv = 1.0 / s(i);
        grads.row(i).head(2 * k).noalias() =
            (2.0 * inv) * (pr.middleRows(2 * i, 2).transpose() * rr.segment(2 * i, 2)).transpose();
        grads(i, dim - 1) = 2.0 * w2(i) * t * inv;
        dweights(2 * i) = dweights(2 * i + 1) = 2.0 * inv;
      }
      g = -grads.colwise().sum().transpose();
      g(dim - 1) += mu;
      h.noalias() = grads.transpose() * grads;
      h.topLeftCorner(2 * k, 2 * k).noalias() += pr.transpose() * dweights.asDiagonal() * pr;
      h(dim - 1, dim - 1) -= 2.0 * (w2.array() / s.array()).sum();

      Eigen::LDLT<RMatrix> ldlt(h);
      step = ldlt.solve(-g);
      if (ldlt.info() != Eigen::Success || !step.allFinite()) {
        h.diagonal().array() += 1e-12 * (1.0 + h.diagonal().array().abs());
        step = h.ldlt().solve(-g);
      }
      const double decrement = -g.dot(step);
      if (!(decrement > 1e-14)) break;
      // Damped Newton step for a self-concordant function; stays inside the
      // domain in exact arithmetic, halved otherwise.
      const double lambda = std::sqrt(decrement);
      double alpha = lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        trial = z + alpha * step;
        if (slack(trial, s_trial, r_trial)) {
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
      z.swap(trial);
      s.swap(s_trial);
      rr.swap(r_trial);
      if (decrement < 1e-9) break;
    }
    const CVector c = to_complex(z);
    const double v = primal(residuals(c));
    if (v < best_value) {
      best_value = v;
      best_c = c;
    }
    // The central-path dual loses accuracy once the active slacks approach
    // rounding level, so every stage proposes a witness and the best one is
    // kept.
    CVector cand(n);
    {
      const CVector r = residuals(c);
      for (Eigen::Index i = 0; i < n; ++i) cand(i) = std::conj(r(i)) / s(i);
    }
    cand = finish_witness(cand);
    const double dual = std::abs((y.array() * cand.array()).sum());
    if (dual > best_dual) {
      best_dual = dual;
      best_b = cand;
      stale = 0;
    } else {
      ++stale;
    }
    if (best_value - best_dual <= options.relative_gap * best_value) break;
    const double gap = barrier_degree / mu;
    if (gap <= 1e-14 * best_value) break;
    if (stale >= 2 && gap <= 1e-8 * best_value) break;
    mu *= 16.0;
  }

  // Active-set Newton refinement of the primal point on the KKT system
  //   sum_a lambda_a grad|r_a| / w_a = 0,  sum_a lambda_a = 1,  |r_a| / w_a = t
  // over the near-active rows.
  {
    std::vector<Eigen::Index> active;
    const CVector r0 = residuals(best_c);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(r0(i)) / w(i) >= best_value * (1.0 - 1e-6)) active.push_back(i);
    }
    const auto na = static_cast<Eigen::Index>(active.size());
    const Eigen::Index kk = 2 * k, size = kk + 1 + na;
    RVector x(kk), lambda(na);
    for (Eigen::Index j = 0; j < k; ++j) {
      x(2 * j) = best_c(j).real();
      x(2 * j + 1) = best_c(j).imag();
    }
    double lsum = 0.0;
    for (Eigen::Index a = 0; a < na; ++a) {
      lambda(a) = w(active[a]) * std::abs(best_b(active[a]));
      lsum += lambda(a);
    }
    lambda = lsum > 0.0 ? RVector(lambda / lsum) : RVector::Constant(na, 1.0 / na);
    double t = best_value;
    RMatrix jac(size, size);
    RVector f(size);
    for (int it = 0; it < 12 && na > 0; ++it) {
      const RVector res = qr - pr * x;
      jac.setZero();
      f.setZero();
      for (Eigen::Index a = 0; a < na; ++a) {
        const Eigen::Index i = active[a];
        const auto p_i = pr.middleRows(2 * i, 2);
        const Eigen::Vector2d ri = res.segment(2 * i, 2);
        const double nr = ri.norm();
        if (!(nr > 0.0)) break;
        const RVector gi = -(p_i.transpose() * ri) / nr;
        const Eigen::Vector2d u = ri / nr;
        const RMatrix hi =
            p_i.transpose() * (Eigen::Matrix2d::Identity() - u * u.transpose()) * p_i / nr;
        f.head(kk) += lambda(a) * gi / w(i);
        jac.topLeftCorner(kk, kk) += lambda(a) * hi / w(i);
        jac.block(0, kk + 1 + a, kk, 1) = gi / w(i);
        jac(kk, kk + 1 + a) = 1.0;
        f(kk + 1 + a) = nr / w(i) - t;
        jac.block(kk + 1 + a, 0, 1, kk) = gi.transpose() / w(i);
        jac(kk + 1 + a, kk) = -1.0;
      }
      f(kk) = lambda.sum() - 1.0;
      const RVector delta = jac.completeOrthogonalDecomposition().solve(-f);
      if (!delta.allFinite()) break;
      x += delta.head(kk);
      t += delta(kk);
      lambda += delta.tail(na);
      if (delta.norm() <= 1e-15 * (1.0 + x.norm())) break;
    }
    // The primal value is flat to second order along the optimal face, so
    // the converged point is accepted within rounding of the best value.
    const CVector c = to_complex(x);
    const double v = primal(residuals(c));
    if (x.allFinite() && v <= best_value * (1.0 + 1e-14)) {
      best_value = v;
      best_c = c;
    }
  }

  // Active-set polish: on the constraints attaining the optimum, look for
  // nonnegative weights lambda near the barrier's with
  // sum lambda_i w_i = 1 and basis^T (lambda_i u_i) = 0, u_i = conj(r_i)/|r_i|.
  // Any candidate is projected back onto the feasible set, so clipping
  // negative weights keeps the bound valid. Several activity thresholds are
  // tried because near-active constraints can spoil the fit.
  const CVector r = residuals(best_c);
  for (double threshold : {1e-6, 1e-8, 1e-10, 1e-4}) {
    if (best_value - best_dual <= options.relative_gap * best_value) break;
    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(r(i)) / w(i) >= best_value * (1.0 - threshold)) active.push_back(i);
    }
    const auto na = static_cast<Eigen::Index>(active.size());
    RMatrix m(2 * k + 1, na);
    RVector prior(na), rhs = RVector::Zero(2 * k + 1);
    rhs(2 * k) = 1.0;
    for (Eigen::Index a = 0; a < na; ++a) {
      const Eigen::Index i = active[a];
      const Complex u = std::conj(r(i)) / std::abs(r(i));
      for (Eigen::Index j = 0; j < k; ++j) {
        const Complex v = basis(i, j) * u;
        m(2 * j, a) = v.real();
        m(2 * j + 1, a) = v.imag();
      }
      m(2 * k, a) = w(i);
      prior(a) = std::abs(best_b(i));
    }
    const RVector lambda =
        prior + m.transpose() * (m * m.transpose()).completeOrthogonalDecomposition().solve(rhs - m * prior);
    if (!lambda.allFinite()) continue;
    CVector cand = CVector::Zero(n);
    for (Eigen::Index a = 0; a < na; ++a) {
      const Eigen::Index i = active[a];
      cand(i) = std::max(lambda(a), 0.0) * std::conj(r(i)) / std::abs(r(i));
    }
    cand = finish_witness(cand);
    const double dual = std::abs((y.array() * cand.array()).sum());
    if (dual > best_dual) {
      best_dual = dual;
      best_b = cand;
    }
  }

  sol.coefficients = best_c * scale;
  sol.value = best_value * scale;
  sol.dual_witness = best_b;
  sol.dual_value = scale * best_dual;
  sol.newton_steps = steps;
  return sol;
}

}  // namespace zpd
