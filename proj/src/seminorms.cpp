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

#include "zpd/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "zpd/chebyshev.hpp"
#include "zpd/nelder_mead.hpp"

namespace zpd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex Dot(const CVector& a, const CVector& b) { return (a.array() * b.array()).sum(); }

Complex Pair(const CMatrix& p, const CVector& a, const CVector& b) {
  return (a.transpose() * p * b)(0, 0);
}

CVector Normalized(const FiniteBanachAlgebra& alg, const CVector& v) {
  const double n = alg.Norm(AlgebraElement(v));
  return n > 0.0 ? CVector(v / n) : v;
}

// |phi(a, b)| / (||a|| ||b||), or 0 when either factor vanishes.
double PairRatio(const FiniteBanachAlgebra& alg, const CMatrix& p, const CVector& a,
                 const CVector& b) {
  const double na = alg.Norm(AlgebraElement(a));
  const double nb = alg.Norm(AlgebraElement(b));
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return std::abs(Pair(p, a, b)) / (na * nb);
}

CVector RandomDirection(Rng& rng, std::size_t n) {
  return rng.ComplexGaussianVector(static_cast<Eigen::Index>(n));
}

struct LocalPair {
  double value = 0.0;
  CVector a, b;
};

struct AscentResult {
  LocalPair best;
  std::vector<LocalPair> locals;
};

// Alternating dual-norm ascent for |a^T P b| from a given a.
LocalPair AscendFrom(const CMatrix& p, const FiniteBanachAlgebra& alg, CVector a) {
  a = Normalized(alg, a);
  CVector b;
  double value = -1.0;
  for (int it = 0; it < 100; ++it) {
    CVector nb = alg.DualNorm(p.transpose() * a).maximizer;
    CVector na = alg.DualNorm(p * nb).maximizer;
    const double v = PairRatio(alg, p, na, nb);
    if (v <= value * (1.0 + 1e-12) + 1e-300) {
      if (v > value) {
        a = std::move(na);
        b = std::move(nb);
        value = v;
      }
      break;
    }
    a = std::move(na);
    b = std::move(nb);
    value = v;
  }
  return {std::max(value, 0.0), a, b};
}

// Multi-start version over the basis and `restarts` random directions.
AscentResult NormAscent(const CMatrix& p, const FiniteBanachAlgebra& alg, int restarts,
                        std::uint64_t seed) {
  Rng rng(seed);
  AscentResult out;
  out.best.a = alg.Zero().coeffs;
  out.best.b = alg.Zero().coeffs;
  const std::size_t n = alg.dim();
  const int starts = restarts + static_cast<int>(n);
  for (int r = 0; r < starts; ++r) {
    const CVector a0 = r < static_cast<int>(n) ? alg.Basis(static_cast<std::size_t>(r)).coeffs
                                               : RandomDirection(rng, n);
    LocalPair lp = AscendFrom(p, alg, a0);
    if (lp.value > out.best.value) out.best = lp;
    out.locals.push_back(std::move(lp));
  }
  std::sort(out.locals.begin(), out.locals.end(),
            [](const LocalPair& x, const LocalPair& y) { return x.value > y.value; });
  return out;
}

// phi(ab, c) - phi(a, bc).
Complex Defect(const FiniteBanachAlgebra& alg, const CMatrix& p, const CVector& a,
               const CVector& b, const CVector& c) {
  const AlgebraElement ea(a), eb(b), ec(c);
  return Pair(p, alg.Multiply(ea, eb).coeffs, c) - Pair(p, a, alg.Multiply(eb, ec).coeffs);
}

SeminormCertificate MakeCertificate(SeminormKind kind, std::string method) {
  SeminormCertificate c;
  c.kind = kind;
  c.method = std::move(method);
  return c;
}

void MarkExact(SeminormCertificate& c, double tol) {
  c.is_exact = true;
  c.bound = BoundSide::kExact;
  c.tolerance = tol;
  c.lower_bound = c.value;
}

// Unit vector in C^q from 2(q-1) angles: q - 1 polar angles then q - 1
// phases.
CVector SphereParam(const RVector& x, Eigen::Index q) {
  CVector c(q);
  double s = 1.0;
  for (Eigen::Index i = 0; i + 1 < q; ++i) {
    const double th = x(i);
    const Complex phase = i == 0 ? Complex(1.0) : std::polar(1.0, x(q - 1 + i - 1));
    c(i) = s * std::cos(th) * phase;
    s *= std::sin(th);
  }
  c(q - 1) = s * std::polar(1.0, x(2 * (q - 1) - 1));
  return c;
}

struct SplitValue {
  double value = 0.0;
  CVector outer, inner;
};

// Maximum of |y(o)^T x| over o in span(outer_basis), x with
// constraint^T x = 0, both in the unit l1 ball, where y(o) = p^T o.
SplitValue InnerForOuter(const CMatrix& p, const CVector& o, const CMatrix& constraint) {
  SplitValue sv;
  const double on = o.cwiseAbs().sum();
  sv.outer = o / on;
  const CVector y = p.transpose() * sv.outer;
  const ChebyshevSolution sol = SolveChebyshev(y, constraint);
  sv.inner = sol.dual_witness;
  sv.value = std::abs(Dot(y, sv.inner));
  return sv;
}

SplitValue DiskSplit(const CMatrix& p, const CVector& outer, const CVector& constraint) {
  // Exact: the inner problem is the minimal enclosing disk of the points
  // y_g / n_g, where n is the single (unimodular) constraint column.
  const Eigen::Index m = p.rows();
  SplitValue sv;
  sv.outer = outer / outer.cwiseAbs().sum();
  const CVector y = p.transpose() * sv.outer;
  std::vector<Complex> pts(static_cast<std::size_t>(m));
  for (Eigen::Index g = 0; g < m; ++g) pts[g] = y(g) / constraint(g);
  const Disk disk = MinimalEnclosingDisk(pts);
  sv.inner = CVector::Zero(m);
  if (disk.radius > 0.0) {
    for (std::size_t s = 0; s < disk.support.size(); ++s) {
      const auto g = static_cast<Eigen::Index>(disk.support[s]);
      const Complex r = y(g) - disk.center * constraint(g);
      sv.inner(g) = disk.support_weights[s] * std::conj(r) / disk.radius;
    }
  }
  sv.value = std::abs(Dot(y, sv.inner));
  return sv;
}

// Grid over the polar angles in [0, pi/2] and phases in [0, 2 pi) of a
// unit vector in C^q.
std::vector<RVector> SphereGrid(Eigen::Index q, int polar_steps, int phase_steps) {
  const Eigen::Index params = 2 * (q - 1);
  std::vector<RVector> out;
  std::vector<int> idx(static_cast<std::size_t>(params), 0);
  RVector x(params);
  while (true) {
    for (Eigen::Index i = 0; i < params; ++i) {
      x(i) = i < q - 1 ? (M_PI / 2) * idx[i] / (polar_steps - 1)
                       : 2 * M_PI * idx[i] / phase_steps;
    }
    out.push_back(x);
    Eigen::Index k = 0;
    while (k < params) {
      const int limit = k < q - 1 ? polar_steps : phase_steps;
      if (++idx[k] < limit) break;
      idx[k] = 0;
      ++k;
    }
    if (k == params) break;
  }
  return out;
}

// Both sides two-dimensional: search the ratio directly on CP^1 x CP^1.
SplitValue DirectSplit(const CMatrix& p, const CMatrix& a_basis, const CMatrix& b_basis) {
  const CMatrix k = a_basis.transpose() * p * b_basis;
  auto ratio = [&](const CVector& c, const CVector& d) {
    const double na = (a_basis * c).cwiseAbs().sum();
    const double nb = (b_basis * d).cwiseAbs().sum();
    return std::abs((c.transpose() * k * d)(0, 0)) / (na * nb);
  };
  const std::vector<RVector> grid = SphereGrid(2, 9, 16);
  const auto g = static_cast<Eigen::Index>(grid.size());
  CMatrix cs(2, g);
  RVector norms(g), norms_b(g);
  CMatrix ds(2, g);
  for (Eigen::Index i = 0; i < g; ++i) {
    cs.col(i) = SphereParam(grid[i], 2);
    norms(i) = (a_basis * cs.col(i)).cwiseAbs().sum();
    norms_b(i) = (b_basis * cs.col(i)).cwiseAbs().sum();
  }
  ds = cs;
  const RMatrix values = (cs.transpose() * k * ds).cwiseAbs().array() /
                         (norms * norms_b.transpose()).array();
  std::vector<std::pair<double, std::pair<Eigen::Index, Eigen::Index>>> top;
  for (Eigen::Index i = 0; i < g; ++i) {
    for (Eigen::Index j = 0; j < g; ++j) top.push_back({values(i, j), {i, j}});
  }
  const std::size_t keep = 6;
  std::partial_sort(top.begin(), top.begin() + keep, top.end(),
                    [](const auto& l, const auto& r) { return l.first > r.first; });

  auto objective = [&](const RVector& x) {
    return -ratio(SphereParam(x.head(2), 2), SphereParam(x.tail(2), 2));
  };
  double best = -1.0;
  RVector best_x(4);
  for (std::size_t t = 0; t < keep; ++t) {
    RVector x0(4);
    x0 << grid[top[t].second.first], grid[top[t].second.second];
    const NelderMeadResult nm = NelderMead(objective, x0, 0.1, 1e-15, 400);
    if (-nm.value > best) {
      best = -nm.value;
      best_x = nm.x;
    }
  }
  SplitValue sv;
  const CVector a = a_basis * SphereParam(best_x.head(2), 2);
  const CVector b = b_basis * SphereParam(best_x.tail(2), 2);
  sv.outer = a / a.cwiseAbs().sum();
  sv.inner = b / b.cwiseAbs().sum();
  sv.value = std::abs(Pair(p, sv.outer, sv.inner));
  return sv;
}

// Outer search over span(outer_basis) with the inner problem solved by the
// barrier method.
SplitValue NestedSplit(const CMatrix& p, const CMatrix& outer_basis, const CMatrix& constraint) {
  const Eigen::Index q = outer_basis.cols();
  auto objective = [&](const RVector& x) {
    return -InnerForOuter(p, outer_basis * SphereParam(x, q), constraint).value;
  };
  std::vector<std::pair<double, RVector>> grid;
  for (const RVector& x : SphereGrid(q, q == 2 ? 9 : 4, q == 2 ? 16 : 6)) {
    grid.emplace_back(objective(x), x);
  }
  std::sort(grid.begin(), grid.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  SplitValue best;
  const std::size_t polish = std::min<std::size_t>(3, grid.size());
  for (std::size_t i = 0; i < polish; ++i) {
    const NelderMeadResult nm = NelderMead(objective, grid[i].second, 0.05, 1e-15, 300);
    SplitValue sv = InnerForOuter(p, outer_basis * SphereParam(nm.x, q), constraint);
    if (sv.value > best.value) best = std::move(sv);
  }
  return best;
}

// Monotone alternating refinement inside a split with exact inner solves.
// a_constraint cuts out the a-side (chi_t^T a = 0 for t in T), b_constraint
// the b-side.
void RefineSplit(const CMatrix& p, const CMatrix& a_constraint, const CMatrix& b_constraint,
                 CVector& a, CVector& b, double& value) {
  for (int it = 0; it < 20; ++it) {
    const ChebyshevSolution sb = SolveChebyshev(p.transpose() * a, b_constraint);
    const CVector nb = sb.dual_witness;
    const ChebyshevSolution sa = SolveChebyshev(p * nb, a_constraint);
    const CVector na = sa.dual_witness;
    const double v = std::abs(Pair(p, na, nb));
    if (!(v > value * (1.0 + 1e-14))) break;
    a = na;
    b = nb;
    value = v;
  }
}

// Distinct eigenvalues (up to a relative cluster tolerance).
std::vector<Complex> DistinctEigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  std::vector<Complex> out;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex l = es.eigenvalues()(i);
    bool seen = false;
    for (Complex u : out) seen = seen || std::abs(u - l) <= 1e-6 * scale;
    if (!seen) out.push_back(l);
  }
  return out;
}

double MaxAbs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

const char* ToString(SeminormKind kind) {
  switch (kind) {
    case SeminormKind::kNorm: return "norm";
    case SeminormKind::kB: return "b";
    case SeminormKind::kZp: return "zp";
    case SeminormKind::kDist: return "dist";
  }
  return "unknown";
}

const char* ToString(BoundSide side) {
  switch (side) {
    case BoundSide::kExact: return "exact";
    case BoundSide::kLower: return "lower";
    case BoundSide::kUpper: return "upper";
  }
  return "unknown";
}

void RequireForm(const FiniteBanachAlgebra& alg, const BilinearForm& phi) {
  if (phi.values.rows() != phi.values.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "bilinear form must be square");
  }
  RequireSameDim(alg.dim(), phi.dim(), "bilinear form");
}

BilinearForm ComposeWithProduct(const FiniteBanachAlgebra& alg, const LinearFunctional& xi) {
  RequireSameDim(alg.dim(), static_cast<std::size_t>(xi.coeffs.size()), "linear functional");
  const std::size_t n = alg.dim();
  CMatrix v(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) v(j, k) = xi(alg.BasisProduct(j, k));
  }
  return BilinearForm(std::move(v));
}

BilinearForm RandomForm(std::size_t dim, std::uint64_t seed, double scale) {
  Rng rng(seed);
  CMatrix v(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < dim; ++k) v(j, k) = scale * rng.ComplexGaussian();
  }
  return BilinearForm(std::move(v));
}

SeminormCertificate BilinearNorm(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                                 const SearchOptions& options) {
  RequireForm(alg, phi);
  const std::size_t n = alg.dim();
  if (alg.is_l1()) {
    const auto& w = alg.l1_weights();
    auto cert = MakeCertificate(SeminormKind::kNorm, "extreme-points");
    std::size_t bj = 0, bk = 0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double v = std::abs(phi.values(j, k)) / (w[j] * w[k]);
        if (v > cert.value) {
          cert.value = v;
          bj = j;
          bk = k;
        }
      }
    }
    cert.witness = {alg.Basis(bj).coeffs / w[bj], alg.Basis(bk).coeffs / w[bk]};
    MarkExact(cert, 0.0);
    return cert;
  }
  auto cert = MakeCertificate(SeminormKind::kNorm, "alternating-dual-ascent");
  const AscentResult r = NormAscent(phi.values, alg, options.restarts, options.seed);
  cert.value = r.best.value;
  cert.witness = {r.best.a, r.best.b};
  cert.bound = BoundSide::kLower;
  cert.lower_bound = cert.value;
  cert.tolerance = options.tolerance;
  cert.seed = options.seed;
  cert.restarts = options.restarts;
  return cert;
}

SeminormCertificate BSeminorm(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                              const SearchOptions& options) {
  RequireForm(alg, phi);
  const std::size_t n = alg.dim();
  const CMatrix& p = phi.values;
  if (alg.is_l1()) {
    const auto& w = alg.l1_weights();
    auto cert = MakeCertificate(SeminormKind::kB, "extreme-points");
    std::size_t bs = 0, bt = 0, bu = 0;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        const CVector left = p.transpose() * alg.BasisProduct(s, t);  // phi(e_s e_t, .)
        for (std::size_t u = 0; u < n; ++u) {
          const Complex d = left(u) - Dot(p.row(s).transpose(), alg.BasisProduct(t, u));
          const double v = std::abs(d) / (w[s] * w[t] * w[u]);
          if (v > cert.value) {
            cert.value = v;
            bs = s;
            bt = t;
            bu = u;
          }
        }
      }
    }
    cert.witness = {alg.Basis(bs).coeffs / w[bs], alg.Basis(bt).coeffs / w[bt],
                    alg.Basis(bu).coeffs / w[bu]};
    MarkExact(cert, 0.0);
    return cert;
  }

  auto cert = MakeCertificate(SeminormKind::kB, "trilinear-alternating-ascent");
  Rng rng(options.seed);
  cert.witness = {alg.Zero().coeffs, alg.Zero().coeffs, alg.Zero().coeffs};
  for (int r = 0; r < options.restarts; ++r) {
    CVector a = Normalized(alg, RandomDirection(rng, n));
    CVector b = Normalized(alg, RandomDirection(rng, n));
    CVector c = Normalized(alg, RandomDirection(rng, n));
    double value = -1.0;
    for (int it = 0; it < 200; ++it) {
      const AlgebraElement ea(a), eb(b), ec(c);
      const CVector ya = alg.RightMultiplication(eb).transpose() * (p * c) -
                         p * alg.Multiply(eb, ec).coeffs;
      a = alg.DualNorm(ya).maximizer;
      const AlgebraElement na(a);
      const CVector yb = alg.LeftMultiplication(na).transpose() * (p * c) -
                         alg.RightMultiplication(ec).transpose() * (p.transpose() * a);
      b = alg.DualNorm(yb).maximizer;
      const AlgebraElement nb(b);
      const CVector yc = p.transpose() * alg.Multiply(na, nb).coeffs -
                         alg.LeftMultiplication(nb).transpose() * (p.transpose() * a);
      c = alg.DualNorm(yc).maximizer;
      const double na_ = alg.Norm(AlgebraElement(a)), nb_ = alg.Norm(AlgebraElement(b)),
                   nc_ = alg.Norm(AlgebraElement(c));
      const double v = na_ > 0 && nb_ > 0 && nc_ > 0
                           ? std::abs(Defect(alg, p, a, b, c)) / (na_ * nb_ * nc_)
                           : 0.0;
      if (v <= value * (1.0 + 1e-14) + 1e-300) {
        value = std::max(value, v);
        break;
      }
      value = v;
      if (value > cert.value) {
        cert.value = value;
        cert.witness = {a, b, c};
      }
    }
  }
  cert.bound = BoundSide::kLower;
  cert.lower_bound = cert.value;
  cert.tolerance = options.tolerance;
  cert.seed = options.seed;
  cert.restarts = options.restarts;
  return cert;
}

CMatrix GroupCharacters(const FiniteBanachAlgebra& alg) {
  const auto& group = alg.group();
  if (!group || !group->abelian) {
    Fail(ErrorCode::kInvalidArgument, "characters need an abelian group algebra");
  }
  const std::size_t m = group->order();
  std::vector<CMatrix> regular(m, CMatrix::Zero(m, m));
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = 0; h < m; ++h) regular[g](group->mul[g][h], h) = 1.0;
  }
  // A generic combination of the commuting regular matrices has simple
  // spectrum; its eigenvectors are the joint eigenvectors.
  Rng rng(0x5EEDC4A7ULL);
  CMatrix mix = CMatrix::Zero(m, m);
  for (std::size_t g = 0; g < m; ++g) mix += rng.ComplexGaussian() * regular[g];
  Eigen::ComplexEigenSolver<CMatrix> es(mix);
  CMatrix chars(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    const CVector v = es.eigenvectors().col(static_cast<Eigen::Index>(k));
    for (std::size_t g = 0; g < m; ++g) {
      const Complex c = v.dot(regular[g] * v) / v.squaredNorm();
      chars(g, k) = c / std::abs(c);
    }
  }
  // Order by phase pattern so the trivial character comes first.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](std::size_t k) {
    std::vector<double> v;
    for (std::size_t g = 0; g < m; ++g) {
      double a = std::arg(chars(g, k));
      if (a < -1e-9) a += 2 * M_PI;
      v.push_back(std::round(a * 1e9) / 1e9);
    }
    return v;
  };
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return key(x) < key(y); });
  CMatrix sorted(m, m);
  for (std::size_t k = 0; k < m; ++k) sorted.col(k) = chars.col(order[k]);
  return sorted;
}

bool ZpOracleAvailable(const FiniteBanachAlgebra& alg) {
  return alg.group() && alg.group()->abelian && alg.has_unit_weights() &&
         alg.dim() <= kZpOracleMaxOrder;
}

SeminormCertificate ZpCharacterOracle(const BilinearForm& phi, const FiniteBanachAlgebra& alg) {
  RequireForm(alg, phi);
  if (!ZpOracleAvailable(alg)) {
    Fail(ErrorCode::kInvalidArgument,
         "character oracle needs an abelian group algebra of order <= 6 with unit weights");
  }
  const std::size_t m = alg.dim();
  const CMatrix chars = GroupCharacters(alg);
  auto cert = MakeCertificate(SeminormKind::kZp, "character-splitting-oracle");
  cert.witness = {alg.Zero().coeffs, alg.Zero().coeffs};

  // a * b = 0 iff the Gelfand transforms of a and b have disjoint supports.
  // For a support split (S, T) the a-side lives in span{conj chi_s : s in S}
  // and the b-side is cut out by chi_s^T b = 0 for s in S.
  for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
    std::vector<Eigen::Index> s_set, t_set;
    for (std::size_t k = 0; k < m; ++k) {
      ((mask >> k) & 1u ? s_set : t_set).push_back(static_cast<Eigen::Index>(k));
    }
    auto columns = [&](const std::vector<Eigen::Index>& set) {
      CMatrix c(m, static_cast<Eigen::Index>(set.size()));
      for (std::size_t i = 0; i < set.size(); ++i) c.col(i) = chars.col(set[i]);
      return c;
    };
    const CMatrix s_chars = columns(s_set), t_chars = columns(t_set);
    const CMatrix pt = phi.values.transpose();
    CVector a, b;
    double value = 0.0;
    if (s_set.size() == 1 || t_set.size() == 1) {
      const bool a_outer = s_set.size() == 1;
      const SplitValue sv = a_outer ? DiskSplit(phi.values, s_chars.col(0).conjugate(), s_chars.col(0))
                                    : DiskSplit(pt, t_chars.col(0).conjugate(), t_chars.col(0));
      a = a_outer ? sv.outer : sv.inner;
      b = a_outer ? sv.inner : sv.outer;
      value = sv.value;
    } else {
      SplitValue sv;
      bool a_outer = true;
      if (s_set.size() == 2 && t_set.size() == 2) {
        sv = DirectSplit(phi.values, s_chars.conjugate(), t_chars.conjugate());
      } else {
        a_outer = s_set.size() <= t_set.size();
        sv = a_outer ? NestedSplit(phi.values, s_chars.conjugate(), s_chars)
                     : NestedSplit(pt, t_chars.conjugate(), t_chars);
      }
      a = a_outer ? sv.outer : sv.inner;
      b = a_outer ? sv.inner : sv.outer;
      value = sv.value;
      RefineSplit(phi.values, t_chars, s_chars, a, b, value);
    }
    if (value > cert.value) {
      cert.value = value;
      cert.witness = {a, b};
    }
  }
  MarkExact(cert, 1e-9);
  return cert;
}

SeminormCertificate ZpAlternatingSearch(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                                        const SearchOptions& options) {
  RequireForm(alg, phi);
  const std::size_t n = alg.dim();
  const CMatrix& p = phi.values;
  auto cert = MakeCertificate(SeminormKind::kZp, "alternating-restricted-dual");
  cert.witness = {alg.Zero().coeffs, alg.Zero().coeffs};
  cert.bound = BoundSide::kLower;
  cert.tolerance = options.tolerance;
  cert.seed = options.seed;
  cert.restarts = options.restarts;

  Rng rng(options.seed);
  for (int r = 0; r < options.restarts; ++r) {
    // Zero divisor start: a product of (x - lambda 1) over a proper subset of
    // the spectrum of L_x.
    const CVector x = RandomDirection(rng, n);
    CVector z = x;
    if (alg.identity()) {
      const std::vector<Complex> spec = DistinctEigenvalues(alg.LeftMultiplication(AlgebraElement(x)));
      if (spec.size() < 2) continue;
      std::vector<std::size_t> pick(spec.size());
      std::iota(pick.begin(), pick.end(), 0);
      for (std::size_t i = pick.size() - 1; i > 0; --i) std::swap(pick[i], pick[rng.Index(i + 1)]);
      const std::size_t count = 1 + rng.Index(spec.size() - 1);
      z = *alg.identity();
      for (std::size_t i = 0; i < count; ++i) {
        const CVector factor = x - spec[pick[i]] * *alg.identity();
        z = alg.Multiply(AlgebraElement(z), AlgebraElement(factor)).coeffs;
      }
    }
    const bool a_first = r % 2 == 0;
    CVector a = a_first ? Normalized(alg, z) : CVector();
    CVector b = a_first ? CVector() : Normalized(alg, z);
    double value = -1.0;
    for (int it = 0; it < 100; ++it) {
      if (a_first || it > 0) {
        b = alg.RestrictedDualNorm(p.transpose() * a, AlgebraElement(a), Side::kLeft).maximizer;
      }
      a = alg.RestrictedDualNorm(p * b, AlgebraElement(b), Side::kRight).maximizer;
      const double v = PairRatio(alg, p, a, b);
      if (v <= value * (1.0 + 1e-13) + 1e-300) break;
      value = v;
      const double prod = alg.Norm(alg.Multiply(AlgebraElement(a), AlgebraElement(b)));
      const double scale = alg.Norm(AlgebraElement(a)) * alg.Norm(AlgebraElement(b));
      if (prod <= 1e-9 * scale && v > cert.value) {
        cert.value = v;
        cert.witness = {a, b};
      }
    }
  }
  cert.lower_bound = cert.value;
  return cert;
}

SeminormCertificate ZpSeminorm(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                               const SearchOptions& options) {
  RequireForm(alg, phi);
  if (alg.dim() == 1) {
    // Nonzero elements of a one-dimensional algebra with identity are
    // invertible, so no unit pair multiplies to zero.
    auto cert = MakeCertificate(SeminormKind::kZp, "empty-constraint-set");
    cert.witness = {alg.Zero().coeffs, alg.Zero().coeffs};
    if (alg.identity()) {
      MarkExact(cert, 0.0);
      return cert;
    }
  }
  if (options.use_oracle && ZpOracleAvailable(alg)) return ZpCharacterOracle(phi, alg);
  return ZpAlternatingSearch(phi, alg, options);
}

SeminormCertificate DistanceFiberDisks(const BilinearForm& phi, const FiniteBanachAlgebra& alg) {
  RequireForm(alg, phi);
  if (!alg.group() || !alg.has_unit_weights()) {
    Fail(ErrorCode::kInvalidArgument, "fiber disks need a group algebra with unit weights");
  }
  const auto& g = *alg.group();
  const std::size_t m = g.order();
  std::vector<std::vector<Complex>> fibers(m);
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) fibers[g.mul[s][t]].push_back(phi.values(s, t));
  }
  auto cert = MakeCertificate(SeminormKind::kDist, "fiber-minimal-enclosing-disk");
  CVector xi(m);
  for (std::size_t u = 0; u < m; ++u) {
    const Disk d = MinimalEnclosingDisk(fibers[u]);
    if (!VerifyDisk(fibers[u], d)) {
      Fail(ErrorCode::kInternal, "minimal enclosing disk failed its support check");
    }
    xi(u) = d.center;
    cert.value = std::max(cert.value, d.radius);
  }
  cert.minimizer = LinearFunctional(std::move(xi));
  MarkExact(cert, 1e-12);
  return cert;
}

SeminormCertificate DistanceMinimax(const BilinearForm& phi, const FiniteBanachAlgebra& alg) {
  RequireForm(alg, phi);
  const auto& w = alg.l1_weights();
  const std::size_t n = alg.dim();
  CVector target(n * n);
  CMatrix basis(n * n, n);
  RVector weights(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      target(j * n + k) = phi.values(j, k);
      basis.row(j * n + k) = alg.BasisProduct(j, k).transpose();
      weights(j * n + k) = w[j] * w[k];
    }
  }
  // min over xi of max |phi_jk - xi(e_j e_k)| / (w_j w_k).
  const ChebyshevSolution sol = SolveChebyshev(target, basis, weights);
  auto cert = MakeCertificate(SeminormKind::kDist, "barrier-minimax");
  cert.value = sol.value;
  cert.lower_bound = sol.dual_value;
  cert.minimizer = LinearFunctional(sol.coefficients);
  cert.bound = BoundSide::kUpper;
  cert.tolerance = sol.value - sol.dual_value;
  return cert;
}

SeminormCertificate DistanceCuttingPlane(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                                         const SearchOptions& options) {
  RequireForm(alg, phi);
  const std::size_t n = alg.dim();
  std::vector<std::pair<CVector, CVector>> pairs;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      pairs.emplace_back(Normalized(alg, alg.Basis(j).coeffs), Normalized(alg, alg.Basis(k).coeffs));
    }
  }
  const int inner_restarts = std::max(4, std::min(options.restarts, 8));
  const double gap_tol = std::max(options.tolerance, 1e-9);
  double lower = 0.0;
  double upper = kInf;
  CVector best_xi = CVector::Zero(n);
  Rng seeds(options.seed);
  for (int it = 0; it < 40; ++it) {
    const auto rows_count = static_cast<Eigen::Index>(pairs.size());
    CVector target(rows_count);
    CMatrix rows(rows_count, n);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [a, b] = pairs[i];
      target(i) = Pair(phi.values, a, b);
      rows.row(i) = alg.Multiply(AlgebraElement(a), AlgebraElement(b)).coeffs.transpose();
    }
    // Discrete problem over the current pairs: its dual value is a valid
    // lower bound on the distance.
    const ChebyshevSolution sol = SolveChebyshev(target, rows);
    lower = std::max(lower, sol.dual_value);
    const LinearFunctional xi(sol.coefficients);
    const CMatrix residual = phi.values - ComposeWithProduct(alg, xi).values;

    // Exchange step: re-maximize from the most active pairs of the discrete
    // solution, plus a global multi-start search.
    const CVector res_vals = target - rows * sol.coefficients;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(rows_count));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto x, auto y) {
      return std::abs(res_vals(x)) > std::abs(res_vals(y));
    });
    std::vector<LocalPair> found;
    for (std::size_t i = 0; i < std::min<std::size_t>(8, order.size()); ++i) {
      found.push_back(AscendFrom(residual, alg, pairs[order[i]].first));
    }
    const AscentResult asc = NormAscent(residual, alg, inner_restarts, seeds.NextU64());
    for (std::size_t i = 0; i < std::min<std::size_t>(4, asc.locals.size()); ++i) {
      found.push_back(asc.locals[i]);
    }
    std::sort(found.begin(), found.end(),
              [](const LocalPair& x, const LocalPair& y) { return x.value > y.value; });
    const double round_upper = found.front().value;
    if (round_upper < upper) {
      upper = round_upper;
      best_xi = xi.coeffs;
    }
    if (upper - lower <= gap_tol * std::max(1.0, upper)) break;
    int added = 0;
    std::vector<CVector> seen;
    for (const LocalPair& lp : found) {
      if (added >= 6 || !(lp.value > sol.value * (1.0 + 1e-12))) break;
      const CVector prod = alg.Multiply(AlgebraElement(lp.a), AlgebraElement(lp.b)).coeffs;
      bool duplicate = false;
      for (const CVector& q : seen) duplicate = duplicate || (q - prod).norm() <= 1e-8 * (1.0 + q.norm());
      if (duplicate) continue;
      seen.push_back(prod);
      pairs.emplace_back(lp.a, lp.b);
      ++added;
    }
    if (added == 0) break;
  }
  // Final evaluation of the chosen functional with the full restart budget.
  const CMatrix residual = phi.values - ComposeWithProduct(alg, LinearFunctional(best_xi)).values;
  const AscentResult final_eval =
      NormAscent(residual, alg, options.restarts, options.seed ^ 0xD157ULL);
  auto cert = MakeCertificate(SeminormKind::kDist, "cutting-plane");
  cert.value = std::max(upper, final_eval.best.value);
  cert.lower_bound = std::min(lower, cert.value);
  cert.minimizer = LinearFunctional(best_xi);
  cert.bound = BoundSide::kUpper;
  cert.tolerance = cert.value - cert.lower_bound;
  cert.seed = options.seed;
  cert.restarts = options.restarts;
  return cert;
}

SeminormCertificate DistanceToProducts(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                                       const SearchOptions& options) {
  if (alg.group() && alg.has_unit_weights()) return DistanceFiberDisks(phi, alg);
  if (alg.is_l1()) return DistanceMinimax(phi, alg);
  return DistanceCuttingPlane(phi, alg, options);
}

LinearFunctional XiFromIdentity(const BilinearForm& phi, const FiniteBanachAlgebra& alg) {
  RequireForm(alg, phi);
  if (!alg.identity()) Fail(ErrorCode::kInvalidArgument, "algebra has no identity");
  return LinearFunctional(phi.values.transpose() * *alg.identity());
}

SeminormSuite ComputeSuite(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                           const SearchOptions& options) {
  SeminormSuite s;
  s.norm = BilinearNorm(phi, alg, options);
  s.b = BSeminorm(phi, alg, options);
  s.zp = ZpSeminorm(phi, alg, options);
  s.dist = DistanceToProducts(phi, alg, options);
  return s;
}

namespace {

double LowerOf(const SeminormCertificate& c) {
  return c.bound == BoundSide::kUpper ? c.lower_bound : c.value;
}

double UpperOf(const SeminormCertificate& c) {
  return c.bound == BoundSide::kLower ? kInf : c.value;
}

Verdict Compare(std::string name, double lhs, double rhs, double tol,
                std::vector<std::string> witnesses) {
  Verdict v;
  v.name = std::move(name);
  v.lhs = lhs;
  v.rhs = rhs;
  v.witnesses = std::move(witnesses);
  v.evaluated = std::isfinite(lhs) && std::isfinite(rhs);
  v.passed = !v.evaluated || lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
  if (!v.evaluated) v.note = "not decidable from one-sided bounds";
  return v;
}

}  // namespace

std::vector<Verdict> VerifyProductInequalities(const SeminormSuite& s,
                                               const FiniteBanachAlgebra& alg, double tol) {
  const double m = alg.approx_id_bound();
  std::vector<Verdict> out;
  out.push_back(Compare("half_b_le_dist", 0.5 * LowerOf(s.b), UpperOf(s.dist), tol, {"b", "dist"}));
  out.push_back(Compare("dist_le_M_b", LowerOf(s.dist), m * UpperOf(s.b), tol, {"dist", "b"}));
  out.push_back(Compare("zp_le_dist", LowerOf(s.zp), UpperOf(s.dist), tol, {"zp", "dist"}));
  return out;
}

double TranslationCommutator(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                             const std::string& t, const CVector& f, const CVector& h) {
  RequireForm(alg, phi);
  if (!alg.group()) Fail(ErrorCode::kInvalidArgument, "translation needs a group algebra");
  const std::size_t ti = alg.group()->IndexOf(t);
  const AlgebraElement ef(f), eh(h);
  for (const AlgebraElement* e : {&ef, &eh}) {
    if (std::abs(alg.Norm(*e) - 1.0) > 1e-9) {
      Fail(ErrorCode::kInvalidArgument, "translation commutator needs unit f and h");
    }
  }
  const AlgebraElement dt = alg.Basis(ti);
  return std::abs(phi(alg.Multiply(ef, dt).coeffs, h) - phi(f, alg.Multiply(dt, eh).coeffs));
}

CommutatorMaximum MaxTranslationCommutator(const BilinearForm& phi,
                                           const FiniteBanachAlgebra& alg) {
  RequireForm(alg, phi);
  if (!alg.group()) Fail(ErrorCode::kInvalidArgument, "translation needs a group algebra");
  const auto& g = *alg.group();
  const auto& w = alg.l1_weights();
  const std::size_t m = g.order();
  CommutatorMaximum best;
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t f = 0; f < m; ++f) {
      for (std::size_t h = 0; h < m; ++h) {
        const double v =
            std::abs(phi.values(g.mul[f][t], h) - phi.values(f, g.mul[t][h])) / (w[f] * w[h]);
        if (v > best.value) best = {v, t, f, h};
      }
    }
  }
  return best;
}

BetaReport BetaSearch(const FiniteBanachAlgebra& alg, int budget, std::uint64_t seed) {
  const std::size_t n = alg.dim();
  SearchOptions opts;
  opts.seed = seed;
  opts.restarts = 16;
  auto ratio = [&](const CMatrix& v) {
    const BilinearForm phi(v);
    const double zp = ZpSeminorm(phi, alg, opts).value;
    if (!(zp > 1e-9 * std::max(1e-300, v.cwiseAbs().maxCoeff()))) return 0.0;
    return BSeminorm(phi, alg, opts).value / zp;
  };
  auto unpack = [n](const RVector& x) {
    CMatrix v(n, n);
    for (std::size_t i = 0; i < n * n; ++i) v(i / n, i % n) = Complex(x(2 * i), x(2 * i + 1));
    return v;
  };
  auto pack = [n](const CMatrix& v) {
    RVector x(2 * n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
      x(2 * i) = v(i / n, i % n).real();
      x(2 * i + 1) = v(i / n, i % n).imag();
    }
    return x;
  };

  std::vector<std::pair<double, CMatrix>> starts;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      CMatrix v = CMatrix::Zero(n, n);
      v(j, k) = 1.0;
      starts.emplace_back(ratio(v), v);
    }
  }
  Rng rng(seed);
  for (int r = 0; r < budget; ++r) {
    const CMatrix v = RandomForm(n, rng.NextU64()).values;
    starts.emplace_back(ratio(v), v);
  }
  std::stable_sort(starts.begin(), starts.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });

  CMatrix best = starts.front().second;
  double best_ratio = starts.front().first;
  const std::size_t polish = std::min<std::size_t>(3, starts.size());
  for (std::size_t i = 0; i < polish; ++i) {
    const NelderMeadResult nm = NelderMead([&](const RVector& x) { return -ratio(unpack(x)); },
                                           pack(starts[i].second), 0.1, 1e-12, 60 * static_cast<int>(n * n));
    if (-nm.value > best_ratio) {
      best_ratio = -nm.value;
      best = unpack(nm.x);
    }
  }

  BetaReport rep;
  rep.starts = static_cast<int>(starts.size());
  const double zp0 = ZpSeminorm(BilinearForm(best), alg, opts).value;
  rep.witness = BilinearForm(zp0 > 0.0 ? CMatrix(best / zp0) : best);
  rep.b = BSeminorm(rep.witness, alg, opts);
  rep.zp = ZpSeminorm(rep.witness, alg, opts);
  rep.dist = DistanceToProducts(rep.witness, alg, opts);
  if (rep.zp.value > 0.0) {
    rep.ratio = rep.b.value / rep.zp.value;
    rep.alpha_ratio = rep.dist.value / rep.zp.value;
  }
  rep.certified = rep.b.is_exact && rep.zp.is_exact;
  return rep;
}

ZpdLinearReport ZpdLinearCheck(const FiniteBanachAlgebra& alg, int samples, std::uint64_t seed) {
  const std::size_t n = alg.dim();
  std::vector<std::pair<CVector, CVector>> pairs;
  Rng rng(seed);

  if (alg.group() && alg.group()->abelian) {
    const CMatrix chars = GroupCharacters(alg);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        if (k != l) pairs.emplace_back(chars.col(k).conjugate(), chars.col(l).conjugate());
      }
    }
  }
  if (auto side = alg.matrix_side(); side && *side > 1) {
    const auto s = static_cast<Eigen::Index>(*side);
    for (int i = 0; i < samples; ++i) {
      const CVector x = rng.ComplexGaussianVector(s), u = rng.ComplexGaussianVector(s);
      const CVector w = rng.ComplexGaussianVector(s);
      CVector y = rng.ComplexGaussianVector(s);
      y -= (Dot(u, y) / Dot(u, u.conjugate())) * u.conjugate();
      pairs.emplace_back(FromMatrix(x * u.transpose()), FromMatrix(y * w.transpose()));
    }
  }
  if (alg.identity()) {
    for (int i = 0; i < samples; ++i) {
      const CVector x = RandomDirection(rng, n);
      const auto spec = DistinctEigenvalues(alg.LeftMultiplication(AlgebraElement(x)));
      const CVector a = x - spec[rng.Index(spec.size())] * *alg.identity();
      if (a.norm() <= 1e-12 * x.norm()) continue;
      for (const AlgebraElement& b : alg.AnnihilatorBasis(AlgebraElement(a), Side::kLeft)) {
        pairs.emplace_back(a, b.coeffs);
      }
    }
  }

  ZpdLinearReport rep;
  rep.pairs = pairs.size();
  rep.degenerate = pairs.empty();
  const auto nn = static_cast<Eigen::Index>(n * n);

  CMatrix products(nn, static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) products.row(j * n + k) = alg.BasisProduct(j, k).transpose();
  }
  auto rank = [](const CMatrix& m) -> std::size_t {
    if (m.cols() == 0 || m.rows() == 0) return 0;
    Eigen::BDCSVD<CMatrix> svd(m);
    const RVector sv = svd.singularValues();
    if (sv(0) == 0.0) return 0;
    return static_cast<std::size_t>((sv.array() > 1e-10 * sv(0)).count());
  };
  rep.product_space_dim = rank(products);

  CMatrix z(nn, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const CMatrix t = pairs[i].first * pairs[i].second.transpose();
    CVector v(nn);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) v(j * n + k) = t(j, k);
    }
    z.col(i) = v / v.norm();
  }
  rep.span_dim = rank(z);
  rep.annihilator_dim = n * n - rep.span_dim;
  // Every xi o pi kills every zero-product tensor.
  double worst = 0.0;
  if (!pairs.empty()) {
    for (Eigen::Index i = 0; i < products.cols(); ++i) {
      worst = std::max(worst, MaxAbs(z.transpose() * products.col(i)) /
                                  std::max(1.0, products.col(i).norm()));
    }
  }
  rep.products_annihilate = worst <= 1e-10;
  rep.is_zpd = rep.products_annihilate && rep.annihilator_dim == rep.product_space_dim;
  return rep;
}

}  // namespace zpd
