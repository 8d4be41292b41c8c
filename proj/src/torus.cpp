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

#include "zpd/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace zpd {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxDegree = 1 << 24;

// Compensated (Neumaier) summation.
class Accumulator {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double Value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Product of nonnegative bounds with 0 * inf = 0.
double BoundProduct(double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  return x * y;
}

void CheckDegree(long long degree) {
  if (degree < 0 || degree > kMaxDegree) {
    Fail(ErrorCode::kInvalidArgument, "series degree overflow: " + std::to_string(degree));
  }
}

// e^{-i k step pi / 15} with the exponent reduced exactly.
Complex StepPhase(long long k, long long step) {
  long long r = (k * step) % 30;
  if (r < 0) r += 30;
  return std::polar(1.0, -static_cast<double>(r) * kPi / 15.0);
}

TorusSeries RotateBySteps(const TorusSeries& f, long long steps) {
  TorusSeries out = f;
  for (int k = -f.degree(); k <= f.degree(); ++k) out.at(k) = f[k] * StepPhase(k, steps);
  return out;
}

}  // namespace

double Arc::HaarLength() const { return (end - start) / (2.0 * kPi); }

TorusSeries::TorusSeries(int degree) : degree_(degree) {
  CheckDegree(degree);
  coeffs_.assign(2 * static_cast<std::size_t>(degree) + 1, Complex(0.0, 0.0));
}

Complex TorusSeries::operator[](int k) const {
  if (k < -degree_ || k > degree_) return {0.0, 0.0};
  return coeffs_[static_cast<std::size_t>(k + degree_)];
}

Complex& TorusSeries::at(int k) {
  if (k < -degree_ || k > degree_) {
    Fail(ErrorCode::kInvalidArgument, "frequency " + std::to_string(k) + " outside degree " +
                                          std::to_string(degree_));
  }
  return coeffs_[static_cast<std::size_t>(k + degree_)];
}

double TorusSeries::TruncatedNorm() const {
  Accumulator acc;
  for (const Complex& c : coeffs_) acc.Add(std::abs(c));
  return acc.Value();
}

double TorusSeries::NormUpper() const { return TruncatedNorm() + a_tail; }

Complex TorusSeries::Evaluate(double theta) const {
  const Complex step = std::polar(1.0, theta);
  Complex z = std::polar(1.0, -theta * degree_);
  Complex sum(0.0, 0.0);
  for (const Complex& c : coeffs_) {
    sum += c * z;
    z *= step;
  }
  return sum;
}

TorusSeries TorusSeries::Monomial(int degree, int power, Complex value) {
  TorusSeries out(degree);
  out.at(power) = value;
  return out;
}

TorusSeries ArcIndicator(const Arc& arc, int degree) {
  if (degree < 1) Fail(ErrorCode::kInvalidArgument, "arc indicator needs degree >= 1");
  const double len = arc.HaarLength();
  if (!(len > 0.0) || len > 1.0 + 1e-15) {
    Fail(ErrorCode::kInvalidArgument, "arc length must lie in (0, 2 pi]");
  }
  TorusSeries out(degree);
  out.at(0) = len;
  Accumulator energy;
  energy.Add(len * len);
  for (int k = 1; k <= degree; ++k) {
    for (int sign : {-1, 1}) {
      const int m = sign * k;
      const Complex c = (std::polar(1.0, -m * arc.start) - std::polar(1.0, -m * arc.end)) /
                        Complex(0.0, 2.0 * kPi * m);
      out.at(m) = c;
      energy.Add(std::norm(c));
    }
  }
  // Parseval: the full sum of |c|^2 is the length. The envelope
  // |c(k)| <= 1/(pi |k|) gives the second bound.
  const double parseval =
      std::max(0.0, len - energy.Value()) + 4.0 * std::numeric_limits<double>::epsilon() * len;
  const double envelope = 2.0 / (kPi * kPi * degree);
  out.l2sq_tail = std::min(parseval, envelope);
  out.sup_tail = 1.0 / (kPi * (degree + 1));
  out.a_tail = kInf;
  return out;
}

TorusSeries Convolve(const TorusSeries& f, const TorusSeries& g) {
  RequireSameDim(static_cast<std::size_t>(f.degree()), static_cast<std::size_t>(g.degree()),
                 "convolve degree");
  TorusSeries out(f.degree());
  for (int k = -f.degree(); k <= f.degree(); ++k) out.at(k) = f[k] * g[k];
  out.a_tail = std::min({std::sqrt(BoundProduct(f.l2sq_tail, g.l2sq_tail)),
                         BoundProduct(f.sup_tail, g.a_tail), BoundProduct(f.a_tail, g.sup_tail)});
  out.sup_tail = BoundProduct(f.sup_tail, g.sup_tail);
  out.l2sq_tail = std::min(BoundProduct(f.sup_tail * f.sup_tail, g.l2sq_tail),
                           BoundProduct(f.l2sq_tail, g.sup_tail * g.sup_tail));
  return out;
}

TorusSeries Multiply(const TorusSeries& f, const TorusSeries& g) {
  CheckDegree(static_cast<long long>(f.degree()) + g.degree());
  TorusSeries out(f.degree() + g.degree());
  for (int j = -f.degree(); j <= f.degree(); ++j) {
    const Complex fj = f[j];
    if (fj == Complex(0.0, 0.0)) continue;
    for (int k = -g.degree(); k <= g.degree(); ++k) out.at(j + k) += fj * g[k];
  }
  // f g - f_N g_N = f_N (g - g_N) + (f - f_N) g.
  out.a_tail = BoundProduct(f.a_tail, g.TruncatedNorm() + g.a_tail) +
               BoundProduct(f.TruncatedNorm(), g.a_tail);
  out.sup_tail = out.a_tail;
  out.l2sq_tail = out.a_tail * out.a_tail;
  return out;
}

TorusSeries Add(const TorusSeries& f, const TorusSeries& g) {
  TorusSeries out(std::max(f.degree(), g.degree()));
  for (int k = -out.degree(); k <= out.degree(); ++k) out.at(k) = f[k] + g[k];
  out.a_tail = f.a_tail + g.a_tail;
  out.sup_tail = f.sup_tail + g.sup_tail;
  const double l2 = std::sqrt(f.l2sq_tail) + std::sqrt(g.l2sq_tail);
  out.l2sq_tail = l2 * l2;
  return out;
}

TorusSeries Scale(const TorusSeries& f, Complex s) {
  TorusSeries out(f.degree());
  for (int k = -f.degree(); k <= f.degree(); ++k) out.at(k) = s * f[k];
  const double m = std::abs(s);
  out.a_tail = BoundProduct(m, f.a_tail);
  out.sup_tail = BoundProduct(m, f.sup_tail);
  out.l2sq_tail = BoundProduct(m * m, f.l2sq_tail);
  return out;
}

TorusSeries Rotate(const TorusSeries& f, Complex alpha) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12) {
    Fail(ErrorCode::kInvalidArgument, "rotation needs a unimodular factor");
  }
  const double angle = std::arg(alpha);
  TorusSeries out = f;
  for (int k = -f.degree(); k <= f.degree(); ++k) out.at(k) = f[k] * std::polar(1.0, -k * angle);
  return out;
}

TorusSeries DilateCircle(const TorusSeries& f, int j) {
  if (j == 0) Fail(ErrorCode::kInvalidArgument, "dilation index must be nonzero");
  CheckDegree(static_cast<long long>(std::abs(j)) * f.degree());
  TorusSeries out(std::abs(j) * f.degree());
  for (int k = -f.degree(); k <= f.degree(); ++k) out.at(j * k) = f[k];
  out.a_tail = f.a_tail;
  out.sup_tail = f.sup_tail;
  out.l2sq_tail = f.l2sq_tail;
  return out;
}

Arc PlateauArc() { return {-kPi / 5.0, kPi / 5.0}; }
Arc StepArc() { return {0.0, kPi / 15.0}; }
Arc ComplementArc() { return {2.0 * kPi / 15.0, 29.0 * kPi / 15.0}; }
Arc SmoothingArc() { return {-kPi / 30.0, kPi / 30.0}; }
Complex StepPoint() { return std::polar(1.0, kPi / 15.0); }

TorusSeries SmallWindow(int degree) {
  return Scale(Convolve(ArcIndicator(StepArc(), degree), ArcIndicator(SmoothingArc(), degree)),
               30.0);
}

TorusSeries LargeWindow(int degree) {
  return Scale(
      Convolve(ArcIndicator(ComplementArc(), degree), ArcIndicator(SmoothingArc(), degree)),
      30.0);
}

PartitionReport VerifyPartitions(int degree, const std::vector<int>& shifts) {
  if (degree < 30) Fail(ErrorCode::kInvalidArgument, "partition check needs degree >= 30");
  PartitionReport report;
  report.degree = degree;
  const TorusSeries small = SmallWindow(degree);
  const TorusSeries large = LargeWindow(degree);
  report.small_window_norm = small.NormUpper();
  report.large_window_norm = large.NormUpper();
  // The small-window norm is exactly 1; the slack absorbs rounding.
  report.small_window_ok = report.small_window_norm <= 1.0 + 1e-12;
  report.large_window_ok = report.large_window_norm <= std::sqrt(27.0) + 1e-12;

  std::vector<TorusSeries> rotated;
  rotated.reserve(30);
  for (int s = 0; s < 30; ++s) rotated.push_back(RotateBySteps(small, s));
  auto sum_range = [&](int first, int count) {
    std::vector<Accumulator> re(2 * degree + 1), im(2 * degree + 1);
    for (int s = first; s < first + count; ++s) {
      const TorusSeries& r = rotated[static_cast<std::size_t>(((s % 30) + 30) % 30)];
      for (int k = -degree; k <= degree; ++k) {
        re[static_cast<std::size_t>(k + degree)].Add(r[k].real());
        im[static_cast<std::size_t>(k + degree)].Add(r[k].imag());
      }
    }
    TorusSeries out(degree);
    for (int k = -degree; k <= degree; ++k) {
      const std::size_t i = static_cast<std::size_t>(k + degree);
      out.at(k) = {re[i].Value(), im[i].Value()};
    }
    return out;
  };

  report.passed = report.small_window_ok && report.large_window_ok;
  for (int j : shifts) {
    PartitionCheck check;
    check.shift = j;
    const TorusSeries unity = sum_range(j, 30);
    const TorusSeries part = sum_range(j + 2, 27);
    const TorusSeries target = RotateBySteps(large, j);
    for (int k = -degree; k <= degree; ++k) {
      const Complex one = k == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      check.unity_residual = std::max(check.unity_residual, std::abs(unity[k] - one));
      check.window_residual = std::max(check.window_residual, std::abs(part[k] - target[k]));
    }
    check.unity_tail = 30.0 * small.a_tail;
    check.window_tail = 27.0 * small.a_tail + large.a_tail;
    check.passed = check.unity_residual <= std::min(check.unity_tail, 1e-10) &&
                   check.window_residual <= std::min(check.window_tail, 1e-10);
    report.passed = report.passed && check.passed;
    report.checks.push_back(check);
  }
  return report;
}

RationalArc MinkowskiSum(const RationalArc& x, const RationalArc& y) {
  return {x.num_start * y.den + y.num_start * x.den, x.num_end * y.den + y.num_end * x.den,
          x.den * y.den};
}

RationalArc Shift(const RationalArc& x, std::int64_t num, std::int64_t den) {
  return {x.num_start * den + num * x.den, x.num_end * den + num * x.den, x.den * den};
}

bool InteriorsDisjoint(const RationalArc& x, const RationalArc& y) {
  // Bring both to a common denominator; a full turn is 2 in units of pi.
  const std::int64_t den = x.den * y.den;
  const std::int64_t xs = x.num_start * y.den, xe = x.num_end * y.den;
  const std::int64_t ys = y.num_start * x.den, ye = y.num_end * x.den;
  const std::int64_t turn = 2 * den;
  if (xe - xs >= turn || ye - ys >= turn) return false;
  // Translate y by whole turns so its start lies in [xs - turn, xs + turn].
  std::int64_t shift = ((xs - ys) / turn) * turn;
  for (std::int64_t t = shift - 2 * turn; t <= shift + 2 * turn; t += turn) {
    if (std::max(xs, ys + t) < std::min(xe, ye + t)) return false;
  }
  return true;
}

DisjointnessReport DisjointSupportCheck(int degree, int samples) {
  DisjointnessReport report;
  const RationalArc step{0, 2, 30};
  const RationalArc complement{4, 58, 30};
  const RationalArc smoothing{-1, 1, 30};
  const RationalArc small_support = MinkowskiSum(step, smoothing);
  const RationalArc large_support = MinkowskiSum(complement, smoothing);
  report.supports_disjoint = InteriorsDisjoint(small_support, large_support);
  report.shifted_disjoint = true;
  for (int k = 0; k < 30; ++k) {
    report.shifted_disjoint =
        report.shifted_disjoint &&
        InteriorsDisjoint(Shift(small_support, 2 * k, 30), Shift(large_support, 2 * k, 30));
  }
  const TorusSeries small = SmallWindow(degree);
  const TorusSeries large = LargeWindow(degree);
  report.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * kPi * i / samples;
    report.sampled_max_product = std::max(
        report.sampled_max_product, std::abs(small.Evaluate(theta) * large.Evaluate(theta)));
  }
  report.passed =
      report.supports_disjoint && report.shifted_disjoint && report.sampled_max_product <= 1e-6;
  return report;
}

Complex TorusSeries2D::operator[](const Key& k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
}

void TorusSeries2D::Add(const Key& k, Complex v) {
  CheckDegree(std::max(std::abs(static_cast<long long>(k.first)),
                       std::abs(static_cast<long long>(k.second))));
  coeffs_[k] += v;
}

double TorusSeries2D::TruncatedNorm() const {
  Accumulator acc;
  for (const auto& [key, c] : coeffs_) acc.Add(std::abs(c));
  return acc.Value();
}

int TorusSeries2D::Degree() const {
  int d = 0;
  for (const auto& [key, c] : coeffs_) d = std::max({d, std::abs(key.first), std::abs(key.second)});
  return d;
}

TorusSeries2D Tensor(const TorusSeries& f, const TorusSeries& g) {
  TorusSeries2D out;
  for (int j = -f.degree(); j <= f.degree(); ++j) {
    if (f[j] == Complex(0.0, 0.0)) continue;
    for (int k = -g.degree(); k <= g.degree(); ++k) {
      if (g[k] == Complex(0.0, 0.0)) continue;
      out.Add({j, k}, f[j] * g[k]);
    }
  }
  const double fn = f.TruncatedNorm(), gn = g.TruncatedNorm();
  out.a_tail = BoundProduct(f.a_tail, gn + g.a_tail) + BoundProduct(fn, g.a_tail);
  return out;
}

TorusSeries2D Subtract(const TorusSeries2D& f, const TorusSeries2D& g) {
  TorusSeries2D out = f;
  for (const auto& [key, c] : g.coeffs()) out.Add(key, -c);
  out.a_tail = f.a_tail + g.a_tail;
  return out;
}

TorusSeries2D ProjectToDiagonalKernel(const TorusSeries2D& f) {
  std::map<int, std::pair<Complex, int>> groups;
  for (const auto& [key, c] : f.coeffs()) {
    auto& g = groups[key.first + key.second];
    g.first += c;
    g.second += 1;
  }
  TorusSeries2D out;
  for (const auto& [key, c] : f.coeffs()) {
    const auto& g = groups[key.first + key.second];
    out.Add(key, c - g.first / static_cast<double>(g.second));
  }
  out.a_tail = 2.0 * f.a_tail;
  return out;
}

TorusSeries DeltaMap(const TorusSeries2D& f) {
  int degree = 0;
  for (const auto& [key, c] : f.coeffs()) degree = std::max(degree, std::abs(key.first + key.second));
  std::vector<Accumulator> re(2 * static_cast<std::size_t>(degree) + 1),
      im(2 * static_cast<std::size_t>(degree) + 1);
  for (const auto& [key, c] : f.coeffs()) {
    const std::size_t i = static_cast<std::size_t>(key.first + key.second + degree);
    re[i].Add(c.real());
    im[i].Add(c.imag());
  }
  TorusSeries out(degree);
  for (int m = -degree; m <= degree; ++m) {
    const std::size_t i = static_cast<std::size_t>(m + degree);
    out.at(m) = {re[i].Value(), im[i].Value()};
  }
  out.a_tail = f.a_tail;
  out.sup_tail = f.a_tail;
  out.l2sq_tail = f.a_tail * f.a_tail;
  return out;
}

TorusSeries2D DilateTorus(const TorusSeries2D& f, int j) {
  if (j == 0) Fail(ErrorCode::kInvalidArgument, "dilation index must be nonzero");
  TorusSeries2D out;
  for (const auto& [key, c] : f.coeffs()) {
    const long long a = static_cast<long long>(j) * key.first;
    const long long b = static_cast<long long>(j) * key.second;
    CheckDegree(std::max(std::abs(a), std::abs(b)));
    out.Add({static_cast<int>(a), static_cast<int>(b)}, c);
  }
  out.a_tail = f.a_tail;
  return out;
}

TorusSeries2D ShiftSecond(const TorusSeries2D& f, int k) {
  TorusSeries2D out;
  for (const auto& [key, c] : f.coeffs()) {
    const long long b = static_cast<long long>(key.second) + k;
    CheckDegree(std::abs(b));
    out.Add({key.first, static_cast<int>(b)}, c);
  }
  out.a_tail = f.a_tail;
  return out;
}

TorusSeries2D DiagonalDifference() {
  TorusSeries2D out;
  out.Add({1, 0}, 1.0);
  out.Add({0, 1}, -1.0);
  return out;
}

TorusSeries2D TransferFromCircle(const TorusSeries& f) {
  TorusSeries2D out;
  for (int k = -f.degree(); k <= f.degree(); ++k) {
    if (f[k] != Complex(0.0, 0.0)) out.Add({k, 1 - k}, f[k]);
  }
  out.a_tail = f.a_tail;
  return out;
}

TransferCheck CheckTransfer(const TorusSeries& f) {
  TransferCheck check;
  check.torus_norm = Subtract(DiagonalDifference(), TransferFromCircle(f)).TruncatedNorm();
  const int degree = std::max(1, f.degree());
  TorusSeries base = TorusSeries::Monomial(degree, 1);
  base.at(0) = -1.0;
  check.circle_norm = Add(base, Scale(f, -1.0)).TruncatedNorm();
  check.difference = std::abs(check.torus_norm - check.circle_norm);
  return check;
}

namespace {

// Window that is 1 on the plateau arc widened by `margin` on each side and
// supported within twice that margin.
TorusSeries PlateauWindow(double margin, int degree) {
  const Arc plateau = PlateauArc();
  const Arc wide{plateau.start - margin, plateau.end + margin};
  const Arc smooth{-margin, margin};
  return Scale(Convolve(ArcIndicator(wide, degree), ArcIndicator(smooth, degree)),
               1.0 / smooth.HaarLength());
}

// Quadratic spline bump of width 3 * width centered at `center`.
TorusSeries Bump(double center, double width, int degree) {
  const TorusSeries core = ArcIndicator({center - width / 2, center + width / 2}, degree);
  const TorusSeries unit = ArcIndicator({-width / 2, width / 2}, degree);
  const double len = width / (2.0 * kPi);
  return Scale(Convolve(Convolve(core, unit), unit), 1.0 / (len * len));
}

TorusSeries TimesZetaMinusOne(const TorusSeries& w) {
  TorusSeries factor = TorusSeries::Monomial(1, 1);
  factor.at(0) = -1.0;
  return Multiply(factor, w);
}

CVector CoefficientVector(const TorusSeries& f) {
  CVector v(2 * f.degree() + 1);
  for (int k = -f.degree(); k <= f.degree(); ++k) v(k + f.degree()) = f[k];
  return v;
}

WindowCandidate FitWindow(double margin, double width, int budget, int degree) {
  const TorusSeries base = PlateauWindow(margin, degree);
  std::vector<TorusSeries> bumps;
  const double first = kPi / 5.0 + 1.5 * width;
  const double last = 2.0 * kPi - kPi / 5.0 - 1.5 * width;
  for (double c = first; c <= last + 1e-9; c += width) bumps.push_back(Bump(c, width, degree));

  const CVector v = CoefficientVector(TimesZetaMinusOne(base));
  CMatrix m(v.size(), static_cast<Eigen::Index>(bumps.size()));
  RVector bump_tail(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    m.col(j) = CoefficientVector(TimesZetaMinusOne(bumps[static_cast<std::size_t>(j)]));
    bump_tail(j) = bumps[static_cast<std::size_t>(j)].a_tail;
  }

  // Iteratively reweighted least squares for min ||v + m c||_1.
  CVector c = CVector::Zero(m.cols());
  CVector best_c = c;
  double best = kInf;
  for (int it = 0; it < budget; ++it) {
    const CVector r = v + m * c;
    const double value = r.cwiseAbs().sum() + 2.0 * (base.a_tail + c.cwiseAbs().dot(bump_tail));
    if (value < best) {
      best = value;
      best_c = c;
    }
    const RVector weights = r.cwiseAbs().cwiseMax(1e-10).cwiseInverse();
    const CMatrix weighted = weights.asDiagonal() * m;
    const CMatrix normal = m.adjoint() * weighted;
    c = normal.ldlt().solve(-(weighted.adjoint() * v));
  }

  // Rebuild the window with the library operations so the bound carries
  // every tail term.
  TorusSeries w = base;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    w = Add(w, Scale(bumps[static_cast<std::size_t>(j)], best_c(j)));
  }
  return {margin, width, TimesZetaMinusOne(w).NormUpper()};
}

}  // namespace

IdealDistanceReport IdealDistanceUpper(int budget, int degree) {
  if (budget < 1) Fail(ErrorCode::kInvalidArgument, "budget must be positive");
  IdealDistanceReport report;
  report.degree = degree;
  report.bound = 2.0;  // w = 1
  report.candidates.push_back({0.0, 0.0, 2.0});
  const std::pair<double, double> family[] = {{0.1, 0.1}, {0.15, 0.1}, {0.15, 0.15}, {0.2, 0.15}};
  for (const auto& [margin, width] : family) {
    const WindowCandidate cand = FitWindow(margin, width, budget, degree);
    report.candidates.push_back(cand);
    report.bound = std::min(report.bound, cand.bound);
  }
  return report;
}

double SinTenth() { return (std::sqrt(5.0) - 1.0) / 4.0; }

double Kappa() {
  const double s = SinTenth();
  return 60.0 * std::sqrt(27.0) * (1.0 + s) / (1.0 - 2.0 * s);
}

}  // namespace zpd
