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

// Truncated Fourier series on the circle and the 2-torus.
//
// A series keeps its coefficients for |k| <= degree together with rigorous
// bounds on what was dropped:
//   a_tail    bound on sum_{|k|>N} |c(k)|   (the A-norm of the remainder)
//   l2sq_tail bound on sum_{|k|>N} |c(k)|^2
//   sup_tail  bound on sup_{|k|>N} |c(k)|
// Any of them may be +infinity when nothing better is known. Arc indicators
// have an infinite a_tail; products of two of them do not.

#ifndef ZPD_TORUS_HPP_
#define ZPD_TORUS_HPP_

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "zpd/types.hpp"

namespace zpd {

// The arc {e^{it} : start < t <= end}, end - start in (0, 2 pi].
struct Arc {
  double start = 0.0;
  double end = 0.0;
  double HaarLength() const;
};

class TorusSeries {
 public:
  TorusSeries() = default;
  // All coefficients zero, no tail.
  explicit TorusSeries(int degree);

  int degree() const { return degree_; }
  Complex operator[](int k) const;
  Complex& at(int k);

  double a_tail = 0.0;
  double l2sq_tail = 0.0;
  double sup_tail = 0.0;

  // Sum of |c(k)| over |k| <= degree.
  double TruncatedNorm() const;
  // TruncatedNorm() + a_tail.
  double NormUpper() const;
  // Truncated sum evaluated at e^{i theta}.
  Complex Evaluate(double theta) const;

  // Series of the constant 1 and of z^power.
  static TorusSeries Monomial(int degree, int power, Complex value = 1.0);

 private:
  int degree_ = 0;
  std::vector<Complex> coeffs_;  // index k + degree
};

TorusSeries ArcIndicator(const Arc& arc, int degree);
// Convolution on the circle: coefficientwise product.
TorusSeries Convolve(const TorusSeries& f, const TorusSeries& g);
// Pointwise product: coefficient convolution, degree adds up.
TorusSeries Multiply(const TorusSeries& f, const TorusSeries& g);
TorusSeries Add(const TorusSeries& f, const TorusSeries& g);
TorusSeries Scale(const TorusSeries& f, Complex s);
// (delta_alpha * f)(z) = f(alpha^{-1} z); |alpha| must be 1.
TorusSeries Rotate(const TorusSeries& f, Complex alpha);
// f(z^j), j != 0.
TorusSeries DilateCircle(const TorusSeries& f, int j);

// The arcs and windows of the partition-of-unity construction. The step
// point is e^{i pi/15}; the windows are 30 * chi_A * chi_U and
// 30 * chi_B * chi_U.
Arc PlateauArc();   // [-pi/5, pi/5]
Arc StepArc();      // (0, pi/15]
Arc ComplementArc();  // (2 pi/15, 29 pi/15]
Arc SmoothingArc();   // (-pi/30, pi/30)
Complex StepPoint();
TorusSeries SmallWindow(int degree);
TorusSeries LargeWindow(int degree);

struct PartitionCheck {
  int shift = 0;
  // Max coefficient deviation of the 30-term sum from 1.
  double unity_residual = 0.0;
  double unity_tail = 0.0;
  // Max coefficient deviation of the 27-term sum from the rotated large
  // window.
  double window_residual = 0.0;
  double window_tail = 0.0;
  bool passed = false;
};

struct PartitionReport {
  int degree = 0;
  double small_window_norm = 0.0;  // with tail
  double large_window_norm = 0.0;  // with tail
  bool small_window_ok = false;    // <= 1
  bool large_window_ok = false;    // <= sqrt(27)
  std::vector<PartitionCheck> checks;
  bool passed = false;
};

PartitionReport VerifyPartitions(int degree, const std::vector<int>& shifts = {0, 5, 17});

// Arcs with endpoints in rational multiples of pi: (num_start/den, num_end/den] * pi.
struct RationalArc {
  std::int64_t num_start = 0;
  std::int64_t num_end = 0;
  std::int64_t den = 1;
};

RationalArc MinkowskiSum(const RationalArc& x, const RationalArc& y);
RationalArc Shift(const RationalArc& x, std::int64_t num, std::int64_t den);
bool InteriorsDisjoint(const RationalArc& x, const RationalArc& y);

struct DisjointnessReport {
  bool supports_disjoint = false;  // supp(small) and supp(large)
  bool shifted_disjoint = false;   // all 30 rotated pairs
  double sampled_max_product = 0.0;
  int samples = 0;
  bool passed = false;
};

DisjointnessReport DisjointSupportCheck(int degree, int samples = 10000);

class TorusSeries2D {
 public:
  using Key = std::pair<int, int>;

  Complex operator[](const Key& k) const;
  void Add(const Key& k, Complex v);
  const std::map<Key, Complex>& coeffs() const { return coeffs_; }

  double a_tail = 0.0;
  double TruncatedNorm() const;
  double NormUpper() const { return TruncatedNorm() + a_tail; }
  // Largest |frequency| in either variable.
  int Degree() const;

 private:
  std::map<Key, Complex> coeffs_;
};

TorusSeries2D Tensor(const TorusSeries& f, const TorusSeries& g);
TorusSeries2D Subtract(const TorusSeries2D& f, const TorusSeries2D& g);
// Subtracts from each antidiagonal j + k = m its mean, which lands in the
// kernel of DeltaMap.
TorusSeries2D ProjectToDiagonalKernel(const TorusSeries2D& f);
// F(z, z).
TorusSeries DeltaMap(const TorusSeries2D& f);
// F(z^j, w^j), j != 0.
TorusSeries2D DilateTorus(const TorusSeries2D& f, int j);
// F(z, w) w^k.
TorusSeries2D ShiftSecond(const TorusSeries2D& f, int k);
// zeta (x) 1 - 1 (x) zeta.
TorusSeries2D DiagonalDifference();

// F(z, w) = f(z w^{-1}) w.
TorusSeries2D TransferFromCircle(const TorusSeries& f);

struct TransferCheck {
  double torus_norm = 0.0;   // ||zeta(x)1 - 1(x)zeta - F||
  double circle_norm = 0.0;  // ||zeta - 1 - f||
  double difference = 0.0;
};

TransferCheck CheckTransfer(const TorusSeries& f);

// Upper bound on the A-norm distance from zeta - 1 to the functions that
// vanish on the plateau arc, via windows w = 1 on that arc:
// ||zeta - 1 - (zeta - 1)(1 - w)|| = ||(zeta - 1) w||.
struct WindowCandidate {
  double margin = 0.0;  // plateau overshoot
  double bump = 0.0;    // bump width outside the plateau
  double bound = 0.0;   // includes tails
};

struct IdealDistanceReport {
  double bound = 2.0;
  std::vector<WindowCandidate> candidates;
  int degree = 0;
};

// budget caps the number of reweighting passes per candidate.
IdealDistanceReport IdealDistanceUpper(int budget = 80, int degree = 4096);

// 60 sqrt(27) (1 + s) / (1 - 2 s), s = (sqrt 5 - 1) / 4.
double SinTenth();
double Kappa();

}  // namespace zpd

#endif  // ZPD_TORUS_HPP_
