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

// Complex Chebyshev (minimax) solvers.
//
// Two independent routes are provided:
//
//  * MinimalEnclosingDisk: exact incremental (Welzl / move-to-front) smallest
//    disk around a finite set of points in the complex plane. Its center is
//    the Chebyshev center of the set.
//
//  * SolveChebyshev: a log-barrier interior-point method for the weighted
//    linear problem
//
//        minimize_c  max_i |target_i - (basis * c)_i| / weight_i
//
//    over complex c. It also returns a dual witness b with basis^T b = 0 and
//    sum_i weight_i |b_i| = 1, so |target . b| is a lower bound on the
//    optimum. Equivalently, the optimum equals the norm of the functional
//    `target` restricted to {b : basis^T b = 0} under the weighted l1 norm.

#ifndef ZPD_CHEBYSHEV_HPP_
#define ZPD_CHEBYSHEV_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "zpd/types.hpp"

namespace zpd {

struct Disk {
  Complex center{0.0, 0.0};
  double radius = 0.0;
  // Indices (into the input span) of the points on the boundary that
  // determine the disk; at most three.
  std::vector<std::size_t> support;
  // Convex weights expressing the center as a combination of the support
  // points. Same length as support.
  std::vector<double> support_weights;
};

// Points are processed in a seeded shuffled order; the result does not depend
// on the order beyond floating-point rounding.
Disk MinimalEnclosingDisk(std::span<const Complex> points, std::uint64_t shuffle_seed = 0);

// Re-checks a disk: every point within radius (relative slack rel_tol) and
// every support point on the boundary.
bool VerifyDisk(std::span<const Complex> points, const Disk& disk, double rel_tol = 1e-12);

struct ChebyshevSolution {
  CVector coefficients;
  // max_i |r_i| / w_i at `coefficients`; an upper bound on the optimum.
  double value = 0.0;
  // |target . dual_witness|; a lower bound on the optimum.
  double dual_value = 0.0;
  CVector dual_witness;
  int newton_steps = 0;
};

struct ChebyshevOptions {
  double relative_gap = 1e-12;
  int max_newton_steps = 1000;
};

// basis may have zero columns. weights must be positive; an empty weights
// vector means all ones.
ChebyshevSolution SolveChebyshev(const CVector& target, const CMatrix& basis,
                                 const RVector& weights = RVector(),
                                 const ChebyshevOptions& options = {});

}  // namespace zpd

#endif  // ZPD_CHEBYSHEV_HPP_
