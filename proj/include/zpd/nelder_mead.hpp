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

// Derivative-free local search used by the outer loops of the seminorm
// searches.

#ifndef ZPD_NELDER_MEAD_HPP_
#define ZPD_NELDER_MEAD_HPP_

#include <functional>

#include "zpd/types.hpp"

namespace zpd {

struct NelderMeadResult {
  RVector x;
  double value = 0.0;
  int evaluations = 0;
};

// Minimizes f from x0 with initial simplex edge `step`. Stops when the
// spread of simplex values falls below f_tol or after max_evals.
NelderMeadResult NelderMead(const std::function<double(const RVector&)>& f, const RVector& x0,
                            double step, double f_tol, int max_evals);

}  // namespace zpd

#endif  // ZPD_NELDER_MEAD_HPP_
