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

// Finite matrix groups whose linear span is the full matrix algebra, the
// representation of l1(G) they induce, and the averaged diagonal tensor.
//
// Matrices are flattened row-major, matching MatrixAlgebra's basis.

#ifndef ZPD_SPANNING_HPP_
#define ZPD_SPANNING_HPP_

#include <cstdint>
#include <vector>

#include "zpd/algebra.hpp"
#include "zpd/seminorms.hpp"

namespace zpd {

struct SpanningGroupSystem {
  std::size_t side = 0;
  std::vector<CMatrix> elements;
  GroupTable table;
  // Largest operator norm over the elements.
  double bound = 0.0;
  std::size_t span_rank = 0;

  std::size_t order() const { return elements.size(); }
};

// Builds the multiplication table of a set of invertible matrices closed
// under products. Throws kConstruction if the set is not a group.
SpanningGroupSystem MakeSpanningSystem(std::vector<CMatrix> elements);

// Closure of the clock, shift and phase exp(i pi / n) generators.
SpanningGroupSystem ClockShiftGroup(std::size_t n, std::size_t cap = 100000);

// sum_t f(t) theta(t), with f indexed like sys.elements.
CMatrix RepresentationOf(const CVector& f, const SpanningGroupSystem& sys);

// coeffs(p, q) is the coefficient of E_p (x) E_q.
struct DiagonalTensor {
  std::size_t side = 0;
  CMatrix coeffs;
};

// (1/|G|) sum_t theta(t) (x) theta(t^{-1}).
DiagonalTensor ApproximateDiagonal(const SpanningGroupSystem& sys);
// Product map applied to the tensor.
CMatrix ProductMap(const DiagonalTensor& d);
// S (x) 1 and 1 (x) S actions: (a (x) b) -> S a (x) b, a (x) b S.
DiagonalTensor LeftAction(const CMatrix& s, const DiagonalTensor& d);
DiagonalTensor RightAction(const DiagonalTensor& d, const CMatrix& s);

// xi(T) = (1/|G|) sum_t phi(theta(t), theta(t^{-1}) T).
LinearFunctional XiFromDiagonal(const BilinearForm& phi, const SpanningGroupSystem& sys);

// |phi(S theta(t), theta(t^{-1}) T) - phi(S, T)|.
double AveragingDefect(const BilinearForm& phi, const SpanningGroupSystem& sys, const CMatrix& s,
                       const CMatrix& t_matrix, std::size_t t);

struct SpanningReport {
  std::size_t side = 0;
  std::size_t order = 0;
  std::size_t span_rank = 0;
  double bound = 0.0;
  double homomorphism_residual = 0.0;  // max |Phi(f*g) - Phi(f) Phi(g)|
  double norm_ratio = 0.0;             // max ||Phi(f)|| / ||f||_1
  double product_residual = 0.0;       // max |pi(D) - I|
  double bimodule_residual = 0.0;      // max |S.D - D.S| coefficientwise
  double projection_residual = 0.0;    // max |xi - xi0| for phi = xi0 o pi
  double idempotence_residual = 0.0;
  double defect_on_products = 0.0;     // averaging defect for phi = xi o pi
  bool passed = false;
};

SpanningReport AnalyzeClockShift(std::size_t n, int samples, std::uint64_t seed);

}  // namespace zpd

#endif  // ZPD_SPANNING_HPP_
