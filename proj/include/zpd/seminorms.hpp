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

// Seminorms of bilinear functionals on a finite-dimensional Banach algebra.
//
// A bilinear form is stored by its values on basis pairs, so
// phi(a, b) = a^T Phi b. Every quantity is returned as a certificate that
// carries the witness attaining the reported value, which side of the true
// value it lies on, and the method used.

#ifndef ZPD_SEMINORMS_HPP_
#define ZPD_SEMINORMS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zpd/algebra.hpp"

namespace zpd {

struct BilinearForm {
  CMatrix values;

  BilinearForm() = default;
  explicit BilinearForm(CMatrix v) : values(std::move(v)) {}

  std::size_t dim() const { return static_cast<std::size_t>(values.rows()); }
  Complex operator()(const CVector& a, const CVector& b) const {
    return (a.transpose() * values * b)(0, 0);
  }
};

struct LinearFunctional {
  CVector coeffs;

  LinearFunctional() = default;
  explicit LinearFunctional(CVector c) : coeffs(std::move(c)) {}

  Complex operator()(const CVector& a) const { return (coeffs.array() * a.array()).sum(); }
};

// The form (a, b) -> xi(a b).
BilinearForm ComposeWithProduct(const FiniteBanachAlgebra& alg, const LinearFunctional& xi);

// Throws kDimensionMismatch unless phi is square of the algebra's dimension.
void RequireForm(const FiniteBanachAlgebra& alg, const BilinearForm& phi);

enum class SeminormKind { kNorm, kB, kZp, kDist };

enum class BoundSide {
  kExact,
  kLower,  // value <= true value
  kUpper,  // value >= true value
};

const char* ToString(SeminormKind kind);
const char* ToString(BoundSide side);

struct SeminormCertificate {
  SeminormKind kind = SeminormKind::kNorm;
  double value = 0.0;
  // norm and zp: (a, b); b: (a, b, c); dist: empty, see minimizer.
  std::vector<CVector> witness;
  std::optional<LinearFunctional> minimizer;
  bool is_exact = false;
  BoundSide bound = BoundSide::kLower;
  std::string method;
  double tolerance = 0.0;
  // For dist certificates: a value known to lie below the true distance.
  // Equal to value on exact paths.
  double lower_bound = 0.0;
  std::uint64_t seed = 0;
  int restarts = 0;
};

struct SearchOptions {
  std::uint64_t seed = 1;
  int restarts = 200;
  double tolerance = 1e-9;
  // zp on small abelian group algebras uses the character-splitting oracle
  // unless this is false.
  bool use_oracle = true;
};

SeminormCertificate BilinearNorm(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                                 const SearchOptions& options = {});

SeminormCertificate BSeminorm(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                              const SearchOptions& options = {});

// Largest group order handled by the exact zp oracle.
inline constexpr std::size_t kZpOracleMaxOrder = 6;

bool ZpOracleAvailable(const FiniteBanachAlgebra& alg);

SeminormCertificate ZpSeminorm(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                               const SearchOptions& options = {});

// Individual zp routes, exposed for cross-checking.
SeminormCertificate ZpCharacterOracle(const BilinearForm& phi, const FiniteBanachAlgebra& alg);
SeminormCertificate ZpAlternatingSearch(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                                        const SearchOptions& options);

SeminormCertificate DistanceToProducts(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                                       const SearchOptions& options = {});

// Individual dist routes.
SeminormCertificate DistanceFiberDisks(const BilinearForm& phi, const FiniteBanachAlgebra& alg);
SeminormCertificate DistanceMinimax(const BilinearForm& phi, const FiniteBanachAlgebra& alg);
SeminormCertificate DistanceCuttingPlane(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                                         const SearchOptions& options);

// Characters of an abelian group algebra as columns: chars(g, k) = chi_k(g).
CMatrix GroupCharacters(const FiniteBanachAlgebra& alg);

// xi(a) = phi(1, a). Throws kInvalidArgument for non-unital algebras.
LinearFunctional XiFromIdentity(const BilinearForm& phi, const FiniteBanachAlgebra& alg);

struct Verdict {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = true;
  // False when the available bounds cannot decide the inequality; such
  // verdicts never fail.
  bool evaluated = true;
  std::vector<std::string> witnesses;
  std::string note;
};

struct SeminormSuite {
  SeminormCertificate norm;
  SeminormCertificate b;
  SeminormCertificate zp;
  SeminormCertificate dist;
};

SeminormSuite ComputeSuite(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                           const SearchOptions& options = {});

// Checks b/2 <= dist <= M b and zp <= dist using only the directions that
// the certificates' bound sides support.
std::vector<Verdict> VerifyProductInequalities(const SeminormSuite& suite,
                                               const FiniteBanachAlgebra& alg, double tol);

// |phi(f * d_t, h) - phi(f, d_t * h)| on a group algebra.
double TranslationCommutator(const BilinearForm& phi, const FiniteBanachAlgebra& alg,
                             const std::string& t, const CVector& f, const CVector& h);

struct CommutatorMaximum {
  double value = 0.0;
  std::size_t t = 0, f = 0, h = 0;  // basis indices attaining it
};

// Supremum of the commutator defect over unit f, h and all t. Bilinear in
// (f, h), so basis elements suffice.
CommutatorMaximum MaxTranslationCommutator(const BilinearForm& phi,
                                           const FiniteBanachAlgebra& alg);

struct BetaReport {
  BilinearForm witness;  // normalized to zp = 1
  SeminormCertificate b;
  SeminormCertificate zp;
  SeminormCertificate dist;
  double ratio = 0.0;        // b / zp
  double alpha_ratio = 0.0;  // dist / zp
  bool certified = false;
  int starts = 0;
};

// Lower estimate of sup b/zp by local ascent from basis forms and random
// starts. budget is the number of random starts.
BetaReport BetaSearch(const FiniteBanachAlgebra& alg, int budget, std::uint64_t seed);

struct ZpdLinearReport {
  std::size_t pairs = 0;
  std::size_t span_dim = 0;        // rank of the zero-product tensor span
  std::size_t annihilator_dim = 0;  // dim^2 - span_dim
  std::size_t product_space_dim = 0;
  bool products_annihilate = false;
  bool is_zpd = false;
  bool degenerate = false;
};

ZpdLinearReport ZpdLinearCheck(const FiniteBanachAlgebra& alg, int samples, std::uint64_t seed);

BilinearForm RandomForm(std::size_t dim, std::uint64_t seed, double scale = 1.0);

}  // namespace zpd

#endif  // ZPD_SEMINORMS_HPP_
