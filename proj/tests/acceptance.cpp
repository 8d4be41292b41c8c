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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "zpd/report.hpp"
#include "zpd/seminorms.hpp"
#include "zpd/spanning.hpp"
#include "zpd/torus.hpp"

namespace {

using namespace zpd;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Outcome ProductInequalities() {
  Outcome out;
  const auto start = Clock::now();
  int checked = 0;
  for (std::size_t m : {2u, 3u, 4u, 6u}) {
    const auto alg = GroupAlgebra(CyclicGroupTable(m));
    int failures = 0;
    for (int i = 0; i < 500; ++i) {
      const std::uint64_t seed = DeriveSeed(1000 + m, i);
      SearchOptions options;
      options.seed = seed;
      if (m == 6) {
        options.use_oracle = false;
        options.restarts = 6;
      }
      const auto suite = ComputeSuite(RandomForm(m, seed), alg, options);
      if (m <= 4 && suite.zp.method != "character-splitting-oracle") ++failures;
      for (const Verdict& v : VerifyProductInequalities(suite, alg, 1e-9)) {
        if (!v.evaluated || !v.passed) ++failures;
      }
      ++checked;
    }
    out.Require(failures == 0, "Z" + std::to_string(m) + ": " + std::to_string(failures) +
                                   " violations");
  }
  const double secs = Seconds(start);
  out.Require(secs <= 120.0, Fmt("runtime %.1f s > 120 s", secs));
  if (out.passed) out.detail = std::to_string(checked) + Fmt(" forms, %.1f s", secs);
  return out;
}

Outcome WorkedWitness() {
  Outcome out;
  const auto alg = GroupAlgebra(CyclicGroupTable(2));
  CMatrix p = CMatrix::Zero(2, 2);
  p(0, 1) = 1.0;
  const auto suite = ComputeSuite(BilinearForm(p), alg);
  out.Require(std::abs(suite.b.value - 1.0) <= 1e-9, Fmt("b = %.17g", suite.b.value));
  out.Require(std::abs(suite.zp.value - 0.25) <= 1e-9, Fmt("zp = %.17g", suite.zp.value));
  out.Require(std::abs(suite.dist.value - 0.5) <= 1e-9, Fmt("dist = %.17g", suite.dist.value));
  const CVector& xi = suite.dist.minimizer->coeffs;
  out.Require(std::abs(xi(0)) <= 1e-9 && std::abs(xi(1) - 0.5) <= 1e-9,
              Fmt("xi_min = (%.17g, %.17g)", xi(0).real(), xi(1).real()));
  if (out.passed) out.detail = "b = 1, zp = 0.25, dist = 0.5, xi_min = (0, 0.5)";
  return out;
}

Outcome FiberCorrectness() {
  Outcome out;
  const auto alg = GroupAlgebra(CyclicGroupTable(3));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto phi = RandomForm(3, DeriveSeed(3, i));
    const double fiber = DistanceFiberDisks(phi, alg).value;
    const double reference = DistanceMinimax(phi, alg).value;
    worst = std::max(worst, std::abs(fiber - reference));
  }
  out.Require(worst <= 1e-9, Fmt("max |fiber - minimax| = %.3g", worst));
  if (out.passed) out.detail = Fmt("100 forms, max |fiber - minimax| = %.3g", worst);
  return out;
}

Outcome BetaSearchCriterion() {
  Outcome out;
  const auto z2 = BetaSearch(GroupAlgebra(CyclicGroupTable(2)), 8, 1);
  out.Require(z2.certified, "Z2 ratio not certified");
  out.Require(z2.ratio >= 4.0 - 1e-6, Fmt("Z2 ratio %.17g < 4", z2.ratio));
  double largest = z2.ratio;
  for (std::size_t m : {3u, 4u}) {
    largest = std::max(largest, BetaSearch(GroupAlgebra(CyclicGroupTable(m)), 8, 1).ratio);
  }
  out.Require(largest <= Kappa(), Fmt("ratio %.6g exceeds kappa", largest));
  if (out.passed) out.detail = Fmt("Z2 ratio %.9g certified, max ratio %.6g <= kappa", z2.ratio, largest);
  return out;
}

Outcome TorusConstructions(const nlohmann::json& torus, double secs) {
  Outcome out;
  const auto& w = torus["windows"];
  const double small = w["small_norm_upper"].get<double>();
  const double large = w["large_norm_upper"].get<double>();
  // The first window has norm exactly 1; the slack covers summation rounding.
  out.Require(small <= 1.0 + 1e-12, Fmt("||small window|| = %.17g", small));
  out.Require(large <= std::sqrt(27.0), Fmt("||large window|| = %.17g", large));
  double residual = 0.0;
  for (const auto& c : torus["partitions"]) {
    residual = std::max({residual, c["unity_residual"].get<double>(),
                         c["window_residual"].get<double>()});
  }
  out.Require(residual <= 1e-10, Fmt("partition residual %.3g", residual));
  const auto& d = torus["disjointness"];
  out.Require(d["supports_disjoint"].get<bool>() && d["shifted_disjoint"].get<bool>(),
              "supports not disjoint");
  const double transfer = torus["transfer"]["max_difference"].get<double>();
  out.Require(transfer <= 1e-14, Fmt("transfer difference %.3g", transfer));
  const double kernel = torus["kernel_preservation"]["max_residual"].get<double>();
  out.Require(kernel <= 1e-14, Fmt("kernel residual %.3g", kernel));
  out.Require(secs <= 60.0, Fmt("runtime %.1f s > 60 s", secs));
  if (out.passed) {
    out.detail = Fmt("||small|| = %.17g, ||large|| = %.6g", small, large) +
                 Fmt(", partition residual %.3g, %.1f s", residual, secs);
  }
  return out;
}

Outcome Constants(const nlohmann::json& torus) {
  Outcome out;
  const double kappa = Kappa();
  out.Require(std::abs(kappa - 1068.46) <= 0.01,
              Fmt("kappa = %.10g, outside 1068.46 +- 0.01", kappa));
  out.Require(SinTenth() == (std::sqrt(5.0) - 1.0) / 4.0 &&
                  std::abs(SinTenth() - std::sin(M_PI / 10.0)) <= 1e-16,
              "sin(pi/10) identity");
  const double ideal = torus["ideal_distance"]["bound"].get<double>();
  out.Require(ideal <= 0.70, Fmt("ideal distance bound %.6g > 0.70", ideal));
  if (out.passed) {
    out.detail = Fmt("kappa = %.10g, ideal distance bound %.6g", kappa, ideal);
  } else {
    out.detail += Fmt(" (ideal distance bound %.6g)", ideal);
  }
  return out;
}

Outcome SpanningSuite() {
  Outcome out;
  const std::size_t expected_order[] = {0, 0, 16, 54};
  for (std::size_t n : {2u, 3u}) {
    const auto sys = ClockShiftGroup(n);
    const auto again = ClockShiftGroup(n);
    out.Require(sys.span_rank == n * n, "span rank");
    out.Require(std::abs(sys.bound - 1.0) <= 1e-12, "bound");
    out.Require(sys.order() == expected_order[n] && again.order() == sys.order(), "group order");
    bool same = true;
    for (std::size_t i = 0; i < sys.order() && i < again.order(); ++i) {
      same = same && sys.elements[i] == again.elements[i];
    }
    out.Require(same, "closure not deterministic");
    const auto d = ApproximateDiagonal(sys);
    const double unit = (ProductMap(d) - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    out.Require(unit <= 1e-12, Fmt("|pi(D) - I| = %.3g", unit));
    Rng rng(77 + n);
    double bimodule = 0.0;
    for (int i = 0; i < 20; ++i) {
      const CMatrix s = ToMatrix(rng.ComplexGaussianVector(n * n), n);
      bimodule = std::max(bimodule,
                          (LeftAction(s, d).coeffs - RightAction(d, s).coeffs).cwiseAbs().maxCoeff());
    }
    out.Require(bimodule <= 1e-12, Fmt("|S.D - D.S| = %.3g", bimodule));
    const auto alg = MatrixAlgebra(n);
    double fixed = 0.0;
    for (int i = 0; i < 50; ++i) {
      const LinearFunctional xi0(rng.ComplexGaussianVector(n * n));
      const auto xi = XiFromDiagonal(ComposeWithProduct(alg, xi0), sys);
      fixed = std::max(fixed, (xi.coeffs - xi0.coeffs).cwiseAbs().maxCoeff());
    }
    out.Require(fixed <= 1e-12, Fmt("|xi - xi0| = %.3g", fixed));
  }
  if (out.passed) out.detail = "n = 2: order 16, n = 3: order 54, ranks n^2, C = 1";
  return out;
}

Outcome ZpdLinear() {
  Outcome out;
  for (std::size_t n : {2u, 3u}) {
    const auto rep = ZpdLinearCheck(MatrixAlgebra(n), 20, 1);
    out.Require(rep.annihilator_dim == n * n && rep.is_zpd,
                "M" + std::to_string(n) + " annihilator dim " + std::to_string(rep.annihilator_dim));
  }
  for (std::size_t m : {2u, 3u, 4u}) {
    const auto rep = ZpdLinearCheck(GroupAlgebra(CyclicGroupTable(m)), 20, 1);
    out.Require(rep.annihilator_dim == m && rep.is_zpd,
                "Z" + std::to_string(m) + " annihilator dim " + std::to_string(rep.annihilator_dim));
  }
  if (out.passed) out.detail = "annihilator dims M2 4, M3 9, Z2 2, Z3 3, Z4 4";
  return out;
}

Outcome CStarSanity() {
  Outcome out;
  const auto alg = MatrixAlgebra(2);
  int inconsistencies = 0, literal_flags = 0;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t seed = DeriveSeed(9, i);
    SearchOptions options;
    options.seed = seed;
    options.restarts = 10;
    const auto suite = ComputeSuite(RandomForm(4, seed), alg, options);
    const double dist_upper = suite.dist.value;
    const double zp_lower = suite.zp.value, b_lower = suite.b.value;
    if (zp_lower > dist_upper + 1e-6) ++inconsistencies;
    if (b_lower / 2.0 > dist_upper + 1e-6) ++inconsistencies;
    if (std::max(zp_lower, b_lower / 2.0) > 8.0 * dist_upper + 1e-6) ++inconsistencies;
    if (zp_lower > dist_upper / 8.0 + 1e-6) ++literal_flags;
  }
  out.Require(inconsistencies == 0, std::to_string(inconsistencies) + " optimizer inconsistencies");
  out.detail += (out.detail.empty() ? "" : "; ") + std::string("100 forms, ") +
                std::to_string(inconsistencies) + " inconsistencies, zp_lower > dist_upper/8 on " +
                std::to_string(literal_flags) + " (informational)";
  return out;
}

}  // namespace

int main() {
  std::vector<Outcome> results;
  results.push_back(ProductInequalities());
  results.push_back(WorkedWitness());
  results.push_back(FiberCorrectness());
  results.push_back(BetaSearchCriterion());
  const auto start = Clock::now();
  const auto torus = nlohmann::json::parse(TorusVerifyCommand(4096, 1, false).json);
  const double torus_secs = Seconds(start);
  results.push_back(TorusConstructions(torus, torus_secs));
  results.push_back(Constants(torus));
  results.push_back(SpanningSuite());
  results.push_back(ZpdLinear());
  results.push_back(CStarSanity());

  int failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::printf("criterion %zu: %s %s\n", i + 1, results[i].passed ? "PASS" : "FAIL",
                results[i].detail.c_str());
    if (!results[i].passed) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
