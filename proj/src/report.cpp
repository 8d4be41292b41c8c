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

#include "zpd/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "zpd/chebyshev.hpp"
#include "zpd/spanning.hpp"
#include "zpd/torus.hpp"

namespace zpd {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

json ComplexJson(Complex c) { return json::array({c.real(), c.imag()}); }

json VectorJson(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(ComplexJson(v(i)));
  return out;
}

json MatrixJson(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(VectorJson(m.row(i).transpose()));
  return out;
}

// JSON has no infinity; unbounded sides become null.
json Finite(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json CertificateJson(const SeminormCertificate& c) {
  json out{{"kind", ToString(c.kind)},
           {"value", c.value},
           {"bound", ToString(c.bound)},
           {"is_exact", c.is_exact},
           {"method", c.method},
           {"tolerance", c.tolerance},
           {"lower_bound", c.lower_bound},
           {"seed", c.seed},
           {"restarts", c.restarts}};
  json w = json::array();
  for (const CVector& v : c.witness) w.push_back(VectorJson(v));
  out["witness"] = std::move(w);
  out["minimizer"] = c.minimizer ? VectorJson(c.minimizer->coeffs) : json(nullptr);
  return out;
}

json VerdictJson(const Verdict& v) {
  return {{"name", v.name},         {"lhs", Finite(v.lhs)},     {"rhs", Finite(v.rhs)},
          {"passed", v.passed},     {"evaluated", v.evaluated}, {"witnesses", v.witnesses},
          {"note", v.note}};
}

json Envelope(const std::string& command) {
  return {{"schema", kReportSchema}, {"command", command}, {"version", Version()}};
}

double LowerOf(const SeminormCertificate& c) {
  return c.bound == BoundSide::kUpper ? c.lower_bound : c.value;
}

double UpperOf(const SeminormCertificate& c) {
  return c.bound == BoundSide::kLower ? kInf : c.value;
}

Verdict Check(std::string name, double lhs, double rhs, double tol,
              std::vector<std::string> witnesses, std::string note = {}) {
  Verdict v;
  v.name = std::move(name);
  v.lhs = lhs;
  v.rhs = rhs;
  v.witnesses = std::move(witnesses);
  v.note = std::move(note);
  v.evaluated = std::isfinite(lhs) && std::isfinite(rhs);
  v.passed = !v.evaluated || lhs <= rhs + tol;
  if (!v.evaluated) v.note = "not decidable from one-sided bounds";
  return v;
}

double Millis(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

[[noreturn]] void ParseFail(const std::string& what) { Fail(ErrorCode::kParse, what); }

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

json ParseJsonText(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    ParseFail(std::string("malformed JSON: ") + e.what());
  }
}

std::size_t PositiveCount(const std::string& digits, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(digits, &used);
    if (used != digits.size() || v < 0) throw std::invalid_argument(what);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    ParseFail(std::string("bad ") + what + ": '" + digits + "'");
  }
}

GroupTable SymmetricGroupTable(std::size_t k) {
  if (k == 0 || k > 5) Fail(ErrorCode::kInvalidArgument, "symmetric group degree must be 1..5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string l = "p";
    for (int x : q) l += std::to_string(x);
    labels.push_back(l);
  }
  std::vector<std::vector<std::size_t>> mul(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<int> c(k);
      for (std::size_t i = 0; i < k; ++i) c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      mul[a][b] = static_cast<std::size_t>(
          std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return MakeGroupTable(std::move(mul), std::move(labels));
}

std::vector<double> WeightsFrom(const json& j) {
  if (!j.contains("weights")) return {};
  try {
    return j.at("weights").get<std::vector<double>>();
  } catch (const json::exception&) {
    ParseFail("weights must be an array of numbers");
  }
}

AlgebraConfig AlgebraFromJson(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    ParseFail("algebra descriptor needs a string field 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "cyclic") {
      const auto m = j.at("order").get<long long>();
      if (m < 1) Fail(ErrorCode::kInvalidArgument, "cyclic order must be positive");
      json echo{{"kind", "cyclic"}, {"order", m}};
      const auto w = WeightsFrom(j);
      if (!w.empty()) echo["weights"] = w;
      return {GroupAlgebra(CyclicGroupTable(static_cast<std::size_t>(m)), w), echo.dump()};
    }
    if (kind == "symmetric") {
      const auto k = j.at("degree").get<long long>();
      if (k < 1) Fail(ErrorCode::kInvalidArgument, "symmetric degree must be positive");
      return {GroupAlgebra(SymmetricGroupTable(static_cast<std::size_t>(k))),
              json{{"kind", "symmetric"}, {"degree", k}}.dump()};
    }
    if (kind == "matrix") {
      const auto n = j.at("n").get<long long>();
      if (n < 0) Fail(ErrorCode::kInvalidArgument, "invalid dimension");
      return {MatrixAlgebra(static_cast<std::size_t>(n)), json{{"kind", "matrix"}, {"n", n}}.dump()};
    }
    if (kind == "table") {
      const json& rows = j.at("table");
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      std::vector<std::vector<std::size_t>> mul;
      for (const json& row : rows) {
        std::vector<std::size_t> r;
        for (const json& cell : row) {
          if (cell.is_string()) {
            const auto it = std::find(labels.begin(), labels.end(), cell.get<std::string>());
            if (it == labels.end()) ParseFail("unknown label '" + cell.get<std::string>() + "'");
            r.push_back(static_cast<std::size_t>(it - labels.begin()));
          } else {
            const auto v = cell.get<long long>();
            if (v < 0) ParseFail("table entries must be nonnegative");
            r.push_back(static_cast<std::size_t>(v));
          }
        }
        mul.push_back(std::move(r));
      }
      json echo{{"kind", "table"}, {"table", mul}};
      if (!labels.empty()) echo["labels"] = labels;
      const auto w = WeightsFrom(j);
      if (!w.empty()) echo["weights"] = w;
      return {GroupAlgebra(MakeGroupTable(std::move(mul), std::move(labels)), w), echo.dump()};
    }
  } catch (const json::exception& e) {
    ParseFail("algebra descriptor '" + kind + "': " + e.what());
  }
  ParseFail("unknown algebra kind '" + kind + "'");
}

Complex EntryFrom(const json& cell) {
  if (cell.is_number()) return {cell.get<double>(), 0.0};
  if (cell.is_array() && cell.size() == 2 && cell[0].is_number() && cell[1].is_number()) {
    return {cell[0].get<double>(), cell[1].get<double>()};
  }
  ParseFail("form entries must be numbers or [re, im] pairs");
}

std::size_t BasisIndex(const std::string& token, const FiniteBanachAlgebra& alg) {
  const auto& labels = alg.labels();
  const auto it = std::find(labels.begin(), labels.end(), token);
  if (it != labels.end()) return static_cast<std::size_t>(it - labels.begin());
  const std::size_t i = PositiveCount(token, "basis index");
  if (i >= alg.dim()) Fail(ErrorCode::kInvalidArgument, "basis index out of range: " + token);
  return i;
}

std::size_t BasisIndex(const json& j, const FiniteBanachAlgebra& alg) {
  if (j.is_string()) return BasisIndex(j.get<std::string>(), alg);
  if (j.is_number_integer()) return BasisIndex(std::to_string(j.get<long long>()), alg);
  ParseFail("basis reference must be an index or a label");
}

FormConfig RandomFormConfig(const FiniteBanachAlgebra& alg, std::uint64_t seed, double scale) {
  if (!(scale > 0.0)) Fail(ErrorCode::kInvalidArgument, "random scale must be positive");
  return {RandomForm(alg.dim(), seed, scale),
          json{{"random", {{"seed", seed}, {"scale", scale}}}}.dump()};
}

FormConfig UnitFormConfig(const FiniteBanachAlgebra& alg, std::size_t j, std::size_t k) {
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(alg.dim()), static_cast<Eigen::Index>(alg.dim()));
  v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = 1.0;
  return {BilinearForm(v), json{{"unit", {j, k}}}.dump()};
}

FormConfig FormFromJson(const json& j, const FiniteBanachAlgebra& alg) {
  const auto n = static_cast<Eigen::Index>(alg.dim());
  try {
    if (j.is_array()) {
      if (static_cast<Eigen::Index>(j.size()) != n) {
        Fail(ErrorCode::kDimensionMismatch, "form must have " + std::to_string(n) + " rows");
      }
      CMatrix v(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
          Fail(ErrorCode::kDimensionMismatch, "form row " + std::to_string(r) + " must have " +
                                                  std::to_string(n) + " entries");
        }
        for (Eigen::Index c = 0; c < n; ++c) v(r, c) = EntryFrom(row[static_cast<std::size_t>(c)]);
      }
      return {BilinearForm(v), json{{"values", MatrixJson(v)}}.dump()};
    }
    if (j.is_object() && j.contains("values")) return FormFromJson(j.at("values"), alg);
    if (j.is_object() && j.contains("random")) {
      const json& r = j.at("random");
      return RandomFormConfig(alg, r.at("seed").get<std::uint64_t>(), r.value("scale", 1.0));
    }
    if (j.is_object() && j.contains("unit")) {
      const json& u = j.at("unit");
      if (!u.is_array() || u.size() != 2) ParseFail("'unit' needs two basis references");
      return UnitFormConfig(alg, BasisIndex(u[0], alg), BasisIndex(u[1], alg));
    }
    if (j.is_object() && j.contains("product")) {
      const json& p = j.at("product");
      if (!p.is_array() || static_cast<Eigen::Index>(p.size()) != n) {
        Fail(ErrorCode::kDimensionMismatch, "'product' needs one coefficient per basis element");
      }
      CVector xi(n);
      for (Eigen::Index i = 0; i < n; ++i) xi(i) = EntryFrom(p[static_cast<std::size_t>(i)]);
      return {ComposeWithProduct(alg, LinearFunctional(xi)),
              json{{"product", VectorJson(xi)}}.dump()};
    }
  } catch (const json::exception& e) {
    ParseFail(std::string("form descriptor: ") + e.what());
  }
  ParseFail("unrecognized form descriptor");
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

std::string Fmt(double x) {
  if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<Verdict> AllVerdicts(const SeminormSuite& s, const BilinearForm& phi,
                                 const FiniteBanachAlgebra& alg, double tol) {
  std::vector<Verdict> out = VerifyProductInequalities(s, alg, tol);
  const double kappa = Kappa();
  if (alg.group() && alg.has_unit_weights()) {
    const CommutatorMaximum c = MaxTranslationCommutator(phi, alg);
    const auto& labels = alg.labels();
    out.push_back(Check("translation_commutator_le_kappa_zp", c.value, kappa * UpperOf(s.zp), tol,
                        {"t=" + labels[c.t], "f=" + labels[c.f], "h=" + labels[c.h], "zp"}));
    out.push_back(Check("b_le_kappa_zp", LowerOf(s.b), kappa * UpperOf(s.zp), tol, {"b", "zp"}));
  }
  if (alg.matrix_side()) {
    out.push_back(Check("cstar_constant_8", std::max(LowerOf(s.zp), 0.5 * LowerOf(s.b)),
                        8.0 * UpperOf(s.dist), 1e-6, {"zp", "b", "dist"}));
  }
  return out;
}

struct FiberDisk {
  std::vector<Complex> points;
  Disk disk;
};

std::vector<FiberDisk> FiberDisks(const BilinearForm& phi, const FiniteBanachAlgebra& alg) {
  const GroupTable& g = *alg.group();
  std::vector<FiberDisk> out(g.order());
  for (std::size_t s = 0; s < g.order(); ++s) {
    for (std::size_t t = 0; t < g.order(); ++t) {
      out[g.mul[s][t]].points.push_back(
          phi.values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)));
    }
  }
  for (auto& f : out) f.disk = MinimalEnclosingDisk(f.points);
  return out;
}

std::string FiberSvg(const BilinearForm& phi, const FiniteBanachAlgebra& alg) {
  const auto fibers = FiberDisks(phi, alg);
  const int panel = 220, cols = 4;
  const int rows = static_cast<int>((fibers.size() + cols - 1) / cols);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << panel * cols << "\" height=\""
      << panel * rows << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    const FiberDisk& f = fibers[i];
    const double ox = panel * static_cast<double>(i % cols) + panel / 2.0;
    const double oy = panel * static_cast<double>(i / cols) + panel / 2.0;
    const double r = std::max(f.disk.radius, 1e-12);
    const double scale = 0.4 * panel / r;
    auto px = [&](Complex z) { return ox + scale * (z.real() - f.disk.center.real()); };
    auto py = [&](Complex z) { return oy - scale * (z.imag() - f.disk.center.imag()); };
    svg << "<circle cx=\"" << ox << "\" cy=\"" << oy << "\" r=\"" << scale * r
        << "\" fill=\"none\" stroke=\"#36c\"/>\n";
    svg << "<circle cx=\"" << ox << "\" cy=\"" << oy << "\" r=\"2\" fill=\"#c33\"/>\n";
    for (Complex z : f.points) {
      svg << "<circle cx=\"" << px(z) << "\" cy=\"" << py(z) << "\" r=\"3\" fill=\"#333\"/>\n";
    }
    svg << "<text x=\"" << ox - panel / 2.0 + 6 << "\" y=\"" << oy - panel / 2.0 + 14
        << "\">fiber " << alg.labels()[i] << ", radius " << Fmt(f.disk.radius) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string WindowSvg(const TorusSeries& small, const TorusSeries& large) {
  const int width = 720, height = 320, samples = 720;
  const double top = 1.1;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  auto path = [&](const TorusSeries& f, const char* color) {
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (int i = 0; i <= samples; ++i) {
      const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * i / samples;
      const double y = f.Evaluate(theta).real();
      svg << width * static_cast<double>(i) / samples << ","
          << height - 20 - (height - 40) * y / top << " ";
    }
    svg << "\"/>\n";
  };
  path(small, "#c33");
  path(large, "#36c");
  svg << "<text x=\"8\" y=\"14\">small window (red), large window (blue), theta in [-pi, pi]</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

const char* Version() { return "0.1.0"; }

AlgebraConfig ParseAlgebra(const std::string& text) {
  const std::string t = Trim(text);
  if (t.empty()) ParseFail("empty algebra descriptor");
  if (t.front() == '{') return AlgebraFromJson(ParseJsonText(t));
  const auto parts = Split(t, ':');
  if (parts.size() == 2) {
    const std::size_t v = PositiveCount(parts[1], "algebra size");
    if (parts[0] == "cyclic") return AlgebraFromJson({{"kind", "cyclic"}, {"order", v}});
    if (parts[0] == "matrix") return AlgebraFromJson({{"kind", "matrix"}, {"n", v}});
    if (parts[0] == "symmetric") return AlgebraFromJson({{"kind", "symmetric"}, {"degree", v}});
  }
  ParseFail("unrecognized algebra descriptor '" + t + "'");
}

FormConfig ParseForm(const std::string& text, const FiniteBanachAlgebra& alg) {
  const std::string t = Trim(text);
  if (t.empty()) ParseFail("empty form descriptor");
  if (t.front() == '{' || t.front() == '[') return FormFromJson(ParseJsonText(t), alg);
  const auto parts = Split(t, ':');
  if (parts.size() >= 2 && parts[0] == "random" && parts.size() <= 3) {
    std::uint64_t seed = 0;
    try {
      std::size_t used = 0;
      seed = std::stoull(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument("seed");
    } catch (const std::exception&) {
      ParseFail("bad random seed '" + parts[1] + "'");
    }
    double scale = 1.0;
    if (parts.size() == 3) {
      try {
        scale = std::stod(parts[2]);
      } catch (const std::exception&) {
        ParseFail("bad random scale '" + parts[2] + "'");
      }
    }
    return RandomFormConfig(alg, seed, scale);
  }
  if (parts.size() == 2 && parts[0] == "unit") {
    const auto idx = Split(parts[1], ',');
    if (idx.size() != 2) ParseFail("unit form needs two basis references: unit:j,k");
    return UnitFormConfig(alg, BasisIndex(idx[0], alg), BasisIndex(idx[1], alg));
  }
  ParseFail("unrecognized form descriptor '" + t + "'");
}

CommandOutput Analyze(const AlgebraConfig& cfg, const FormConfig& phi,
                      const SearchOptions& options, bool want_svg) {
  const FiniteBanachAlgebra& alg = cfg.algebra;
  RequireForm(alg, phi.form);
  if (!(options.tolerance > 0.0)) Fail(ErrorCode::kInvalidArgument, "tolerance must be positive");
  json report = Envelope("analyze");
  report["config"] = {{"algebra", json::parse(cfg.descriptor)},
                      {"phi", json::parse(phi.source)},
                      {"seed", options.seed},
                      {"restarts", options.restarts},
                      {"tolerance", options.tolerance},
                      {"use_oracle", options.use_oracle}};
  report["algebra"] = {{"dim", alg.dim()},
                       {"labels", alg.labels()},
                       {"approx_id_bound", alg.approx_id_bound()}};

  SeminormSuite suite;
  json timings;
  auto t0 = std::chrono::steady_clock::now();
  suite.norm = BilinearNorm(phi.form, alg, options);
  timings["norm"] = Millis(t0);
  t0 = std::chrono::steady_clock::now();
  suite.b = BSeminorm(phi.form, alg, options);
  timings["b"] = Millis(t0);
  t0 = std::chrono::steady_clock::now();
  suite.zp = ZpSeminorm(phi.form, alg, options);
  timings["zp"] = Millis(t0);
  t0 = std::chrono::steady_clock::now();
  suite.dist = DistanceToProducts(phi.form, alg, options);
  timings["dist"] = Millis(t0);

  report["certificates"] = {{"norm", CertificateJson(suite.norm)},
                            {"b", CertificateJson(suite.b)},
                            {"zp", CertificateJson(suite.zp)},
                            {"dist", CertificateJson(suite.dist)}};
  report["xi_min"] = suite.dist.minimizer ? VectorJson(suite.dist.minimizer->coeffs) : json(nullptr);
  report["xi_from_identity"] =
      alg.identity() ? VectorJson(XiFromIdentity(phi.form, alg).coeffs) : json(nullptr);

  const auto verdicts = AllVerdicts(suite, phi.form, alg, options.tolerance);
  bool all_pass = true;
  json vj = json::array();
  for (const Verdict& v : verdicts) {
    vj.push_back(VerdictJson(v));
    all_pass = all_pass && v.passed;
  }
  report["verdicts"] = std::move(vj);
  report["kappa"] = Kappa();
  report["timings_ms"] = std::move(timings);
  report["all_pass"] = all_pass;

  CommandOutput out;
  out.json = report.dump(2);
  out.exit_code = all_pass ? 0 : 1;
  if (want_svg) {
    if (alg.group() && alg.has_unit_weights()) {
      out.svg = FiberSvg(phi.form, alg);
    } else {
      out.svg =
          "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"40\"><text x=\"8\" "
          "y=\"24\">fiber disks exist only for unit-weight group algebras</text></svg>\n";
    }
  }
  return out;
}

CommandOutput Batch(const AlgebraConfig& cfg, int count, const SearchOptions& options) {
  if (count < 1) Fail(ErrorCode::kInvalidArgument, "count must be at least 1");
  const FiniteBanachAlgebra& alg = cfg.algebra;
  struct Row {
    std::uint64_t seed = 0;
    SeminormSuite suite;
    std::vector<Verdict> verdicts;
  };
  std::vector<Row> rows(static_cast<std::size_t>(count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size() && !failed; i = next++) {
      try {
        Row& r = rows[i];
        r.seed = DeriveSeed(options.seed, i);
        SearchOptions o = options;
        o.seed = r.seed;
        const BilinearForm phi = RandomForm(alg.dim(), r.seed);
        r.suite = ComputeSuite(phi, alg, o);
        r.verdicts = VerifyProductInequalities(r.suite, alg, options.tolerance);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const unsigned threads =
      std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::ostringstream csv;
  csv << "row,seed,norm,b,zp,zp_bound,dist,dist_lower,half_b_le_dist,dist_le_M_b,zp_le_dist,"
         "inequalities_pass\n";
  bool all_pass = true;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    bool pass = true;
    csv << i << ',' << r.seed << ',' << Fmt(r.suite.norm.value) << ',' << Fmt(r.suite.b.value)
        << ',' << Fmt(r.suite.zp.value) << ',' << ToString(r.suite.zp.bound) << ','
        << Fmt(r.suite.dist.value) << ',' << Fmt(r.suite.dist.lower_bound);
    for (const Verdict& v : r.verdicts) {
      csv << ',' << (v.passed ? "true" : "false");
      pass = pass && v.passed;
    }
    csv << ',' << (pass ? "true" : "false") << '\n';
    if (!pass) ++failures;
    all_pass = all_pass && pass;
  }
  json report = Envelope("batch");
  report["config"] = {{"algebra", json::parse(cfg.descriptor)},
                      {"count", count},
                      {"seed", options.seed},
                      {"restarts", options.restarts},
                      {"tolerance", options.tolerance},
                      {"use_oracle", options.use_oracle},
                      {"seed_derivation", "splitmix64: row i uses output i of the stream "
                                          "started at the master seed"}};
  report["rows"] = count;
  report["failures"] = failures;
  report["all_pass"] = all_pass;
  CommandOutput out;
  out.csv = csv.str();
  out.json = report.dump(2);
  out.exit_code = all_pass ? 0 : 1;
  return out;
}

CommandOutput BetaSearchCommand(const AlgebraConfig& cfg, int budget, std::uint64_t seed) {
  if (budget < 0) Fail(ErrorCode::kInvalidArgument, "budget must be nonnegative");
  const auto t0 = std::chrono::steady_clock::now();
  const BetaReport r = BetaSearch(cfg.algebra, budget, seed);
  const double kappa = Kappa();
  const Verdict v = Check("ratio_le_kappa", r.ratio, kappa, 1e-9, {"witness"});
  json report = Envelope("beta-search");
  report["config"] = {{"algebra", json::parse(cfg.descriptor)}, {"budget", budget}, {"seed", seed}};
  report["witness"] = MatrixJson(r.witness.values);
  report["certificates"] = {{"b", CertificateJson(r.b)},
                            {"zp", CertificateJson(r.zp)},
                            {"dist", CertificateJson(r.dist)}};
  report["ratio"] = r.ratio;
  report["alpha_ratio"] = r.alpha_ratio;
  report["certified"] = r.certified;
  report["starts"] = r.starts;
  report["note"] = "ratio is a lower estimate of the optimal constant";
  report["kappa"] = kappa;
  report["verdicts"] = json::array({VerdictJson(v)});
  report["timings_ms"] = {{"total", Millis(t0)}};
  report["all_pass"] = v.passed;
  return {report.dump(2), {}, {}, v.passed ? 0 : 1};
}

CommandOutput TorusVerifyCommand(int degree, std::uint64_t seed, bool want_svg) {
  if (degree < 30) Fail(ErrorCode::kInvalidArgument, "degree must be at least 30");
  const auto t0 = std::chrono::steady_clock::now();
  json report = Envelope("torus-verify");
  report["config"] = {{"degree", degree}, {"seed", seed}};

  const PartitionReport part = VerifyPartitions(degree);
  json checks = json::array();
  for (const PartitionCheck& c : part.checks) {
    checks.push_back({{"shift", c.shift},
                      {"unity_residual", c.unity_residual},
                      {"unity_tail", c.unity_tail},
                      {"window_residual", c.window_residual},
                      {"window_tail", c.window_tail},
                      {"passed", c.passed}});
  }
  report["windows"] = {{"small_norm_upper", part.small_window_norm},
                       {"small_norm_ok", part.small_window_ok},
                       {"large_norm_upper", part.large_window_norm},
                       {"large_norm_limit", std::sqrt(27.0)},
                       {"large_norm_ok", part.large_window_ok}};
  report["partitions"] = std::move(checks);

  const DisjointnessReport disj = DisjointSupportCheck(degree);
  report["disjointness"] = {{"supports_disjoint", disj.supports_disjoint},
                            {"shifted_disjoint", disj.shifted_disjoint},
                            {"sampled_max_product", disj.sampled_max_product},
                            {"samples", disj.samples},
                            {"passed", disj.passed}};

  Rng rng(seed);
  double transfer_worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    TorusSeries f(20);
    for (int k = -20; k <= 20; ++k) f.at(k) = rng.ComplexGaussian();
    transfer_worst = std::max(transfer_worst, CheckTransfer(f).difference);
  }
  double kernel_worst = 0.0;
  const std::pair<int, int> ops[] = {{2, 1}, {3, -1}, {-1, 4}};
  for (int i = 0; i < 10; ++i) {
    // Dyadic entries keep every antidiagonal sum exact, so the sample lies
    // in the kernel without rounding.
    auto dyadic = [&rng] {
      return Complex(std::floor(rng.Uniform(-1024.0, 1024.0)), std::floor(rng.Uniform(-1024.0, 1024.0))) /
             1024.0;
    };
    TorusSeries2D k;
    for (int m = -12; m <= 12; ++m) {
      Complex sum(0.0, 0.0);
      const int lo = std::max(-6, m - 6), hi = std::min(6, m + 6);
      for (int a = lo; a < hi; ++a) {
        const Complex c = dyadic();
        k.Add({a, m - a}, c);
        sum += c;
      }
      k.Add({hi, m - hi}, -sum);
    }
    for (const auto& [j, shift] : ops) {
      const TorusSeries image = DeltaMap(ShiftSecond(DilateTorus(k, j), shift));
      kernel_worst = std::max(kernel_worst, image.TruncatedNorm());
    }
  }
  report["transfer"] = {{"samples", 50}, {"max_difference", transfer_worst}};
  report["kernel_preservation"] = {{"samples", 10}, {"max_residual", kernel_worst}};

  const IdealDistanceReport ideal = IdealDistanceUpper(80, degree);
  json cands = json::array();
  for (const WindowCandidate& c : ideal.candidates) {
    cands.push_back({{"margin", c.margin}, {"bump", c.bump}, {"bound", c.bound}});
  }
  report["ideal_distance"] = {{"bound", ideal.bound},
                              {"candidates", std::move(cands)},
                              {"reference", 2.0 * SinTenth()},
                              {"target", 0.70}};
  const double kappa = Kappa();
  report["constants"] = {{"sin_tenth", SinTenth()},
                         {"ratio", (1.0 + SinTenth()) / (1.0 - 2.0 * SinTenth())},
                         {"kappa", kappa}};

  const bool pass = part.passed && disj.passed && transfer_worst <= 1e-14 &&
                    kernel_worst <= 1e-14 && ideal.bound <= 0.70;
  report["timings_ms"] = {{"total", Millis(t0)}};
  report["all_pass"] = pass;
  CommandOutput out{report.dump(2), {}, {}, pass ? 0 : 1};
  if (want_svg) out.svg = WindowSvg(SmallWindow(std::min(degree, 1024)), LargeWindow(std::min(degree, 1024)));
  return out;
}

CommandOutput PauliCommand(std::size_t n, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const SpanningReport r = AnalyzeClockShift(n, 50, seed);
  json report = Envelope("pauli");
  report["config"] = {{"n", n}, {"seed", seed}};
  report["group_order"] = r.order;
  report["span_rank"] = r.span_rank;
  report["bound_c"] = r.bound;
  report["residuals"] = {{"homomorphism", r.homomorphism_residual},
                         {"norm_ratio", r.norm_ratio},
                         {"diagonal_product", r.product_residual},
                         {"diagonal_bimodule", r.bimodule_residual},
                         {"xi_projection", r.projection_residual},
                         {"xi_idempotence", r.idempotence_residual},
                         {"averaging_defect_on_products", r.defect_on_products}};

  // Report-only comparison on one random form.
  const SpanningGroupSystem sys = ClockShiftGroup(n);
  const FiniteBanachAlgebra mat = MatrixAlgebra(n);
  const BilinearForm phi = RandomForm(n * n, seed);
  const LinearFunctional xi = XiFromDiagonal(phi, sys);
  const CMatrix diff = phi.values - ComposeWithProduct(mat, xi).values;
  SearchOptions opts;
  opts.seed = seed;
  opts.restarts = 16;
  const SeminormCertificate zp = ZpSeminorm(phi, mat, opts);
  const SeminormCertificate gap = BilinearNorm(BilinearForm(diff), mat, opts);
  report["comparison"] = {
      {"phi_minus_xi_pi_norm_estimate", gap.value},
      {"phi_minus_xi_pi_norm_upper", diff.cwiseAbs().sum()},
      {"zp_lower", LowerOf(zp)},
      {"kappa_c2_zp_lower", Kappa() * r.bound * r.bound * LowerOf(zp)},
      {"note", "report only; no inequality is asserted"}};
  report["timings_ms"] = {{"total", Millis(t0)}};
  report["all_pass"] = r.passed;
  return {report.dump(2), {}, {}, r.passed ? 0 : 1};
}

CommandOutput ZpdCheckCommand(const AlgebraConfig& cfg, int samples, std::uint64_t seed) {
  if (samples < 1) Fail(ErrorCode::kInvalidArgument, "samples must be positive");
  const ZpdLinearReport r = ZpdLinearCheck(cfg.algebra, samples, seed);
  json report = Envelope("zpd-check");
  report["config"] = {{"algebra", json::parse(cfg.descriptor)}, {"samples", samples}, {"seed", seed}};
  report["pairs"] = r.pairs;
  report["span_dim"] = r.span_dim;
  report["annihilator_dim"] = r.annihilator_dim;
  report["product_space_dim"] = r.product_space_dim;
  report["products_annihilate"] = r.products_annihilate;
  report["degenerate"] = r.degenerate;
  report["is_zpd"] = r.is_zpd;
  report["all_pass"] = r.is_zpd;
  return {report.dump(2), {}, {}, r.is_zpd ? 0 : 1};
}

}  // namespace zpd
