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

// zpdcert command-line front end. Talks to the library only through the C
// interface.
//
// Exit codes: 0 all checks pass, 1 some check fails, 2 bad configuration or
// any other error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "zpd/zpd.h"

namespace {

constexpr int kExitConfig = 2;

struct ConfigError {
  std::string message;
};

// A descriptor is either inline text or the path of a file holding it.
std::string LoadDescriptor(const std::string& value, const char* what) {
  const std::filesystem::path path(value);
  std::error_code ec;
  if (std::filesystem::is_regular_file(path, ec)) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    if (!in) throw ConfigError{std::string("cannot read ") + what + " file " + value};
    return ss.str();
  }
  if (path.has_extension() && value.find('{') == std::string::npos &&
      value.find('[') == std::string::npos) {
    throw ConfigError{std::string(what) + " file not found: " + value};
  }
  return value;
}

void WriteText(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ConfigError{"cannot write " + path};
}

void Check(zpd_status status) {
  if (status != ZPD_OK) {
    throw ConfigError{std::string(zpd_status_name(status)) + ": " + zpd_last_error()};
  }
}

class Algebra {
 public:
  explicit Algebra(const std::string& value) {
    Check(zpd_algebra_parse(LoadDescriptor(value, "algebra").c_str(), &ptr_));
  }
  ~Algebra() { zpd_algebra_free(ptr_); }
  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;
  const zpd_algebra* get() const { return ptr_; }

 private:
  zpd_algebra* ptr_ = nullptr;
};

class Form {
 public:
  Form(const Algebra& alg, const std::string& value) {
    Check(zpd_form_parse(alg.get(), LoadDescriptor(value, "phi").c_str(), &ptr_));
  }
  ~Form() { zpd_form_free(ptr_); }
  Form(const Form&) = delete;
  Form& operator=(const Form&) = delete;
  const zpd_form* get() const { return ptr_; }

 private:
  zpd_form* ptr_ = nullptr;
};

class Result {
 public:
  ~Result() { zpd_result_free(ptr_); }
  zpd_result** out() { return &ptr_; }
  const zpd_result* get() const { return ptr_; }

 private:
  zpd_result* ptr_ = nullptr;
};

struct Flags {
  std::string algebra;
  std::string phi;
  std::uint64_t seed = 1;
  int count = 1;
  int budget = 8;
  int samples = 20;
  int degree = 4096;
  unsigned n = 2;
  int restarts = 200;
  double tolerance = 1e-9;
  bool no_oracle = false;
  std::string out;
  std::string svg;
};

zpd_search_options SearchOptions(const Flags& f) {
  zpd_search_options o;
  zpd_search_options_default(&o);
  o.seed = f.seed;
  o.restarts = f.restarts;
  o.tolerance = f.tolerance;
  o.use_oracle = f.no_oracle ? 0 : 1;
  return o;
}

int Finish(const Result& r, const Flags& f) {
  WriteText(f.out, zpd_result_json(r.get()));
  if (!f.svg.empty()) WriteText(f.svg, zpd_result_svg(r.get()));
  return zpd_result_exit_code(r.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seminorm certificates for bilinear functionals on finite-dimensional Banach algebras"};
  app.set_version_flag("--version", std::string(zpd_version()));
  app.require_subcommand(1);
  Flags f;

  auto add_search = [&f](CLI::App* cmd) {
    cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    cmd->add_option("--restarts", f.restarts, "Restart budget for nonconvex searches")
        ->capture_default_str();
    cmd->add_option("--tolerance", f.tolerance, "Inequality tolerance")->capture_default_str();
    cmd->add_flag("--no-oracle", f.no_oracle, "Use the heuristic zp search everywhere");
  };

  auto* analyze = app.add_subcommand("analyze", "Seminorm suite for one functional");
  analyze->add_option("--algebra", f.algebra, "Algebra descriptor or file")->required();
  analyze->add_option("--phi", f.phi, "Functional descriptor or file")->required();
  add_search(analyze);
  analyze->add_option("--out", f.out, "JSON report path (default stdout)");
  analyze->add_option("--svg", f.svg, "Fiber-disk SVG path");

  auto* batch = app.add_subcommand("batch", "Seminorm suite for many random functionals");
  batch->add_option("--algebra", f.algebra, "Algebra descriptor or file")->required();
  batch->add_option("--count", f.count, "Number of functionals")->required();
  add_search(batch);
  batch->add_option("--out", f.out, "CSV path (default stdout)");

  auto* beta = app.add_subcommand("beta-search", "Search for large b / zp ratios");
  beta->add_option("--algebra", f.algebra, "Algebra descriptor or file")->required();
  beta->add_option("--count", f.budget, "Random starts")->capture_default_str();
  beta->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  beta->add_option("--out", f.out, "JSON report path (default stdout)");

  auto* torus = app.add_subcommand("torus-verify", "Check the circle-algebra constructions");
  torus->add_option("--degree", f.degree, "Truncation degree")->capture_default_str();
  torus->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  torus->add_option("--out", f.out, "JSON report path (default stdout)");
  torus->add_option("--svg", f.svg, "Window plot SVG path");

  auto* pauli = app.add_subcommand("pauli", "Clock-shift group checks on n x n matrices");
  pauli->add_option("--n", f.n, "Matrix side")->capture_default_str();
  pauli->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  pauli->add_option("--out", f.out, "JSON report path (default stdout)");

  auto* check = app.add_subcommand("zpd-check", "Linear zero-product-determined check");
  check->add_option("--algebra", f.algebra, "Algebra descriptor or file")->required();
  check->add_option("--count", f.samples, "Random zero-product samples")->capture_default_str();
  check->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  check->add_option("--out", f.out, "JSON report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    Result r;
    if (*analyze) {
      const Algebra alg(f.algebra);
      const Form phi(alg, f.phi);
      const zpd_search_options o = SearchOptions(f);
      Check(zpd_analyze(alg.get(), phi.get(), &o, f.svg.empty() ? 0 : 1, r.out()));
      return Finish(r, f);
    }
    if (*batch) {
      const Algebra alg(f.algebra);
      const zpd_search_options o = SearchOptions(f);
      Check(zpd_batch(alg.get(), f.count, &o, r.out()));
      WriteText(f.out, zpd_result_csv(r.get()));
      std::fputs(zpd_result_json(r.get()), stderr);
      std::fputc('\n', stderr);
      return zpd_result_exit_code(r.get());
    }
    if (*beta) {
      const Algebra alg(f.algebra);
      Check(zpd_beta_search(alg.get(), f.budget, f.seed, r.out()));
      return Finish(r, f);
    }
    if (*torus) {
      Check(zpd_torus_verify(f.degree, f.seed, f.svg.empty() ? 0 : 1, r.out()));
      return Finish(r, f);
    }
    if (*pauli) {
      Check(zpd_pauli(f.n, f.seed, r.out()));
      return Finish(r, f);
    }
    if (*check) {
      const Algebra alg(f.algebra);
      Check(zpd_zpd_check(alg.get(), f.samples, f.seed, r.out()));
      return Finish(r, f);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "zpdcert: %s\n", e.message.c_str());
    return kExitConfig;
  }
  return kExitConfig;
}
