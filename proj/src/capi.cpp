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

#include "zpd/zpd.h"

#include <cstdio>
#include <exception>
#include <new>
#include <string>

#include "zpd/report.hpp"

struct zpd_algebra {
  zpd::AlgebraConfig config;
};

struct zpd_form {
  std::size_t dim = 0;
  zpd::FormConfig config;
};

struct zpd_result {
  zpd::CommandOutput output;
};

namespace {

thread_local std::string last_error;

zpd_status Record(zpd_status status, const char* message) {
  last_error = message;
  return status;
}

// Runs body, mapping exceptions onto status codes.
template <typename Body>
zpd_status Guard(Body&& body) {
  try {
    body();
    return ZPD_OK;
  } catch (const zpd::Error& e) {
    return Record(static_cast<zpd_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Record(ZPD_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Record(ZPD_INTERNAL, e.what());
  } catch (...) {
    return Record(ZPD_INTERNAL, "unknown failure");
  }
}

zpd_status Null(const char* what) {
  return Record(ZPD_NULL_POINTER, (std::string(what) + " is null").c_str());
}

zpd::SearchOptions Options(const zpd_search_options* o) {
  zpd::SearchOptions out;
  if (o == nullptr) return out;
  out.seed = o->seed;
  out.restarts = o->restarts;
  out.tolerance = o->tolerance;
  out.use_oracle = o->use_oracle != 0;
  if (out.restarts < 1) zpd::Fail(zpd::ErrorCode::kInvalidArgument, "restarts must be positive");
  if (!(out.tolerance > 0.0)) {
    zpd::Fail(zpd::ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  return out;
}

void CheckPair(const zpd_algebra* a, const zpd_form* f) {
  zpd::RequireSameDim(a->config.algebra.dim(), f->dim, "form");
}

zpd_status Emit(zpd::CommandOutput output, zpd_result** out) {
  *out = new zpd_result{std::move(output)};
  return ZPD_OK;
}

}  // namespace

extern "C" {

const char* zpd_version(void) { return zpd::Version(); }

const char* zpd_last_error(void) { return last_error.c_str(); }

const char* zpd_status_name(zpd_status status) {
  switch (status) {
    case ZPD_OK: return "ok";
    case ZPD_INVALID_ARGUMENT: return "invalid argument";
    case ZPD_DIMENSION_MISMATCH: return "dimension mismatch";
    case ZPD_CONSTRUCTION: return "construction error";
    case ZPD_PARSE: return "parse error";
    case ZPD_IO: return "i/o error";
    case ZPD_INTERNAL: return "internal error";
    case ZPD_NULL_POINTER: return "null pointer";
  }
  return "unknown status";
}

void zpd_search_options_default(zpd_search_options* options) {
  if (options == nullptr) return;
  const zpd::SearchOptions d;
  options->seed = d.seed;
  options->restarts = d.restarts;
  options->tolerance = d.tolerance;
  options->use_oracle = d.use_oracle ? 1 : 0;
}

zpd_status zpd_algebra_parse(const char* descriptor, zpd_algebra** out) {
  if (descriptor == nullptr) return Null("descriptor");
  if (out == nullptr) return Null("out");
  *out = nullptr;
  return Guard([&] { *out = new zpd_algebra{zpd::ParseAlgebra(descriptor)}; });
}

zpd_status zpd_algebra_dim(const zpd_algebra* algebra, size_t* out) {
  if (algebra == nullptr) return Null("algebra");
  if (out == nullptr) return Null("out");
  *out = algebra->config.algebra.dim();
  return ZPD_OK;
}

void zpd_algebra_free(zpd_algebra* algebra) { delete algebra; }

zpd_status zpd_form_parse(const zpd_algebra* algebra, const char* descriptor, zpd_form** out) {
  if (algebra == nullptr) return Null("algebra");
  if (descriptor == nullptr) return Null("descriptor");
  if (out == nullptr) return Null("out");
  *out = nullptr;
  return Guard([&] {
    *out = new zpd_form{algebra->config.algebra.dim(),
                        zpd::ParseForm(descriptor, algebra->config.algebra)};
  });
}

zpd_status zpd_form_from_values(const zpd_algebra* algebra, const double* re_im, size_t count,
                                zpd_form** out) {
  if (algebra == nullptr) return Null("algebra");
  if (re_im == nullptr) return Null("re_im");
  if (out == nullptr) return Null("out");
  *out = nullptr;
  return Guard([&] {
    const std::size_t n = algebra->config.algebra.dim();
    zpd::RequireSameDim(2 * n * n, count, "form value array");
    zpd::CMatrix v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n * n; ++i) {
      v(static_cast<Eigen::Index>(i / n), static_cast<Eigen::Index>(i % n)) = {re_im[2 * i],
                                                                                re_im[2 * i + 1]};
    }
    // Round-trip through the JSON reader so the source echo is canonical.
    std::string text = "[";
    for (std::size_t r = 0; r < n; ++r) {
      text += r ? ",[" : "[";
      for (std::size_t c = 0; c < n; ++c) {
        const auto z = v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s[%.17g,%.17g]", c ? "," : "", z.real(), z.imag());
        text += buf;
      }
      text += "]";
    }
    text += "]";
    *out = new zpd_form{n, zpd::ParseForm(text, algebra->config.algebra)};
  });
}

void zpd_form_free(zpd_form* form) { delete form; }

zpd_status zpd_seminorms(const zpd_algebra* algebra, const zpd_form* form,
                         const zpd_search_options* options, double* values, int32_t* sides) {
  if (algebra == nullptr) return Null("algebra");
  if (form == nullptr) return Null("form");
  if (values == nullptr) return Null("values");
  return Guard([&] {
    CheckPair(algebra, form);
    const zpd::SeminormSuite s =
        zpd::ComputeSuite(form->config.form, algebra->config.algebra, Options(options));
    const zpd::SeminormCertificate* certs[] = {&s.norm, &s.b, &s.zp, &s.dist};
    for (int i = 0; i < 4; ++i) {
      values[i] = certs[i]->value;
      if (sides != nullptr) sides[i] = static_cast<int32_t>(certs[i]->bound);
    }
  });
}

zpd_status zpd_analyze(const zpd_algebra* algebra, const zpd_form* form,
                       const zpd_search_options* options, int32_t want_svg, zpd_result** out) {
  if (algebra == nullptr) return Null("algebra");
  if (form == nullptr) return Null("form");
  if (out == nullptr) return Null("out");
  *out = nullptr;
  return Guard([&] {
    CheckPair(algebra, form);
    Emit(zpd::Analyze(algebra->config, form->config, Options(options), want_svg != 0), out);
  });
}

zpd_status zpd_batch(const zpd_algebra* algebra, int32_t count, const zpd_search_options* options,
                     zpd_result** out) {
  if (algebra == nullptr) return Null("algebra");
  if (out == nullptr) return Null("out");
  *out = nullptr;
  return Guard([&] { Emit(zpd::Batch(algebra->config, count, Options(options)), out); });
}

zpd_status zpd_beta_search(const zpd_algebra* algebra, int32_t budget, uint64_t seed,
                           zpd_result** out) {
  if (algebra == nullptr) return Null("algebra");
  if (out == nullptr) return Null("out");
  *out = nullptr;
  return Guard([&] { Emit(zpd::BetaSearchCommand(algebra->config, budget, seed), out); });
}

zpd_status zpd_torus_verify(int32_t degree, uint64_t seed, int32_t want_svg, zpd_result** out) {
  if (out == nullptr) return Null("out");
  *out = nullptr;
  return Guard([&] { Emit(zpd::TorusVerifyCommand(degree, seed, want_svg != 0), out); });
}

zpd_status zpd_pauli(uint32_t n, uint64_t seed, zpd_result** out) {
  if (out == nullptr) return Null("out");
  *out = nullptr;
  return Guard([&] { Emit(zpd::PauliCommand(n, seed), out); });
}

zpd_status zpd_zpd_check(const zpd_algebra* algebra, int32_t samples, uint64_t seed,
                         zpd_result** out) {
  if (algebra == nullptr) return Null("algebra");
  if (out == nullptr) return Null("out");
  *out = nullptr;
  return Guard([&] { Emit(zpd::ZpdCheckCommand(algebra->config, samples, seed), out); });
}

const char* zpd_result_json(const zpd_result* result) {
  return result ? result->output.json.c_str() : "";
}

const char* zpd_result_csv(const zpd_result* result) {
  return result ? result->output.csv.c_str() : "";
}

const char* zpd_result_svg(const zpd_result* result) {
  return result ? result->output.svg.c_str() : "";
}

int32_t zpd_result_exit_code(const zpd_result* result) {
  return result ? result->output.exit_code : 1;
}

void zpd_result_free(zpd_result* result) { delete result; }

}  // extern "C"
