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

// Config parsing and the JSON / CSV / SVG reports behind every command.
//
// All JSON reports share one envelope: {"schema": "zpdcert.report/1",
// "command": ..., "version": ..., ..., "all_pass": bool}.

#ifndef ZPD_REPORT_HPP_
#define ZPD_REPORT_HPP_

#include <cstdint>
#include <string>

#include "zpd/algebra.hpp"
#include "zpd/seminorms.hpp"

namespace zpd {

inline constexpr const char* kReportSchema = "zpdcert.report/1";
const char* Version();

struct AlgebraConfig {
  FiniteBanachAlgebra algebra;
  std::string descriptor;  // canonical JSON echo
};

// Accepts a JSON descriptor ({"kind": "cyclic" | "table" | "matrix", ...})
// or a shorthand: cyclic:m, matrix:n, symmetric:k.
AlgebraConfig ParseAlgebra(const std::string& text);

struct FormConfig {
  BilinearForm form;
  std::string source;  // canonical JSON echo
};

// Accepts a JSON matrix of numbers or [re, im] pairs, {"values": matrix},
// {"random": {"seed": s, "scale": r}}, {"unit": [j, k]},
// {"product": [xi_0, ...]}, or the shorthands random:s[:r] and unit:j,k
// (indices or basis labels).
FormConfig ParseForm(const std::string& text, const FiniteBanachAlgebra& alg);

struct CommandOutput {
  std::string json;
  std::string csv;
  std::string svg;
  // 0 all checks pass, 1 some check fails.
  int exit_code = 0;
};

CommandOutput Analyze(const AlgebraConfig& alg, const FormConfig& phi,
                      const SearchOptions& options, bool want_svg);

// Row i uses the form RandomForm(dim, s_i) and search seed s_i with
// s_i = DeriveSeed(seed, i).
CommandOutput Batch(const AlgebraConfig& alg, int count, const SearchOptions& options);

CommandOutput BetaSearchCommand(const AlgebraConfig& alg, int budget, std::uint64_t seed);
CommandOutput TorusVerifyCommand(int degree, std::uint64_t seed, bool want_svg);
CommandOutput PauliCommand(std::size_t n, std::uint64_t seed);
CommandOutput ZpdCheckCommand(const AlgebraConfig& alg, int samples, std::uint64_t seed);

}  // namespace zpd

#endif  // ZPD_REPORT_HPP_
