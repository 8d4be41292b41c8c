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

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

namespace zpd {
namespace {

using nlohmann::json;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInternal;
}

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cell_in(line);
    std::string cell;
    while (std::getline(cell_in, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(ParseAlgebraTest, Shorthands) {
  EXPECT_EQ(ParseAlgebra("cyclic:3").algebra.dim(), 3u);
  EXPECT_EQ(ParseAlgebra("matrix:2").algebra.dim(), 4u);
  const auto s3 = ParseAlgebra("symmetric:3").algebra;
  EXPECT_EQ(s3.dim(), 6u);
  ASSERT_TRUE(s3.group().has_value());
  EXPECT_FALSE(s3.group()->abelian);
}

TEST(ParseAlgebraTest, JsonTableWithLabels) {
  const auto cfg = ParseAlgebra(
      R"({"kind": "table", "labels": ["e", "a"], "table": [["e", "a"], ["a", "e"]]})");
  EXPECT_EQ(cfg.algebra.dim(), 2u);
  EXPECT_EQ(cfg.algebra.labels()[1], "a");
  EXPECT_EQ(cfg.algebra.group()->identity, 0u);
}

TEST(ParseAlgebraTest, WeightedCyclic) {
  const auto cfg = ParseAlgebra(R"({"kind": "cyclic", "order": 2, "weights": [1, 2]})");
  EXPECT_FALSE(cfg.algebra.has_unit_weights());
}

TEST(ParseAlgebraTest, Errors) {
  EXPECT_EQ(CodeOf([] { ParseAlgebra("{\"kind\": \"cyclic\""); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseAlgebra("hexagon:3"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseAlgebra(R"({"kind": "table", "table": [[0, 1], [1, 1]]})"); }),
            ErrorCode::kConstruction);
  EXPECT_EQ(CodeOf([] { ParseAlgebra("cyclic:0"); }), ErrorCode::kInvalidArgument);
}

TEST(ParseFormTest, Variants) {
  const auto alg = ParseAlgebra("cyclic:2").algebra;
  const auto unit = ParseForm("unit:0,1", alg).form;
  EXPECT_EQ(unit.values(0, 1), Complex(1.0));
  EXPECT_EQ(unit.values.cwiseAbs().sum(), 1.0);
  EXPECT_EQ(ParseForm("random:5", alg).form.values, RandomForm(2, 5).values);
  EXPECT_EQ(ParseForm("random:5:2", alg).form.values, RandomForm(2, 5, 2.0).values);
  const auto pairs = ParseForm("[[[1, 2], 0], [0, [0, -1]]]", alg).form;
  EXPECT_EQ(pairs.values(0, 0), Complex(1.0, 2.0));
  EXPECT_EQ(pairs.values(1, 1), Complex(0.0, -1.0));
  const auto product = ParseForm(R"({"product": [1, 3]})", alg).form;
  EXPECT_EQ(product.values(1, 1), Complex(1.0));
  EXPECT_EQ(product.values(0, 1), Complex(3.0));
}

TEST(ParseFormTest, Errors) {
  const auto alg = ParseAlgebra("cyclic:3").algebra;
  EXPECT_EQ(CodeOf([&] { ParseForm("[[1, 0], [0, 1]]", alg); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([&] { ParseForm("unit:0,7", alg); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { ParseForm("[[1, 0", alg); }), ErrorCode::kParse);
}

TEST(AnalyzeTest, UnitFormReport) {
  const auto out = Analyze(ParseAlgebra("cyclic:2"), ParseForm("unit:0,1", ParseAlgebra("cyclic:2").algebra),
                           SearchOptions{}, true);
  EXPECT_EQ(out.exit_code, 0);
  const json j = json::parse(out.json);
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["command"], "analyze");
  EXPECT_TRUE(j["all_pass"].get<bool>());
  EXPECT_DOUBLE_EQ(j["certificates"]["norm"]["value"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j["certificates"]["b"]["value"].get<double>(), 1.0);
  EXPECT_NEAR(j["certificates"]["zp"]["value"].get<double>(), 0.25, 1e-12);
  EXPECT_NEAR(j["certificates"]["dist"]["value"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["xi_min"][1][0].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j["xi_from_identity"][1][0].get<double>(), 1.0);
  for (const auto& v : j["verdicts"]) EXPECT_TRUE(v["passed"].get<bool>()) << v["name"];
  EXPECT_NE(out.svg.find("<svg"), std::string::npos);
}

TEST(BatchTest, RowsReproduceAnalyze) {
  const auto cfg = ParseAlgebra("cyclic:3");
  SearchOptions options;
  options.seed = 42;
  const auto out = Batch(cfg, 3, options);
  EXPECT_EQ(out.exit_code, 0);
  const auto rows = ParseCsv(out.csv);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0][1], "seed");
  EXPECT_EQ(rows[0].back(), "inequalities_pass");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::uint64_t seed = std::stoull(rows[i][1]);
    EXPECT_EQ(seed, DeriveSeed(42, i - 1));
    SearchOptions row_options;
    row_options.seed = seed;
    const auto single = json::parse(
        Analyze(cfg, ParseForm("random:" + rows[i][1], cfg.algebra), row_options, false).json);
    EXPECT_EQ(std::stod(rows[i][2]), single["certificates"]["norm"]["value"].get<double>());
    EXPECT_EQ(std::stod(rows[i][3]), single["certificates"]["b"]["value"].get<double>());
    EXPECT_EQ(std::stod(rows[i][4]), single["certificates"]["zp"]["value"].get<double>());
    EXPECT_EQ(std::stod(rows[i][6]), single["certificates"]["dist"]["value"].get<double>());
    EXPECT_EQ(rows[i].back(), "true");
  }
  EXPECT_EQ(Batch(cfg, 3, options).csv, out.csv);
}

TEST(BatchTest, RejectsNonPositiveCount) {
  EXPECT_EQ(CodeOf([] { Batch(ParseAlgebra("cyclic:2"), 0, SearchOptions{}); }),
            ErrorCode::kInvalidArgument);
}

TEST(CommandTest, BetaSearchCertifiesFourOnZ2) {
  const auto out = BetaSearchCommand(ParseAlgebra("cyclic:2"), 4, 1);
  EXPECT_EQ(out.exit_code, 0);
  const json j = json::parse(out.json);
  EXPECT_GE(j["ratio"].get<double>(), 4.0 - 1e-6);
  EXPECT_TRUE(j["certified"].get<bool>());
}

TEST(CommandTest, ZpdCheckMatrix) {
  const auto out = ZpdCheckCommand(ParseAlgebra("matrix:2"), 20, 1);
  const json j = json::parse(out.json);
  EXPECT_EQ(j["annihilator_dim"].get<int>(), 4);
  EXPECT_TRUE(j["is_zpd"].get<bool>());
  EXPECT_EQ(out.exit_code, 0);
}

TEST(CommandTest, Pauli) {
  const auto out = PauliCommand(2, 1);
  const json j = json::parse(out.json);
  EXPECT_EQ(j["group_order"].get<int>(), 16);
  EXPECT_EQ(j["span_rank"].get<int>(), 4);
  EXPECT_TRUE(j["all_pass"].get<bool>());
}

}  // namespace
}  // namespace zpd
