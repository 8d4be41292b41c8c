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

#include <cmath>
#include <algorithm>
#include <cstring>
#include <string>

#include <gtest/gtest.h>

namespace {

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STREQ(zpd_version(), "0.1.0");
  EXPECT_STREQ(zpd_status_name(ZPD_OK), "ok");
  EXPECT_STRNE(zpd_status_name(ZPD_PARSE), zpd_status_name(ZPD_IO));
}

TEST(CApiTest, NullPointers) {
  zpd_algebra* alg = nullptr;
  EXPECT_EQ(zpd_algebra_parse(nullptr, &alg), ZPD_NULL_POINTER);
  EXPECT_EQ(zpd_algebra_parse("cyclic:2", nullptr), ZPD_NULL_POINTER);
  size_t dim = 0;
  EXPECT_EQ(zpd_algebra_dim(nullptr, &dim), ZPD_NULL_POINTER);
  EXPECT_EQ(zpd_seminorms(nullptr, nullptr, nullptr, nullptr, nullptr), ZPD_NULL_POINTER);
  EXPECT_STRNE(zpd_last_error(), "");
  zpd_algebra_free(nullptr);
  zpd_form_free(nullptr);
  zpd_result_free(nullptr);
}

TEST(CApiTest, ErrorStatuses) {
  zpd_algebra* alg = nullptr;
  EXPECT_EQ(zpd_algebra_parse("{\"kind\":", &alg), ZPD_PARSE);
  EXPECT_EQ(alg, nullptr);
  EXPECT_EQ(zpd_algebra_parse("{\"kind\": \"table\", \"table\": [[0, 1], [1, 1]]}", &alg),
            ZPD_CONSTRUCTION);
  ASSERT_EQ(zpd_algebra_parse("cyclic:3", &alg), ZPD_OK);
  zpd_form* form = nullptr;
  EXPECT_EQ(zpd_form_parse(alg, "[[1, 0], [0, 1]]", &form), ZPD_DIMENSION_MISMATCH);
  const double values[8] = {0};
  EXPECT_EQ(zpd_form_from_values(alg, values, 8, &form), ZPD_DIMENSION_MISMATCH);
  zpd_search_options opts;
  zpd_search_options_default(&opts);
  opts.restarts = 0;
  ASSERT_EQ(zpd_form_parse(alg, "unit:0,1", &form), ZPD_OK);
  double out[4];
  int32_t sides[4];
  EXPECT_EQ(zpd_seminorms(alg, form, &opts, out, sides), ZPD_INVALID_ARGUMENT);
  zpd_form_free(form);
  zpd_algebra_free(alg);
}

TEST(CApiTest, SeminormsOnUnitForm) {
  zpd_algebra* alg = nullptr;
  ASSERT_EQ(zpd_algebra_parse("cyclic:2", &alg), ZPD_OK);
  size_t dim = 0;
  ASSERT_EQ(zpd_algebra_dim(alg, &dim), ZPD_OK);
  EXPECT_EQ(dim, 2u);
  // E01 as interleaved (re, im) pairs.
  const double values[8] = {0, 0, 1, 0, 0, 0, 0, 0};
  zpd_form* form = nullptr;
  ASSERT_EQ(zpd_form_from_values(alg, values, 8, &form), ZPD_OK);
  double out[4];
  int32_t sides[4];
  ASSERT_EQ(zpd_seminorms(alg, form, nullptr, out, sides), ZPD_OK);
  EXPECT_DOUBLE_EQ(out[ZPD_NORM], 1.0);
  EXPECT_DOUBLE_EQ(out[ZPD_B], 1.0);
  EXPECT_NEAR(out[ZPD_ZP], 0.25, 1e-12);
  EXPECT_NEAR(out[ZPD_DIST], 0.5, 1e-12);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(sides[i], ZPD_EXACT);
  zpd_form_free(form);
  zpd_algebra_free(alg);
}

TEST(CApiTest, AnalyzeAndBatchResults) {
  zpd_algebra* alg = nullptr;
  ASSERT_EQ(zpd_algebra_parse("cyclic:3", &alg), ZPD_OK);
  zpd_form* form = nullptr;
  ASSERT_EQ(zpd_form_parse(alg, "random:7", &form), ZPD_OK);
  zpd_result* res = nullptr;
  ASSERT_EQ(zpd_analyze(alg, form, nullptr, 1, &res), ZPD_OK);
  EXPECT_EQ(zpd_result_exit_code(res), 0);
  EXPECT_NE(std::string(zpd_result_json(res)).find("\"schema\""), std::string::npos);
  EXPECT_NE(std::string(zpd_result_svg(res)).find("<svg"), std::string::npos);
  EXPECT_STREQ(zpd_result_csv(res), "");
  zpd_result_free(res);

  zpd_search_options opts;
  zpd_search_options_default(&opts);
  opts.seed = 13;
  ASSERT_EQ(zpd_batch(alg, 2, &opts, &res), ZPD_OK);
  const std::string csv = zpd_result_csv(res);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  zpd_result_free(res);
  EXPECT_EQ(zpd_batch(alg, 0, &opts, &res), ZPD_INVALID_ARGUMENT);
  zpd_form_free(form);
  zpd_algebra_free(alg);
}

TEST(CApiTest, OtherCommands) {
  zpd_result* res = nullptr;
  ASSERT_EQ(zpd_pauli(2, 1, &res), ZPD_OK);
  EXPECT_EQ(zpd_result_exit_code(res), 0);
  zpd_result_free(res);
  zpd_algebra* alg = nullptr;
  ASSERT_EQ(zpd_algebra_parse("matrix:2", &alg), ZPD_OK);
  ASSERT_EQ(zpd_zpd_check(alg, 10, 1, &res), ZPD_OK);
  EXPECT_NE(std::string(zpd_result_json(res)).find("\"annihilator_dim\": 4"), std::string::npos);
  zpd_result_free(res);
  zpd_algebra_free(alg);
  alg = nullptr;
  ASSERT_EQ(zpd_algebra_parse("cyclic:2", &alg), ZPD_OK);
  ASSERT_EQ(zpd_beta_search(alg, 2, 1, &res), ZPD_OK);
  EXPECT_EQ(zpd_result_exit_code(res), 0);
  zpd_result_free(res);
  zpd_algebra_free(alg);
  EXPECT_EQ(zpd_torus_verify(0, 1, 0, &res), ZPD_INVALID_ARGUMENT);
}

}  // namespace
