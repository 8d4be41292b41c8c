/*
 * Copyright 2026 The zpdcert Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the zpd library.
 *
 * Every call returns a zpd_status. On failure zpd_last_error() describes the
 * problem; the message is per thread and stays valid until the next failing
 * call on that thread. Objects are opaque and must be released with the
 * matching *_free function. */

#ifndef ZPD_ZPD_H_
#define ZPD_ZPD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ZPD_BUILDING)
#define ZPD_API __declspec(dllexport)
#else
#define ZPD_API __declspec(dllimport)
#endif
#else
#define ZPD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zpd_status {
  ZPD_OK = 0,
  ZPD_INVALID_ARGUMENT = 1,
  ZPD_DIMENSION_MISMATCH = 2,
  ZPD_CONSTRUCTION = 3,
  ZPD_PARSE = 4,
  ZPD_IO = 5,
  ZPD_INTERNAL = 6,
  ZPD_NULL_POINTER = 7
} zpd_status;

typedef struct zpd_algebra zpd_algebra;
typedef struct zpd_form zpd_form;
typedef struct zpd_result zpd_result;

typedef struct zpd_search_options {
  uint64_t seed;
  int32_t restarts;
  double tolerance;
  int32_t use_oracle;
} zpd_search_options;

/* Indices into the arrays filled by zpd_seminorms. */
enum { ZPD_NORM = 0, ZPD_B = 1, ZPD_ZP = 2, ZPD_DIST = 3 };

/* Bound sides reported by zpd_seminorms. */
enum { ZPD_EXACT = 0, ZPD_LOWER = 1, ZPD_UPPER = 2 };

ZPD_API const char* zpd_version(void);
ZPD_API const char* zpd_last_error(void);
ZPD_API const char* zpd_status_name(zpd_status status);
ZPD_API void zpd_search_options_default(zpd_search_options* options);

/* Descriptor: JSON or shorthand (cyclic:m, matrix:n, symmetric:k). */
ZPD_API zpd_status zpd_algebra_parse(const char* descriptor, zpd_algebra** out);
ZPD_API zpd_status zpd_algebra_dim(const zpd_algebra* algebra, size_t* out);
ZPD_API void zpd_algebra_free(zpd_algebra* algebra);

/* Descriptor: JSON matrix, {"random": ...}, {"unit": [j, k]},
 * {"product": [...]}, random:seed[:scale] or unit:j,k. */
ZPD_API zpd_status zpd_form_parse(const zpd_algebra* algebra, const char* descriptor,
                                  zpd_form** out);
/* re_im holds 2 * dim * dim doubles: row-major entries as (re, im). */
ZPD_API zpd_status zpd_form_from_values(const zpd_algebra* algebra, const double* re_im,
                                        size_t count, zpd_form** out);
ZPD_API void zpd_form_free(zpd_form* form);

/* Fills values[4] and sides[4] (ZPD_EXACT / ZPD_LOWER / ZPD_UPPER), indexed
 * by ZPD_NORM .. ZPD_DIST. options may be NULL for defaults. */
ZPD_API zpd_status zpd_seminorms(const zpd_algebra* algebra, const zpd_form* form,
                                 const zpd_search_options* options, double* values,
                                 int32_t* sides);

ZPD_API zpd_status zpd_analyze(const zpd_algebra* algebra, const zpd_form* form,
                               const zpd_search_options* options, int32_t want_svg,
                               zpd_result** out);
ZPD_API zpd_status zpd_batch(const zpd_algebra* algebra, int32_t count,
                             const zpd_search_options* options, zpd_result** out);
ZPD_API zpd_status zpd_beta_search(const zpd_algebra* algebra, int32_t budget, uint64_t seed,
                                   zpd_result** out);
ZPD_API zpd_status zpd_torus_verify(int32_t degree, uint64_t seed, int32_t want_svg,
                                    zpd_result** out);
ZPD_API zpd_status zpd_pauli(uint32_t n, uint64_t seed, zpd_result** out);
ZPD_API zpd_status zpd_zpd_check(const zpd_algebra* algebra, int32_t samples, uint64_t seed,
                                 zpd_result** out);

/* Result accessors. Strings are owned by the result; empty when absent. */
ZPD_API const char* zpd_result_json(const zpd_result* result);
ZPD_API const char* zpd_result_csv(const zpd_result* result);
ZPD_API const char* zpd_result_svg(const zpd_result* result);
/* 0 when every check passed, 1 otherwise. */
ZPD_API int32_t zpd_result_exit_code(const zpd_result* result);
ZPD_API void zpd_result_free(zpd_result* result);

#ifdef __cplusplus
}
#endif

#endif /* ZPD_ZPD_H_ */
