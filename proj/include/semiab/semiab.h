// Copyright 2026 The semiab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the semiab library.
 *
 * All strings are UTF-8 and NUL-terminated. Strings returned through an
 * out-parameter are owned by the caller and released with semiab_string_free.
 * A context is not thread-safe; use one per thread.
 */

#ifndef SEMIAB_SEMIAB_H_
#define SEMIAB_SEMIAB_H_

#include <stddef.h>

#if defined(_WIN32)
#define SEMIAB_API __declspec(dllexport)
#else
#define SEMIAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum semiab_status {
  SEMIAB_OK = 0,
  SEMIAB_PARSE_ERROR = 1,
  SEMIAB_UNDEFINED_ORBIT = 2,
  SEMIAB_RESOURCE_EXCEEDED = 3,
  SEMIAB_INTERNAL_ERROR = 4
} semiab_status;

typedef struct semiab_context semiab_context;

SEMIAB_API semiab_context* semiab_context_new(void);
SEMIAB_API void semiab_context_free(semiab_context* ctx);

/* Overrides applied to every later semiab_run call.
 * Names: n_max, k_max, burn_in, seed, height_cap_bits (unsigned decimal),
 * format ("json" or "text"), timings ("0" or "1"). */
SEMIAB_API semiab_status semiab_set_option(semiab_context* ctx, const char* name, const char* value);

/* Runs analyze, zeroset, pipeline, fgab or verify-paper-examples.
 * instance_json may be NULL for verify-paper-examples. *report is set whenever
 * a report was produced, including SEMIAB_INTERNAL_ERROR from failed checks,
 * and NULL otherwise. */
SEMIAB_API semiab_status semiab_run(semiab_context* ctx, const char* command, const char* instance_json,
                                    char** report);

/* Message for the last failing call on ctx; empty after a success. */
SEMIAB_API const char* semiab_last_error(const semiab_context* ctx);

SEMIAB_API void semiab_string_free(char* s);

/* Parses a rational function in x1..x<nvars> over field ("Q" or "F_p(t)") and
 * writes its normalized text to *normalized. */
SEMIAB_API semiab_status semiab_parse_expression(semiab_context* ctx, const char* text, size_t nvars,
                                                 const char* field, char** normalized);

/* Smith normal form of a JSON matrix (array of rows of integers or decimal
 * strings). Writes {"U", "D", "V", "rank", "invariant_factors"} as JSON. */
SEMIAB_API semiab_status semiab_snf(semiab_context* ctx, const char* matrix_json, char** result_json);

/* The instance document of a built-in example. */
SEMIAB_API semiab_status semiab_builtin_instance(semiab_context* ctx, const char* name, char** instance_json);

SEMIAB_API const char* semiab_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SEMIAB_SEMIAB_H_ */
