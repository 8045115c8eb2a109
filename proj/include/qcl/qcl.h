// Copyright 2026 The QCL Authors
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

/* C interface to the queue-channel capacity library.
 *
 * Configurations are opaque handles holding a JSON experiment document.
 * Every call returns a qcl_status; on failure qcl_last_error() describes the
 * problem for the calling thread. Strings returned through char** outputs
 * are heap allocated and must be released with qcl_string_free.
 */
#ifndef QCL_QCL_H
#define QCL_QCL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(QCL_BUILDING_LIBRARY)
#define QCL_API __declspec(dllexport)
#else
#define QCL_API __declspec(dllimport)
#endif
#else
#define QCL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcl_status {
  QCL_OK = 0,
  QCL_ERR_CONFIG = 2,
  QCL_ERR_UNSTABLE = 3,
  QCL_ERR_VALIDATION = 4,
  QCL_ERR_INVALID_ARGUMENT = 5,
  QCL_ERR_NUMERICAL = 6,
  QCL_ERR_IO = 7,
  QCL_ERR_INTERNAL = 8
} qcl_status;

typedef struct qcl_config qcl_config;

QCL_API const char* qcl_version(void);

/* Message for the last failed call on this thread; "" after a success. */
QCL_API const char* qcl_last_error(void);

QCL_API void qcl_string_free(char* s);

/* Empty document: every field takes its default. */
QCL_API qcl_status qcl_config_new(qcl_config** out);
QCL_API qcl_status qcl_config_from_json(const char* text, qcl_config** out);
QCL_API qcl_status qcl_config_from_file(const char* path, qcl_config** out);
QCL_API void qcl_config_free(qcl_config* config);

/* Top-level overrides. The document is re-validated when a command runs. */
QCL_API qcl_status qcl_config_set_number(qcl_config* config, const char* key, double value);
QCL_API qcl_status qcl_config_set_uint(qcl_config* config, const char* key, uint64_t value);
QCL_API qcl_status qcl_config_set_string(qcl_config* config, const char* key, const char* value);
QCL_API int qcl_config_has(const qcl_config* config, const char* key);
QCL_API qcl_status qcl_config_to_json(const qcl_config* config, char** out_json);
QCL_API qcl_status qcl_config_validate(const qcl_config* config);

/* Capacity result JSON. */
QCL_API qcl_status qcl_capacity(const qcl_config* config, char** out_json);

/* Optimal arrival rate report JSON. */
QCL_API qcl_status qcl_optimize(const qcl_config* config, char** out_json);

/* Sweep CSV "lambda,kappa,capacity_analytic,capacity_mc,mc_stderr" plus a
 * JSON summary with warnings for dropped grid points. */
QCL_API qcl_status qcl_sweep(const qcl_config* config, char** out_csv, char** out_json);

/* Simulates the configured experiment. The transcript CSV is written to
 * transcript_path, or to the document's "out" key when transcript_path is
 * NULL; nothing is written when neither is set. */
QCL_API qcl_status qcl_simulate(const qcl_config* config, const char* transcript_path,
                                char** out_json);

/* Runs a validation suite ("all", "erasure", "bsc", "bijective",
 * "service-optimality"). Seed, n and tolerance_sigma come from config when
 * it is non-NULL. Returns QCL_ERR_VALIDATION when any check fails; the report
 * is produced either way. */
QCL_API qcl_status qcl_validate(const char* suite, const qcl_config* config, char** out_json);

/* Scalar helpers. */
QCL_API qcl_status qcl_mm1_erasure_capacity(double lambda, double kappa, double* out);
QCL_API qcl_status qcl_optimal_lambda_mm1(double kappa, double* out);
QCL_API qcl_status qcl_binary_entropy(double q, double* out);

#ifdef __cplusplus
}
#endif

#endif /* QCL_QCL_H */
