/*
 * Copyright (c) 2026 The pspec Authors. All Rights Reserved
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

#ifndef PSPEC_PSPEC_H
#define PSPEC_PSPEC_H

/* C interface. Every handle is opaque; every call returns a status code and, on
 * failure, leaves a message readable through pspec_last_error() on the same thread. */

#include <stddef.h>

#if defined(PSPEC_BUILDING_LIBRARY)
#define PSPEC_API __attribute__((visibility("default")))
#else
#define PSPEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pspec_status {
  PSPEC_OK = 0,
  PSPEC_USAGE = 2,
  PSPEC_DOMAIN = 3,
  PSPEC_INSUFFICIENT_DATA = 4,
  PSPEC_ACCURACY = 5,
  PSPEC_SINGULAR = 6,
  PSPEC_IO = 7,
  PSPEC_INTERNAL = 8,
  PSPEC_CHECK_FAILED = 9
} pspec_status;

typedef struct pspec_config pspec_config;
typedef struct pspec_result pspec_result;
typedef struct pspec_curve pspec_curve;

PSPEC_API const char* pspec_version(void);
PSPEC_API const char* pspec_status_string(int status);
/* Message of the last failed call on this thread; "" when none. */
PSPEC_API const char* pspec_last_error(void);

PSPEC_API int pspec_config_create(pspec_config** out);
PSPEC_API void pspec_config_free(pspec_config* cfg);
PSPEC_API int pspec_config_set(pspec_config* cfg, const char* key, const char* value);
PSPEC_API int pspec_config_load(pspec_config* cfg, const char* path);
PSPEC_API int pspec_config_parse(pspec_config* cfg, const char* text);

/* command: simulate, theory, universal, compare, verify or figures. */
PSPEC_API int pspec_run(const char* command, const pspec_config* cfg, pspec_result** out);
PSPEC_API void pspec_result_free(pspec_result* r);
/* Owned by the result. */
PSPEC_API const char* pspec_result_json(const pspec_result* r);
PSPEC_API int pspec_result_passed(const pspec_result* r);
PSPEC_API size_t pspec_result_curve_count(const pspec_result* r);
/* Copies curve i into a new handle that the caller frees. */
PSPEC_API int pspec_result_curve(const pspec_result* r, size_t i, const char** name, pspec_curve** out);

PSPEC_API int pspec_curve_load(const char* path, pspec_curve** out);
PSPEC_API int pspec_curve_save(const pspec_curve* c, const char* path);
PSPEC_API size_t pspec_curve_size(const pspec_curve* c);
/* Any output pointer may be NULL; arrays must hold pspec_curve_size() entries. */
PSPEC_API int pspec_curve_points(const pspec_curve* c, double* x, double* value, double* err);
PSPEC_API void pspec_curve_free(pspec_curve* c);

/* lo/hi may be -inf/+inf. passed receives 0 or 1. */
PSPEC_API int pspec_compare(const pspec_curve* a, const pspec_curve* b, double tol, double lo, double hi,
                            double* rms_rel, double* max_rel, int* passed);

/* Gap generating function at zeta = zr + i zi, with optional d/dzeta. */
PSPEC_API int pspec_phi(int N, double phi, double zr, double zi, double out_value[2], double out_dzeta[2]);
PSPEC_API int pspec_s_tcue(int N, double omega, double* value, double* error);
PSPEC_API int pspec_s_uncorrelated_exact(int N, double omega, double sigma2, double* value);
PSPEC_API int pspec_s_small_omega(double omega, double* value);
PSPEC_API int pspec_prefactors(double wt, double* A, double* B);

#ifdef __cplusplus
}
#endif

#endif
