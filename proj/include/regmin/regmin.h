/* SPDX-FileCopyrightText: (c) 2026 regmin developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

/* C interface to the regmin library.
 *
 * Handles are opaque. Every function returning regmin_status leaves a
 * message retrievable with regmin_last_error() on failure (per thread).
 * Strings returned through char** are owned by the caller and released with
 * regmin_free_string().
 */

#ifndef REGMIN_REGMIN_H
#define REGMIN_REGMIN_H

#include <stddef.h>

#if defined(_WIN32)
#define REGMIN_API __declspec(dllexport)
#else
#define REGMIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum regmin_status {
  REGMIN_OK = 0,
  REGMIN_E_INVALID = 1,      /* bad argument, unknown key or problem */
  REGMIN_E_PRECONDITION = 2, /* e.g. Condition 2 cannot hold for this problem */
  REGMIN_E_SOLVER = 3,       /* subsolver failure, non-finite values */
  REGMIN_E_CERTIFY = 4,      /* reference point outside the target set, rate refused */
  REGMIN_E_IO = 5,
  REGMIN_E_INTERNAL = 6
} regmin_status;

typedef struct regmin_runspec regmin_runspec;
typedef struct regmin_trace regmin_trace;

REGMIN_API const char* regmin_version(void);
REGMIN_API const char* regmin_last_error(void);
REGMIN_API void regmin_free_string(char* s);

/* Run specifications. Keys accept '-' or '_' interchangeably. */
REGMIN_API regmin_status regmin_runspec_create(regmin_runspec** out);
REGMIN_API void regmin_runspec_destroy(regmin_runspec* spec);
REGMIN_API regmin_status regmin_runspec_set(regmin_runspec* spec, const char* key, const char* value);
/* key=value lines, '#' comments. */
REGMIN_API regmin_status regmin_runspec_load(regmin_runspec* spec, const char* path);
/* Current value of a key, empty string when unset. */
REGMIN_API regmin_status regmin_runspec_get(const regmin_runspec* spec, const char* key, char** value);
REGMIN_API size_t regmin_runspec_key_count(void);
REGMIN_API const char* regmin_runspec_key(size_t i);

/* Resolves defaults, validates and runs. */
REGMIN_API regmin_status regmin_run(const regmin_runspec* spec, regmin_trace** out);

/* A trace is stored as <stem>.csv plus <stem>.iterates.csv and <stem>.json. */
REGMIN_API regmin_status regmin_trace_save(const regmin_trace* trace, const char* csv_path);
REGMIN_API regmin_status regmin_trace_load(const char* csv_path, regmin_trace** out);
REGMIN_API void regmin_trace_destroy(regmin_trace* trace);
/* {status, iters, f_final, gnorm_final, ...} */
REGMIN_API regmin_status regmin_trace_summary(const regmin_trace* trace, char** json);

/* Quasi-Fejer certificates against y (NULL: the problem's minimizer).
 * tol < 0 selects the default. cert_csv_path may be NULL. *passed is set
 * to 1 when every certificate holds within tolerance. */
REGMIN_API regmin_status regmin_certify(const regmin_trace* trace, const double* y, size_t n, double tol,
                                        const char* cert_csv_path, char** json, int* passed);
/* Sublinear rate check; refused for problems that are not convex or lack f*. */
REGMIN_API regmin_status regmin_rate(const regmin_trace* trace, const double* y, size_t n, char** json,
                                     int* passed);

/* Runs every line of a matrix file; writes nothing itself besides per-row
 * traces. *exit_code: 0 pass, 2 a row errored, 3 a criterion failed. */
REGMIN_API regmin_status regmin_suite(const char* matrix_path, const char* out_dir, unsigned threads,
                                      char** json, int* exit_code);

REGMIN_API size_t regmin_problem_count(void);
REGMIN_API const char* regmin_problem_name(size_t i);
/* {name, dim, convexity, L, f_star, ...}; accepts any parsable name. */
REGMIN_API regmin_status regmin_problem_describe(const char* name, char** json);

#ifdef __cplusplus
}
#endif

#endif /* REGMIN_REGMIN_H */
