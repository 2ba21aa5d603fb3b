/* SPDX-License-Identifier: Apache-2.0 */
#ifndef BRANCHDUAL_H
#define BRANCHDUAL_H

#include <stddef.h>

#if defined(BRANCHDUAL_BUILDING_LIBRARY)
#define BD_API __attribute__((visibility("default")))
#else
#define BD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the CLI exit codes where they overlap. */
typedef enum bd_status {
  BD_OK = 0,
  BD_FAILURE = 1,
  BD_INFINITE_CODIMENSION = 2,
  BD_PARSE_ERROR = 3,
  BD_NOT_ALGEBRA_FORMING = 4,
  BD_PRECISION_EXHAUSTED = 5,
  BD_INVALID_ARGUMENT = 6,
  BD_INTERNAL_ERROR = 7
} bd_status;

typedef struct bd_algebra bd_algebra;
typedef struct bd_semigroup bd_semigroup;

typedef struct bd_invariants {
  int delta;
  int conductor;
  int e0;
  int e1;
  int mu;
  int embedding_dimension;
  int gorenstein;
} bd_invariants;

BD_API const char* bd_version(void);

/* Message of the last failed call on this thread; "" after a success. */
BD_API const char* bd_last_error(void);

/* Frees strings returned through char** out-parameters. */
BD_API void bd_string_free(char* s);

/* Runs a JSON job (object or array) and returns the JSON report. The report is
 * produced for failing jobs too; exit_code receives the CLI exit code. */
BD_API bd_status bd_run_job(const char* job_json, char** report_json, int* exit_code);

/* generators: comma-separated series in t. trunc_ceiling 0 selects the default. */
BD_API bd_status bd_algebra_create(const char* generators, int trunc_ceiling, bd_algebra** out);
BD_API void bd_algebra_destroy(bd_algebra* a);
BD_API bd_status bd_algebra_invariants(const bd_algebra* a, bd_invariants* out);
/* Copies up to capacity gaps; count receives the total number. */
BD_API bd_status bd_algebra_gaps(const bd_algebra* a, int* gaps, size_t capacity, size_t* count);
/* Basis of the inverse system as a ';'-separated list of operators in u. */
BD_API bd_status bd_algebra_inverse_system(const bd_algebra* a, char** basis);
BD_API bd_status bd_algebra_contains(const bd_algebra* a, const char* series, int* result);

BD_API bd_status bd_semigroup_create(const int* generators, size_t count, bd_semigroup** out);
BD_API void bd_semigroup_destroy(bd_semigroup* d);
BD_API int bd_semigroup_conductor(const bd_semigroup* d);
BD_API int bd_semigroup_genus(const bd_semigroup* d);
BD_API int bd_semigroup_contains(const bd_semigroup* d, int value);
BD_API int bd_semigroup_is_symmetric(const bd_semigroup* d);

#ifdef __cplusplus
}
#endif

#endif
