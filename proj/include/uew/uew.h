/*
 * Copyright 2026 The uew Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the ultrafine entanglement witness library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returns a uew_status. On failure, uew_last_error() describes the
 * most recent error on the calling thread; output pointers are left untouched.
 * Complex arrays are interleaved (re, im) doubles in row-major order.
 */

#ifndef UEW_UEW_H_
#define UEW_UEW_H_

#include <stddef.h>
#include <stdint.h>

#if defined(UEW_BUILDING_LIBRARY)
#define UEW_API __attribute__((visibility("default")))
#else
#define UEW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uew_status {
  UEW_OK = 0,
  UEW_ERR_INVALID_ARGUMENT = 1,
  UEW_ERR_DIMENSION_MISMATCH = 2,
  UEW_ERR_NOT_HERMITIAN = 3,
  UEW_ERR_NOT_STATE = 4,
  UEW_ERR_PARSE = 5,
  UEW_ERR_IO = 6,
  UEW_ERR_NON_CONVERGENCE = 7,
  UEW_ERR_EMPTY_FEASIBLE_SET = 8,
  UEW_ERR_ASSUMPTION_VIOLATED = 9,
  UEW_ERR_BRACKET = 10,
  UEW_ERR_TOO_LARGE = 11,
  UEW_ERR_INTERNAL = 99
} uew_status;

typedef enum uew_side {
  UEW_SIDE_LEQ = 0, /* Tr(C rho) <= c */
  UEW_SIDE_GEQ = 1, /* Tr(C rho) >= c */
  UEW_SIDE_BOUNDARY = 2
} uew_side;

typedef enum uew_case {
  UEW_CASE_I = 0,
  UEW_CASE_II = 1,
  UEW_CASE_DEGENERATE = 2
} uew_case;

typedef enum uew_povm {
  UEW_POVM_COMPLETE = 0,
  UEW_POVM_AS_PRINTED = 1
} uew_povm;

typedef struct uew_config {
  int restarts;
  int grid_theta;
  int grid_phi;
  double seesaw_tol;
  int seesaw_max_iter;
  double feas_tol;
  uint64_t seed;
  unsigned threads; /* 0 = hardware concurrency */
} uew_config;

typedef struct uew_verdict {
  int entangled;
  uew_side side_used;
  double witness_value;
  double bound_c;      /* p_c of the test operator */
  double bound_ctilde; /* p_c~ of the test operator */
} uew_verdict;

typedef struct uew_operator uew_operator;
typedef struct uew_state uew_state;
typedef struct uew_result uew_result;
typedef struct uew_text uew_text;

UEW_API const char* uew_version(void);
UEW_API const char* uew_last_error(void);
UEW_API const char* uew_status_name(uew_status status);
UEW_API void uew_config_default(uew_config* cfg);
/* Parses a decimal literal or an exact ratio such as "2/3". */
UEW_API uew_status uew_parse_real(const char* text, double* out);

/* Operators. `entries` holds 2 * n * n doubles with n = da * db. */
UEW_API uew_status uew_operator_create(size_t da, size_t db,
                                       const double* entries,
                                       uew_operator** out);
UEW_API uew_status uew_operator_load(const char* path, uew_operator** out);
UEW_API uew_status uew_operator_save(const uew_operator* op, const char* path);
UEW_API uew_status uew_operator_dims(const uew_operator* op, size_t* da,
                                     size_t* db);
UEW_API uew_status uew_operator_entries(const uew_operator* op, double* buf,
                                        size_t len);
UEW_API void uew_operator_free(uew_operator* op);

/* Density matrices. */
UEW_API uew_status uew_state_from_operator(const uew_operator* op,
                                           uew_state** out);
UEW_API uew_status uew_state_load(const char* path, uew_state** out);
UEW_API uew_status uew_state_save(const uew_state* state, const char* path);
UEW_API uew_status uew_expectation(const uew_operator* op,
                                   const uew_state* state, double* out);
UEW_API void uew_state_free(uew_state* state);

/* The two-qubit benchmark: constraint P1(x)P1, test P2(x)P2 and the noisy
 * target state rho_p. */
UEW_API uew_status uew_example31_create(double x, uew_povm povm,
                                        uew_operator** constraint,
                                        uew_operator** test);
UEW_API uew_status uew_example31_state(double p, uew_state** out);

/* Suprema over pure product states. */
UEW_API uew_status uew_sup_unconstrained(const uew_operator* test,
                                         const uew_config* cfg,
                                         uew_result** out);
UEW_API uew_status uew_sup_constrained(const uew_operator* test,
                                       const uew_operator* constraint,
                                       double cvalue, uew_side side,
                                       const uew_config* cfg,
                                       uew_result** out);
UEW_API double uew_result_value(const uew_result* r);
UEW_API int uew_result_converged(const uew_result* r);
UEW_API int uew_result_boundary_active(const uew_result* r);
UEW_API double uew_result_constraint_value(const uew_result* r);
UEW_API int uew_result_iterations(const uew_result* r);
UEW_API const char* uew_result_method(const uew_result* r);
/* Copies the two factors of the optimal product ket. */
UEW_API uew_status uew_result_argmax(const uew_result* r, double* a,
                                     size_t len_a, double* b, size_t len_b);
UEW_API void uew_result_free(uew_result* r);

UEW_API uew_status uew_classify_case(const uew_operator* test,
                                     const uew_operator* constraint,
                                     double cvalue, const uew_config* cfg,
                                     uew_case* out);
/* *has_finite = 0 when no finite alpha_0 exists above `bracket_min`. */
UEW_API uew_status uew_compute_alpha0(const uew_operator* test,
                                      const uew_operator* constraint,
                                      double cvalue, double bracket_min,
                                      const uew_config* cfg, int* has_finite,
                                      double* alpha0);

/* Applies the witness pair of N_alpha; alpha = -INFINITY selects L - C. */
UEW_API uew_status uew_detect(const uew_state* state, const uew_operator* test,
                              const uew_operator* constraint, double cvalue,
                              double alpha, const uew_config* cfg,
                              uew_verdict* out);

/* CSV outputs. */
UEW_API uew_status uew_scan_example31_csv(double x, double cvalue,
                                          const double* alphas, size_t count,
                                          const uew_config* cfg,
                                          uew_text** out);
UEW_API uew_status uew_plane_csv(const char* const* labels,
                                 const uew_state* const* states, size_t count,
                                 const uew_operator* test,
                                 const uew_operator* constraint,
                                 uew_text** out);
UEW_API const char* uew_text_data(const uew_text* text);
UEW_API size_t uew_text_size(const uew_text* text);
UEW_API void uew_text_free(uew_text* text);

#ifdef __cplusplus
}
#endif

#endif /* UEW_UEW_H_ */
