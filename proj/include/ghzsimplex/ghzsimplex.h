// Copyright 2026 The ghzsimplex Authors
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

#ifndef GHZSIMPLEX_H
#define GHZSIMPLEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(GHZ_BUILDING_LIBRARY)
#define GHZ_API __attribute__((visibility("default")))
#else
#define GHZ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ghz_status {
    GHZ_OK = 0,
    GHZ_ERR_INVALID_ARGUMENT = 1,
    GHZ_ERR_DIMENSION_MISMATCH = 2,
    GHZ_ERR_SIZE_BUDGET = 3,
    GHZ_ERR_NOT_HERMITIAN = 4,
    GHZ_ERR_OUT_OF_RANGE = 5,
    GHZ_ERR_UNSUPPORTED = 6,
    GHZ_ERR_NO_SIGN_CHANGE = 7,
    GHZ_ERR_IO = 8,
    GHZ_ERR_INTERNAL = 9
} ghz_status;

typedef struct ghz_state ghz_state;
typedef struct ghz_density ghz_density;
typedef struct ghz_scan ghz_scan;

typedef enum ghz_cell_class {
    GHZ_CELL_INVALID = 0,
    GHZ_CELL_PPT = 1,
    GHZ_CELL_NPT_UNDETECTED = 2,
    GHZ_CELL_GME_DETECTED = 3
} ghz_cell_class;

typedef struct ghz_scan_cell {
    double alpha;
    double beta;
    double min_eig;
    double min_pt_eig;
    double q0;
    ghz_cell_class cls;
} ghz_scan_cell;

/* Library metadata and errors. The last error message is thread-local. */
GHZ_API const char* ghz_version(void);
GHZ_API const char* ghz_status_name(ghz_status status);
GHZ_API const char* ghz_last_error(void);
GHZ_API void ghz_string_free(char* s);

/* Pure states. Labels are digit arrays (s_1..s_{n-2}, k, l). */
GHZ_API ghz_status ghz_state_ghz(int n, int d, const int* label, size_t label_len, ghz_state** out);
GHZ_API ghz_status ghz_state_from_amplitudes(int n, int d, const double* re, const double* im, size_t len,
                                             ghz_state** out);
GHZ_API ghz_status ghz_state_dim(const ghz_state* s, size_t* out);
GHZ_API ghz_status ghz_state_amplitudes(const ghz_state* s, double* re, double* im, size_t len);
GHZ_API void ghz_state_free(ghz_state* s);

/* Density operators. family_json holds {family, n, d, label, alpha, beta, mu}. */
GHZ_API ghz_status ghz_density_family(const char* family_json, ghz_density** out);
GHZ_API ghz_status ghz_density_from_state(const ghz_state* s, ghz_density** out);
GHZ_API ghz_status ghz_density_dim(const ghz_density* rho, size_t* out);
GHZ_API ghz_status ghz_density_min_eig(const ghz_density* rho, double* out);
GHZ_API ghz_status ghz_density_min_pt_eig(const ghz_density* rho, double* out);
GHZ_API ghz_status ghz_density_validity_json(const ghz_density* rho, char** out_json);
GHZ_API void ghz_density_free(ghz_density* rho);

/* Criteria. options_json: {criterion: "q_ghz"|"q_dicke", label, restarts, seed, max_evaluations, threads, m}. */
GHZ_API ghz_status ghz_q_ghz_aligned(const ghz_density* rho, const int* label, size_t label_len, char** out_json);
GHZ_API ghz_status ghz_q_dicke(const ghz_density* rho, int m, char** out_json);
GHZ_API ghz_status ghz_optimize(const ghz_density* rho, const char* options_json, char** out_json);

/* Full report for a family point: validity, aligned Q_GHZ over the component states, closed forms,
   computational Q_Dicke and, when options request it, optimized values. */
GHZ_API ghz_status ghz_criteria_report_json(const char* family_json, const char* options_json, char** out_json);

/* Closed forms. */
GHZ_API ghz_status ghz_noise_thresholds_json(int n, int d, char** out_json);
GHZ_API ghz_status ghz_q0_noise(int n, int d, double alpha, double* out);
GHZ_API ghz_status ghz_pair_closed_forms_json(int d, const int* label, size_t label_len, double alpha, double beta,
                                              char** out_json);

/* Basis report {states, max_gram_offdiag, max_gram_diag_error}; export writes the amplitudes as JSON. */
GHZ_API ghz_status ghz_basis_report_json(int n, int d, char** out_json);
GHZ_API ghz_status ghz_basis_export(int n, int d, const char* path);

/* Interferometer. input is a string over H,V,R,L,+,-,0,1. */
GHZ_API ghz_status ghz_interfere_json(int qubits, const char* input, const char* options_json, char** out_json);

/* Scans. */
GHZ_API ghz_status ghz_scan_run(const char* config_json, ghz_scan** out);
GHZ_API ghz_status ghz_scan_size(const ghz_scan* scan, size_t* out);
GHZ_API ghz_status ghz_scan_cell_at(const ghz_scan* scan, size_t index, ghz_scan_cell* out);
GHZ_API ghz_status ghz_scan_csv(const ghz_scan* scan, char** out);
GHZ_API ghz_status ghz_scan_json(const ghz_scan* scan, char** out);
GHZ_API ghz_status ghz_scan_summary_json(const ghz_scan* scan, char** out);
GHZ_API void ghz_scan_free(ghz_scan* scan);
GHZ_API ghz_status ghz_scan_config_normalize(const char* config_json, char** out_json);
GHZ_API ghz_status ghz_compare_geometries_json(const char* configs_json, char** out_json);
GHZ_API ghz_status ghz_find_threshold(double (*f)(double, void*), void* ctx, double lo, double hi, double tol,
                                      double* out);

/* Acceptance checks. ids may be NULL to run all. */
GHZ_API ghz_status ghz_verify_json(const int* ids, size_t count, uint64_t seed, int threads, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
