/*
 * Copyright (c) 2026 The phaselab authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the phaselab core: quantum-state phase measures, free
 * operation classification, conversion channels, intrinsic phase, and the
 * randomized axiom-verification harness.
 *
 * Conventions:
 *  - Basis indices are 0-based.
 *  - Matrices cross the boundary as row-major interleaved doubles: entry
 *    (j,k) of a dim x dim matrix occupies buf[2*(j*dim+k)] (real part) and
 *    buf[2*(j*dim+k)+1] (imaginary part). Vectors are interleaved the same
 *    way with 2*dim doubles.
 *  - Functions return PL_OK on success; on failure pl_last_error() describes
 *    the violated invariant for the calling thread.
 */

#ifndef PHASELAB_H
#define PHASELAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pl_status {
  PL_OK = 0,
  PL_ERR_INVALID_ARGUMENT = 1,
  PL_ERR_NOT_HERMITIAN = 2,
  PL_ERR_NOT_PSD = 3,
  PL_ERR_BAD_TRACE = 4,
  PL_ERR_NOT_NORMALIZED = 5,
  PL_ERR_DIMENSION_MISMATCH = 6,
  PL_ERR_BAD_DIMENSION = 7,
  PL_ERR_BLOCH_OUT_OF_BALL = 8,
  PL_ERR_EPSILON_TOO_LARGE = 9,
  PL_ERR_NOT_EQUIMODULAR = 10,
  PL_ERR_NOT_SUBNORMALIZED = 11,
  PL_ERR_TARGET_NOT_NONNEGATIVE = 12,
  PL_ERR_SOLVER_STALLED = 13,
  PL_ERR_PARSE = 14,
  PL_ERR_INTERNAL = 15
} pl_status;

typedef enum pl_measure { PL_MEASURE_P1 = 0, PL_MEASURE_ROBUSTNESS = 1 } pl_measure;

typedef enum pl_operator_tag {
  PL_OP_O0 = 0,
  PL_OP_O1 = 1,
  PL_OP_O2 = 2,
  PL_OP_NOT_FREE = 3
} pl_operator_tag;

typedef enum pl_operation_class {
  PL_CLASS_CF = 0,
  PL_CLASS_CF_PRIME = 1,
  PL_CLASS_NOT_FREE = 2
} pl_operation_class;

typedef enum pl_axiom {
  PL_AXIOM_P1 = 0,
  PL_AXIOM_P2 = 1,
  PL_AXIOM_P3 = 2,
  PL_AXIOM_P4 = 3,
  PL_AXIOM_P5 = 4,
  PL_AXIOM_CONJ_INV = 5,
  PL_AXIOM_PERM_INV = 6
} pl_axiom;

/* Last error message for the calling thread; valid until the next failing
 * call on the same thread. */
const char* pl_last_error(void);
const char* pl_version(void);

typedef struct pl_state pl_state;
typedef struct pl_kraus pl_kraus;

/* ---- states ---------------------------------------------------------- */

/* Validates a density matrix (Hermitian, PSD, unit trace). */
pl_status pl_state_create(int dim, const double* reim, pl_state** out);
/* Validates a unit-norm amplitude vector; the handle keeps both the vector
 * and its projector. */
pl_status pl_state_create_pure(int dim, const double* amps_reim, pl_state** out);
void pl_state_free(pl_state* state);

int pl_state_dim(const pl_state* state);
/* 1 when the handle carries an amplitude vector (pure constructors). */
int pl_state_has_vector(const pl_state* state);
pl_status pl_state_get_matrix(const pl_state* state, double* reim);
pl_status pl_state_get_vector(const pl_state* state, double* amps_reim);

/* pure != 0 draws a Gaussian ray, otherwise a Ginibre mixed state. */
pl_status pl_state_random(int dim, int pure, uint64_t seed, pl_state** out);
/* regular != 0: the evenly spaced phase state; otherwise a random closed
 * polygon composition. */
pl_status pl_state_max_phase(int dim, int regular, uint64_t seed, pl_state** out);
pl_status pl_state_coherent(double eps_re, double eps_im, int trunc_dim, pl_state** out,
                            double* truncation_weight);
pl_status pl_state_from_bloch(double x, double y, double z, pl_state** out);
pl_status pl_state_to_bloch(const pl_state* state, double* x, double* y, double* z);
/* tol <= 0 selects the library default (1e-9). */
pl_status pl_state_is_zero_phase(const pl_state* state, double tol, int* out);
pl_status pl_state_conjugate(const pl_state* state, pl_state** out);

/* Vertices M_0..M_dim of the standard-form polygon walk; out has
 * 2*(dim+1) doubles. Requires an equimodular amplitude vector. */
pl_status pl_polygon_vertices(const pl_state* state, double* vertices_reim);

/* ---- measures -------------------------------------------------------- */

pl_status pl_measure_p1(const pl_state* state, double* out);
pl_status pl_measure_p1_pure(const pl_state* state, double* out);
pl_status pl_p1_coherent_closed(double eps_re, double eps_im, double* out);
/* Closed form for qubits, bisection solver otherwise. */
pl_status pl_measure_robustness(const pl_state* state, double* out);
pl_status pl_robustness_closed_qubit(const pl_state* state, double* out);
/* Always runs the solver. tol <= 0 selects the default (1e-6); tau, residual
 * and iterations may be NULL. */
pl_status pl_robustness_solve(const pl_state* state, double tol, double* s_star,
                              pl_state** tau, double* residual, int* iterations);

/* ---- operations ------------------------------------------------------ */

/* ops_reim holds count matrices back to back (2*dim*dim doubles each). */
pl_status pl_kraus_create(int dim, int count, const double* ops_reim, pl_kraus** out);
void pl_kraus_free(pl_kraus* ks);
int pl_kraus_dim(const pl_kraus* ks);
int pl_kraus_count(const pl_kraus* ks);
pl_status pl_kraus_get(const pl_kraus* ks, int index, double* reim);
pl_status pl_kraus_is_channel(const pl_kraus* ks, int* out);

typedef struct pl_witness {
  int l, m;           /* probe levels, l < m */
  double p, x;        /* probe parameters */
  int operator_index; /* offending Kraus operator */
  int row, col;       /* offending entry of K sigma K^dagger */
  double violation;   /* max(-Re, |Im|) at that entry */
} pl_witness;

typedef struct pl_operator_report {
  int tag;              /* pl_operator_tag */
  double removed_phase; /* global phase divided out for O1/O2 */
  int has_witness;
  pl_witness witness;
} pl_operator_report;

typedef struct pl_operation_report {
  int cls; /* tightest pl_operation_class */
  int is_cf;
  int is_cf_prime;
  int is_channel;
} pl_operation_report;

/* per_operator may be NULL; otherwise it receives pl_kraus_count entries. */
pl_status pl_classify_operation(const pl_kraus* ks, pl_operation_report* report,
                                pl_operator_report* per_operator);
/* O0 factors k = s psi^dagger of one operator: s gets dim doubles, psi gets
 * 2*dim doubles. Fails unless the operator classified O0. */
pl_status pl_classify_operator_factors(const pl_kraus* ks, int index, double* s,
                                       double* psi_reim);

/* use_seed != 0 draws random nonnegative directions for the appended
 * operators; otherwise they are deterministic multiples of |1>. */
pl_status pl_complete_to_channel(const pl_kraus* ks, int use_seed, uint64_t seed,
                                 pl_kraus** out);
pl_status pl_prop2_channel(const pl_state* target, pl_kraus** out);
pl_status pl_prop3_channel(int dim, const double* moduli, pl_kraus** out);
pl_status pl_sample_free_operation(int dim, int cls, int n_ops, uint64_t seed, pl_kraus** out);

/* probabilities gets pl_kraus_count entries; total_reim (2*dim*dim, the
 * unnormalized sum of K rho K^dagger) and total_probability may be NULL. */
pl_status pl_apply_operation(const pl_kraus* ks, const pl_state* rho, double* probabilities,
                             double* total_reim, double* total_probability);
/* Normalized post-measurement state for one outcome; *normalized is NULL when
 * the probability falls below the 1e-12 floor. */
pl_status pl_apply_outcome(const pl_kraus* ks, const pl_state* rho, int index,
                           double* probability, pl_state** normalized);

/* ---- intrinsic phase -------------------------------------------------- */

typedef struct pl_gauge_report {
  double value;
  int method; /* 0 structural, 1 optimized */
  int certified_zero;
  int restarts_used;
} pl_gauge_report;

/* thetas receives dim gauge angles with rho_jk ~ |rho_jk| e^{i(th_j-th_k)}. */
pl_status pl_intrinsic_value(const pl_state* state, int measure, int restarts, uint64_t seed,
                             pl_gauge_report* report, double* thetas);
/* found reports whether a consistent profile exists; thetas (dim doubles) is
 * filled only in that case. tol <= 0 selects the default. */
pl_status pl_structural_zero_check(const pl_state* state, double tol, int* found,
                                   double* thetas);

/* ---- verification harness --------------------------------------------- */

typedef struct pl_check_report {
  int axiom;   /* pl_axiom */
  int measure; /* pl_measure */
  uint64_t trial_seed;
  double margin; /* signed slack; passes iff margin >= -tol */
  uint64_t inputs_digest;
  int passed;
} pl_check_report;

/* Runs `trials` randomized trials of one axiom for one measure over the given
 * dims (each in 2..8). exploratory_cf != 0 tests P1 under CF channels, a
 * regime the theorems do not cover; callers record but must not assert those
 * reports. reports receives `trials` entries. */
pl_status pl_check_axiom(int measure, int axiom, int trials, uint64_t seed, const int* dims,
                         int n_dims, int exploratory_cf, pl_check_report* reports);

#ifdef __cplusplus
}
#endif

#endif /* PHASELAB_H */
