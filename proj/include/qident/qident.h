/* qident — quantum pure-state identification toolkit.
 *
 * C interface to the qident shared library. The library computes the mean
 * success probability of identifying an input pure state with one of two
 * Haar-random reference states (given as N copies each) in three
 * independent ways — closed form, dense operator spectrum, and seeded
 * Monte Carlo — and constructs the optimal two-outcome measurement.
 *
 * Conventions:
 *   - every fallible function returns a qident_status and writes results
 *     through out-parameters; QIDENT_OK means all outputs are valid;
 *   - a detailed message for the most recent failure on the calling
 *     thread is available from qident_last_error_message();
 *   - operators are handed out as opaque qident_op handles owned by the
 *     caller and released with qident_op_free();
 *   - a dim_cap argument of 0 selects the default cap of 4096 on the
 *     total dimension of any dense operator.
 */

#ifndef QIDENT_QIDENT_H
#define QIDENT_QIDENT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QIDENT_API __declspec(dllexport)
#else
#define QIDENT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qident_status {
  QIDENT_OK = 0,
  QIDENT_ERR_ARGUMENT = 1, /* argument outside its documented domain */
  QIDENT_ERR_SIZE = 2,     /* dense dimension cap exceeded */
  QIDENT_ERR_OVERFLOW = 3, /* exact integer arithmetic out of range */
  QIDENT_ERR_CONTRACT = 4, /* operator violates a routine's contract */
  QIDENT_ERR_IO = 5,       /* file input/output failure */
  QIDENT_ERR_INTERNAL = 6
} qident_status;

/* Static name of a status code, e.g. "argument-error". */
QIDENT_API const char* qident_status_name(qident_status status);

/* Message for the last failure on this thread; empty string if none.
 * The pointer stays valid until the next failing qident call on the same
 * thread. */
QIDENT_API const char* qident_last_error_message(void);

QIDENT_API const char* qident_version(void);

/* ------------------------------------------------------------------ */
/* Closed forms                                                        */
/* ------------------------------------------------------------------ */

/* Dimension C(n+d-1, d-1) of the totally symmetric subspace of n qudits. */
QIDENT_API qident_status qident_sym_dim(int32_t n, int32_t d, uint64_t* out);

/* Mean trace distance (d-1)/(d-1/2) of two Haar-random pure states. */
QIDENT_API qident_status qident_mean_trace_distance(int32_t d, double* out);

/* Mean optimal discrimination probability 1/2 + (d-1)/(2d-1). */
QIDENT_API qident_status qident_p_disc_mean(int32_t d, double* out);

/* Mean identification probability for one reference copy:
 * 1/2 + sqrt(3)(d-1)/(6d). */
QIDENT_API qident_status qident_p_ident_n1(int32_t d, double* out);

/* Positive block eigenvalue sqrt(1 - ((J+1/2)/(N+1))^2); two_j = 2J must
 * be an odd integer in [1, 2N-1]. */
QIDENT_API qident_status qident_delta_qubit(int32_t two_j, int32_t n_copies,
                                            double* out);

/* Multiplicity of the two-row diagram [lambda1, 2N+1-lambda1] on
 * (C^d)^(2N+1); requires N+1 <= lambda1 <= 2N. */
QIDENT_API qident_status qident_two_row_multiplicity(int32_t lambda1,
                                                     int32_t n_copies,
                                                     int32_t d, uint64_t* out);

/* One block of the identification probability sum. */
typedef struct qident_term {
  int32_t lambda1;
  int32_t lambda2;
  uint64_t multiplicity;
  double delta;
} qident_term;

/* Mean identification probability for N reference copies in dimension d.
 * When `terms` is non-NULL it receives up to terms_capacity per-block
 * entries (the sum has exactly N of them, ascending lambda1);
 * *terms_written reports how many were stored. */
QIDENT_API qident_status qident_p_ident_general(int32_t n_copies, int32_t d,
                                                double* value,
                                                qident_term* terms,
                                                int32_t terms_capacity,
                                                int32_t* terms_written);

/* Qubit identification probability summed over total spin. */
QIDENT_API qident_status qident_p_ident_qubit(int32_t n_copies, double* out);

/* Large-N limit of the identification probability; equals
 * qident_p_disc_mean(d). */
QIDENT_API qident_status qident_p_ident_limit(int32_t d, double* out);

/* ------------------------------------------------------------------ */
/* Dense operators                                                     */
/* ------------------------------------------------------------------ */

typedef struct qident_op qident_op; /* opaque */

/* Identification operator for one input copy and N reference copies on the
 * full (2N+1)-qudit register (dimension d^(2N+1)). */
QIDENT_API qident_status qident_build_identification_operator(
    int32_t n_copies, int32_t d, uint64_t dim_cap, qident_op** out);

/* Same spectrum restricted to C^d (x) Sym^N (x) Sym^N
 * (dimension d * d_N^2); never materializes the full register. */
QIDENT_API qident_status qident_build_identification_operator_sym(
    int32_t n_copies, int32_t d, uint64_t dim_cap, qident_op** out);

/* Generalization to M input copies on the full (M+2N)-qudit register. */
QIDENT_API qident_status qident_build_mcopy_operator(int32_t m_copies,
                                                     int32_t n_copies,
                                                     int32_t d,
                                                     uint64_t dim_cap,
                                                     qident_op** out);

QIDENT_API void qident_op_free(qident_op* op);

/* Total dimension (rows) of the operator; 0 for NULL. */
QIDENT_API int64_t qident_op_dim(const qident_op* op);

/* Number of tensor factors of the operator's space; 0 for NULL. */
QIDENT_API int32_t qident_op_factor_count(const qident_op* op);

/* Local dimensions of the tensor factors. */
QIDENT_API qident_status qident_op_factor_dims(const qident_op* op,
                                               int32_t* dims,
                                               int32_t capacity);

/* Entries in row-major order as interleaved (real, imag) doubles;
 * `out` must hold 2 * dim * dim values. */
QIDENT_API qident_status qident_op_entries(const qident_op* op, double* out);

/* Eigenvalues in ascending order; `out` must hold dim values. Requires a
 * Hermitian operator. */
QIDENT_API qident_status qident_op_eigenvalues(const qident_op* op,
                                               double* out);

/* Sum of absolute eigenvalues. */
QIDENT_API qident_status qident_op_trace_norm(const qident_op* op,
                                              double* out);

/* Real part of tr[A B]. */
QIDENT_API qident_status qident_op_product_trace(const qident_op* a,
                                                 const qident_op* b,
                                                 double* out);

/* Binary dump (magic "QIDOP1", n: u32, d: u32, row-major complex entries
 * as little-endian double pairs). Only operators on uniform qudit
 * registers can be dumped. */
QIDENT_API qident_status qident_op_dump(const qident_op* op,
                                        const char* path);

/* Optimal measurement for a Hermitian traceless operator: e1 projects
 * onto the strictly positive eigenspace (eigenvalues > tol; tol <= 0
 * selects 1e-9 * max|entry|), e2 = identity - e1. */
QIDENT_API qident_status qident_build_optimal_povm(const qident_op* d_op,
                                                   double tol,
                                                   qident_op** e1,
                                                   qident_op** e2);

/* Identification probability 1/2 + tr|D| / (4 d_{N+M} d_N) for the
 * operator built at (M, N, d) (full register, or the restricted build when
 * M = 1). */
QIDENT_API qident_status qident_probability_from_operator(
    const qident_op* d_op, int32_t m_copies, int32_t n_copies, int32_t d,
    double* out);

/* ------------------------------------------------------------------ */
/* Monte Carlo                                                         */
/* ------------------------------------------------------------------ */

typedef struct qident_estimate {
  double mean;
  double std_error; /* sample standard deviation / sqrt(trials) */
  uint64_t trials;
  uint64_t seed;
} qident_estimate;

typedef enum qident_sim_mode {
  QIDENT_MODE_CONDITIONAL = 0, /* average exact per-trial success */
  QIDENT_MODE_OUTCOME = 1      /* sample outcomes, average 0/1 */
} qident_sim_mode;

/* Estimates the mean discrimination probability over Haar pairs.
 * Single-worker runs are bit-reproducible per seed; k-worker runs are
 * bit-reproducible per (seed, k). Requires trials >= 100. */
QIDENT_API qident_status qident_estimate_discrimination(
    int32_t d, uint64_t trials, uint64_t seed, int32_t workers,
    qident_estimate* out);

/* Estimates the mean identification probability against the optimal
 * measurement. */
QIDENT_API qident_status qident_estimate_identification(
    int32_t n_copies, int32_t d, uint64_t trials, uint64_t seed,
    qident_sim_mode mode, int32_t workers, uint64_t dim_cap,
    qident_estimate* out);

/* Same experiment with M input copies. */
QIDENT_API qident_status qident_estimate_mcopy(int32_t m_copies,
                                               int32_t n_copies, int32_t d,
                                               uint64_t trials, uint64_t seed,
                                               int32_t workers,
                                               uint64_t dim_cap,
                                               qident_estimate* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QIDENT_QIDENT_H */
