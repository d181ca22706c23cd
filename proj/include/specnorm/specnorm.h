/*
 * specnorm — certified weighted spectral norms for complex matrices.
 *
 * For any square complex matrix A and any epsilon > 0 the library builds an
 * invertible transform P such that the weighted spectral norm
 * ||M|| = ||P M P^-1||_2 satisfies rho(A) <= ||A|| <= rho(A) + epsilon,
 * together with the induced vector norm ||x|| = ||P x||_2, and emits a
 * numerically verified certificate. A small consensus harness demonstrates
 * the intended use: certifying per-step contraction of disagreement
 * dynamics over directed graphs.
 *
 * All handles are opaque; every fallible call reports a specnorm_status.
 * A human-readable detail message for the most recent failure on the
 * calling thread is available from specnorm_last_error(). Handles are
 * immutable after creation and may be shared across threads; creation and
 * destruction of a given handle must not race with its use.
 */

#ifndef SPECNORM_H
#define SPECNORM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum specnorm_status {
  SPECNORM_OK = 0,
  SPECNORM_ERR_INVALID_ARGUMENT = 1,
  SPECNORM_ERR_DIMENSION_MISMATCH = 2,
  SPECNORM_ERR_PARSE = 3,
  SPECNORM_ERR_NONFINITE = 4,
  SPECNORM_ERR_SINGULAR = 5,
  SPECNORM_ERR_NO_CONVERGENCE = 6,
  /* The accuracy target would need a transform with condition number above
   * the cap; the offending t and kappa are reported in the error detail. */
  SPECNORM_ERR_CONDITIONING = 7,
  SPECNORM_ERR_OVERFLOW = 8,
  SPECNORM_ERR_NO_SPECTRAL_GAP = 9,
  SPECNORM_ERR_IO = 10,
  SPECNORM_ERR_FORMAT = 11,
  SPECNORM_ERR_INTERNAL = 12
} specnorm_status;

/* Static name of a status code, e.g. "conditioning-exceeded". */
const char* specnorm_status_name(specnorm_status status);

/* Detail message for the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread. */
const char* specnorm_last_error(void);

const char* specnorm_version(void);

typedef struct specnorm_matrix specnorm_matrix;
typedef struct specnorm_norm specnorm_norm;
typedef struct specnorm_certificate specnorm_certificate;
typedef struct specnorm_report specnorm_report;

/* ---- matrices ---------------------------------------------------------- */

/* Dense n x n matrix from row-major split real/imaginary arrays. `im` may
 * be NULL for a real matrix. Returns NULL on failure. */
specnorm_matrix* specnorm_matrix_create(int32_t n, const double* re,
                                        const double* im,
                                        specnorm_status* status);

/* Parses matrix text: one row per line, comma-separated complex literals
 * (`2`, `1i`, `0.5-0.25i`). */
specnorm_matrix* specnorm_matrix_parse(const char* text,
                                       specnorm_status* status);

specnorm_matrix* specnorm_matrix_read(const char* path,
                                      specnorm_status* status);
specnorm_status specnorm_matrix_write(const specnorm_matrix* m,
                                      const char* path);

int32_t specnorm_matrix_dim(const specnorm_matrix* m);
specnorm_status specnorm_matrix_entry(const specnorm_matrix* m, int32_t i,
                                      int32_t j, double* re, double* im);

/* Content digest of the canonical serialization ("fnv1a64:<hex>"). Needs a
 * buffer of at least 32 bytes. */
specnorm_status specnorm_matrix_digest(const specnorm_matrix* m, char* buf,
                                       size_t len);

void specnorm_matrix_free(specnorm_matrix* m);

/* ---- spectra ----------------------------------------------------------- */

/* Eigenvalues (in deflation order) and spectral radius. eig_re/eig_im must
 * hold specnorm_matrix_dim(a) entries; either may be NULL. */
specnorm_status specnorm_spectrum(const specnorm_matrix* a, double* eig_re,
                                  double* eig_im, double* rho);

/* Eigensolver-independent spectral-radius estimate from k repeated
 * squarings of a rescaled power. */
specnorm_status specnorm_spectral_radius_gelfand(const specnorm_matrix* a,
                                                 int32_t k, double* out);

specnorm_status specnorm_spectral_norm(const specnorm_matrix* a, double tol,
                                       double* out);

/* ---- weighted norm construction and evaluation ------------------------- */

/* Builds the weighted norm for `a` at accuracy epsilon. max_kappa caps the
 * condition number of the transform (pass 0 for the default 1e12). On
 * success both handles are owned by the caller. */
specnorm_status specnorm_construct(const specnorm_matrix* a, double epsilon,
                                   double max_kappa, specnorm_norm** out_norm,
                                   specnorm_certificate** out_cert);

/* ||P m P^-1||_2 for any matrix of matching dimension. */
specnorm_status specnorm_matrix_norm(const specnorm_norm* w,
                                     const specnorm_matrix* m, double* out);

/* ||P x||_2 for a vector given as split real/imaginary arrays (im may be
 * NULL). */
specnorm_status specnorm_vector_norm(const specnorm_norm* w, const double* re,
                                     const double* im, int32_t n, double* out);

/* Independent re-verification of a norm against its source matrix:
 * recomputes the spectral radius two ways, re-evaluates the norm, checks
 * the two-sided bound, and exercises the induced-norm consistency on
 * `trials` seeded random vectors. Failures are recorded in the returned
 * certificate, not signalled as errors. */
specnorm_status specnorm_verify(const specnorm_norm* w,
                                const specnorm_matrix* a, int32_t trials,
                                uint64_t seed,
                                specnorm_certificate** out_cert);

int32_t specnorm_norm_dim(const specnorm_norm* w);
double specnorm_norm_t(const specnorm_norm* w);
double specnorm_norm_epsilon(const specnorm_norm* w);
double specnorm_norm_kappa(const specnorm_norm* w);
void specnorm_norm_free(specnorm_norm* w);

/* ---- certificates ------------------------------------------------------ */

double specnorm_certificate_rho(const specnorm_certificate* c);
double specnorm_certificate_norm_value(const specnorm_certificate* c);
double specnorm_certificate_epsilon(const specnorm_certificate* c);
double specnorm_certificate_t(const specnorm_certificate* c);
double specnorm_certificate_kappa(const specnorm_certificate* c);
double specnorm_certificate_delta_norm(const specnorm_certificate* c);
double specnorm_certificate_schur_residual(const specnorm_certificate* c);
int specnorm_certificate_verified(const specnorm_certificate* c);
void specnorm_certificate_free(specnorm_certificate* c);

/* Writes a deterministic certificate document (JSON, sorted keys, floats
 * as 17-significant-digit strings) containing the certificate, the
 * transform pair, and a digest of `a`. */
specnorm_status specnorm_certificate_save(const specnorm_certificate* c,
                                          const specnorm_norm* w,
                                          const specnorm_matrix* a,
                                          const char* path);

/* Loads a certificate document. digest_buf (>= 32 bytes, may be NULL)
 * receives the stored input digest. */
specnorm_status specnorm_certificate_load(const char* path,
                                          specnorm_norm** out_norm,
                                          specnorm_certificate** out_cert,
                                          char* digest_buf, size_t digest_len);

/* ---- consensus contraction demo ---------------------------------------- */

/* One-shot run: seeded random strongly connected digraph, row-stochastic
 * weights, certified weighted norm for the disagreement dynamics, and a
 * `steps`-step simulation from a seeded start vector. */
specnorm_status specnorm_contract_run(int32_t nodes, double edge_prob,
                                      uint64_t seed, double self_weight,
                                      double epsilon_fraction, int32_t steps,
                                      specnorm_report** out_report);

double specnorm_report_rho(const specnorm_report* r);
double specnorm_report_certified_rate(const specnorm_report* r);
double specnorm_report_max_ratio(const specnorm_report* r);
/* 1 when every recorded step ratio is within the certified rate. */
int specnorm_report_certified(const specnorm_report* r);
int32_t specnorm_report_step_count(const specnorm_report* r);
double specnorm_report_step_norm(const specnorm_report* r, int32_t k);
int32_t specnorm_report_ratio_count(const specnorm_report* r);
double specnorm_report_step_ratio(const specnorm_report* r, int32_t k);
specnorm_status specnorm_report_save(const specnorm_report* r,
                                     const char* path);
void specnorm_report_free(specnorm_report* r);

/* ---- vectors ----------------------------------------------------------- */

/* Parses complex literals separated by commas and/or newlines. On success
 * *out_re and *out_im are allocated with length *out_n; release both with
 * specnorm_buffer_free. */
specnorm_status specnorm_vector_parse(const char* text, double** out_re,
                                      double** out_im, int32_t* out_n);
void specnorm_buffer_free(double* p);

#ifdef __cplusplus
}
#endif

#endif /* SPECNORM_H */
