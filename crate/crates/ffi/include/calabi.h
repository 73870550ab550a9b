#ifndef CALABI_H
#define CALABI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum CalabiStatus {
  CALABI_STATUS_OK = 0,
  CALABI_STATUS_NULL_POINTER = 1,
  CALABI_STATUS_INVALID_ARGUMENT = 2,
  CALABI_STATUS_DOMAIN = 3,
  CALABI_STATUS_POLE = 4,
  CALABI_STATUS_OVERFLOW = 5,
  CALABI_STATUS_CONVERGENCE = 6,
  CALABI_STATUS_NUMERICAL = 7,
  CALABI_STATUS_PANIC = 8,
} CalabiStatus;

// Fundamental solution pair of one mode.
typedef struct CalabiPair CalabiPair;

// Particular solution of one mode equation.
typedef struct CalabiSolution CalabiSolution;

// Spectrum table sorted by eigenvalue.
typedef struct CalabiSpectrum CalabiSpectrum;

// Signed value stored as `sign · exp(log_abs)`; zero has sign 0.
typedef struct CalabiLogValue {
  int8_t sign;
  double log_abs;
} CalabiLogValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *calabi_last_error(void);

// `log I_nu(y)`.
enum CalabiStatus calabi_bessel_i_log(double nu, double y, struct CalabiLogValue *out);

// `log K_nu(y)`.
enum CalabiStatus calabi_bessel_k_log(double nu, double y, struct CalabiLogValue *out);

// `log M(beta, alpha, y)`.
enum CalabiStatus calabi_kummer_m_log(double beta,
                                      double alpha,
                                      double y,
                                      struct CalabiLogValue *out);

// `log U(beta, alpha, y)`.
enum CalabiStatus calabi_tricomi_u_log(double beta,
                                       double alpha,
                                       double y,
                                       struct CalabiLogValue *out);

// Modified Tricomi function `T(beta, alpha, y)` for `y < 0`.
enum CalabiStatus calabi_tri_t(double beta, double alpha, double y, struct CalabiLogValue *out);

// `Γ(x)` in log form, sign included.
enum CalabiStatus calabi_log_gamma(double x, struct CalabiLogValue *out);

// Builds the fundamental pair of mode `(k, j, lambda)` in dimension `n`.
enum CalabiStatus calabi_pair_new(size_t k,
                                  uint32_t j,
                                  double lambda,
                                  uint32_t n,
                                  struct CalabiPair **out);

// Releases a pair; null is ignored.
void calabi_pair_free(struct CalabiPair *pair);

// Growing solution `G(z)`.
enum CalabiStatus calabi_pair_log_g(const struct CalabiPair *pair,
                                    double z,
                                    struct CalabiLogValue *out);

// Decaying solution `D(z)`.
enum CalabiStatus calabi_pair_log_d(const struct CalabiPair *pair,
                                    double z,
                                    struct CalabiLogValue *out);

// `D'(z)`.
enum CalabiStatus calabi_pair_log_d_prime(const struct CalabiPair *pair,
                                          double z,
                                          struct CalabiLogValue *out);

// Closed-form Wronskian `G D' - G' D`.
enum CalabiStatus calabi_pair_wronskian(const struct CalabiPair *pair, double *out);

// Synthetic spectrum with eigenvalue ladders per weight.
enum CalabiStatus calabi_spectrum_toy(uint32_t n,
                                      double z0,
                                      double lambda_d,
                                      double delta,
                                      uint32_t j_max,
                                      size_t per_weight,
                                      uint64_t seed,
                                      double jitter,
                                      struct CalabiSpectrum **out);

// Reads a table in the text format written by the CLI. `text` must be
// NUL-terminated.
enum CalabiStatus calabi_spectrum_parse(const char *text, struct CalabiSpectrum **out);

// Releases a spectrum; null is ignored.
void calabi_spectrum_free(struct CalabiSpectrum *spec);

// Number of modes in the table.
enum CalabiStatus calabi_spectrum_len(const struct CalabiSpectrum *spec, size_t *out);

// Mode at sorted position `index`.
enum CalabiStatus calabi_spectrum_mode(const struct CalabiSpectrum *spec,
                                       size_t index,
                                       size_t *k,
                                       uint32_t *j,
                                       double *lambda,
                                       double *big_lambda);

// Solves one mode with source `amp · exp(eta0 · z^{n/2})` on `[z1, z_max]`.
enum CalabiStatus calabi_solve_mode_exp(size_t k,
                                        uint32_t j,
                                        double lambda,
                                        uint32_t n,
                                        double amp,
                                        double eta0,
                                        double z1,
                                        double z_max,
                                        struct CalabiSolution **out);

// Value of the solution at `z`.
enum CalabiStatus calabi_solution_eval(const struct CalabiSolution *sol, double z, double *out);

// Releases a solution; null is ignored.
void calabi_solution_free(struct CalabiSolution *sol);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CALABI_H */
