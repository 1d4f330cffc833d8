/* SPDX-License-Identifier: Apache-2.0 */
/*
 * qfb: exponential tail bounds and moment bounds for PSD quadratic forms
 * in subgaussian random vectors, with Monte Carlo certification.
 *
 * Conventions:
 *  - Every fallible function returns a qfb_status; results travel through
 *    out-parameters, written only on QFB_OK.
 *  - On failure, qfb_last_error() returns a thread-local message.
 *  - Objects created by the create and load functions are released by the
 *    matching *_free; strings returned through char** are released by
 *    qfb_string_free.
 */
#ifndef QFB_H
#define QFB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qfb_status {
  QFB_OK = 0,
  QFB_ERROR_INPUT = 2,   /* malformed or inconsistent input */
  QFB_ERROR_DOMAIN = 3,  /* valid input outside an operation's domain */
  QFB_ERROR_INTERNAL = 4 /* unexpected failure */
} qfb_status;

typedef enum qfb_family {
  QFB_FAMILY_GAUSSIAN = 0,
  QFB_FAMILY_RADEMACHER = 1,
  QFB_FAMILY_UNIFORM = 2
} qfb_family;

typedef struct qfb_matrix qfb_matrix;
typedef struct qfb_summary qfb_summary;
typedef struct qfb_sampler qfb_sampler;
typedef struct qfb_martingale qfb_martingale;
typedef struct qfb_tail qfb_tail;
typedef struct qfb_mgf qfb_mgf;
typedef struct qfb_design qfb_design;
typedef struct qfb_ols_report qfb_ols_report;

/* With probability at least 1 - e^{-t}, ||Ax||^2 <= epsilon;
 * epsilon = term_trace + term_deviation + term_mean. */
typedef struct qfb_tail_bound {
  double t;
  double epsilon;
  double term_trace;
  double term_deviation;
  double term_mean;
} qfb_tail_bound;

typedef struct qfb_bound_comparison {
  double t;
  double theorem_bound;
  double bernstein_bound;
  double bernstein_bound_sq;
  double ratio;
} qfb_bound_comparison;

const char* qfb_version(void);
/* Thread-local message for the most recent failure on this thread. */
const char* qfb_last_error(void);
void qfb_string_free(char* s);

/* ---- matrices ---- */
qfb_status qfb_matrix_create(size_t rows, size_t cols, const double* row_major,
                             qfb_matrix** out);
qfb_status qfb_matrix_load_csv(const char* path, qfb_matrix** out);
qfb_status qfb_matrix_parse_csv(const char* text, qfb_matrix** out);
void qfb_matrix_free(qfb_matrix* m);
qfb_status qfb_matrix_rows(const qfb_matrix* m, size_t* out);
qfb_status qfb_matrix_cols(const qfb_matrix* m, size_t* out);
/* buf_len must equal rows*cols. */
qfb_status qfb_matrix_copy_row_major(const qfb_matrix* m, double* buf,
                                     size_t buf_len);
/* buf_len must equal the column count. */
qfb_status qfb_matrix_column_norms(const qfb_matrix* m, double* buf, size_t buf_len);

/* ---- spectral summaries ---- */
/* mu may be NULL (no mean); otherwise mu_len must equal the column count. */
qfb_status qfb_summary_create(const qfb_matrix* a, const double* mu, size_t mu_len,
                              qfb_summary** out);
qfb_status qfb_summary_from_eigenvalues(const double* rho, size_t len, int has_mean,
                                        double mean_image_sq, qfb_summary** out);
void qfb_summary_free(qfb_summary* s);
qfb_status qfb_summary_trace(const qfb_summary* s, double* out);
qfb_status qfb_summary_trace_sq(const qfb_summary* s, double* out);
qfb_status qfb_summary_op_norm(const qfb_summary* s, double* out);
qfb_status qfb_summary_eigenvalue_count(const qfb_summary* s, size_t* out);
qfb_status qfb_summary_copy_eigenvalues(const qfb_summary* s, double* buf,
                                        size_t buf_len);

/* ---- bounds ---- */
qfb_status qfb_h1(double a, double* out);
qfb_status qfb_h1_inverse(double b, double* out);
qfb_status qfb_gaussian_quadratic_bound(const qfb_summary* s, double t,
                                        qfb_tail_bound* out);
qfb_status qfb_subgaussian_quadratic_bound(const qfb_summary* s, double sigma,
                                           int use_mean, double t,
                                           qfb_tail_bound* out);
qfb_status qfb_tail_probability_at(const qfb_summary* s, double sigma, double epsilon,
                                   double* out);
qfb_status qfb_mgf_upper_bound(const qfb_summary* s, double sigma, int use_mean,
                               double eta, double* out);
qfb_status qfb_mgf_domain_limit(const qfb_summary* s, double sigma, double* out);
qfb_status qfb_gaussian_cgf_bound(const double* alpha, const double* beta, size_t len,
                                  double lambda, double* out);
qfb_status qfb_chi2_tail_bound(const double* gamma, size_t len, double t, double* out);
qfb_status qfb_bernstein_bound(double v, double b, double t, double* out);
qfb_status qfb_centered_norm_bound(double v, double b, double t, double* out);
qfb_status qfb_vector_bernstein_bound(double v, double b, double t, double* out);
qfb_status qfb_compare_bounds(const qfb_summary* s, const double* column_norms,
                              size_t len, double t, qfb_bound_comparison* out);

/* ---- closed-form oracles ---- */
qfb_status qfb_chi2_survival(double x, uint32_t df, double* out);
qfb_status qfb_normal_upper_tail(double z, double* out);
qfb_status qfb_gaussian_quadratic_mgf(const double* rho, size_t len, double eta,
                                      double* out);
qfb_status qfb_gaussian_quadratic_cgf(const double* alpha, const double* beta,
                                      size_t len, double lambda, double* out);
qfb_status qfb_binomial_upper_confidence(uint64_t successes, uint64_t trials,
                                         double confidence, double* out);

/* ---- samplers ---- */
qfb_status qfb_family_from_string(const char* name, int* out);
const char* qfb_family_name(int family);
qfb_status qfb_declared_sigma(int family, double scale, double* out);
qfb_status qfb_sampler_create(int family, size_t dimension, double scale,
                              const double* mu, size_t mu_len, qfb_sampler** out);
void qfb_sampler_free(qfb_sampler* s);
qfb_status qfb_sampler_declared_sigma(const qfb_sampler* s, double* out);
qfb_status qfb_sampler_has_mean(const qfb_sampler* s, int* out);
/* buf_len must equal the sampler dimension. */
qfb_status qfb_sample_vector(const qfb_sampler* s, uint64_t master_seed,
                             uint64_t stream_index, double* buf, size_t buf_len);

qfb_status qfb_martingale_create(const qfb_matrix* columns, int adapted_gain,
                                 qfb_martingale** out);
void qfb_martingale_free(qfb_martingale* m);
qfb_status qfb_martingale_bounds(const qfb_martingale* m, double* v, double* b);

/* ---- Monte Carlo experiments ---- */
/* sigma <= 0 means "use the sampler's declared proxy". Trial j always uses
 * stream (master_seed, j): counts are invariant to n_streams. */
qfb_status qfb_estimate_tail(const qfb_matrix* a, const qfb_sampler* sampler,
                             double sigma, const double* t_grid, size_t t_len,
                             uint64_t n_trials, uint64_t master_seed,
                             unsigned n_streams, qfb_tail** out);
qfb_status qfb_martingale_experiment(const qfb_martingale* m, const double* t_grid,
                                     size_t t_len, uint64_t n_trials,
                                     uint64_t master_seed, qfb_tail** out);
void qfb_tail_free(qfb_tail* t);
qfb_status qfb_tail_size(const qfb_tail* t, size_t* out);
qfb_status qfb_tail_trials(const qfb_tail* t, uint64_t* out);
qfb_status qfb_tail_point(const qfb_tail* t, size_t index, double* t_value,
                          double* threshold, uint64_t* exceed_count, double* ci_upper,
                          double* target, int* certifiable, int* pass);
qfb_status qfb_tail_all_pass(const qfb_tail* t, int* out);
qfb_status qfb_tail_to_csv(const qfb_tail* t, char** out);
qfb_status qfb_tail_to_json(const qfb_tail* t, char** out);

qfb_status qfb_estimate_mgf(const qfb_matrix* a, const qfb_sampler* sampler,
                            double sigma, const double* eta_grid, size_t eta_len,
                            uint64_t n_trials, uint64_t master_seed, qfb_mgf** out);
void qfb_mgf_free(qfb_mgf* m);
qfb_status qfb_mgf_size(const qfb_mgf* m, size_t* out);
qfb_status qfb_mgf_point(const qfb_mgf* m, size_t index, double* eta,
                         double* empirical, double* empirical_se, double* decoupled,
                         double* decoupled_se, double* bound, int* chain_ok);
qfb_status qfb_mgf_all_ok(const qfb_mgf* m, int* out);
qfb_status qfb_mgf_to_csv(const qfb_mgf* m, char** out);
qfb_status qfb_mgf_to_json(const qfb_mgf* m, char** out);

/* ---- fixed-design least squares ---- */
qfb_status qfb_design_create(const qfb_matrix* x, qfb_design** out);
qfb_status qfb_design_random(size_t n, size_t d, uint64_t seed, qfb_design** out);
void qfb_design_free(qfb_design* d);
qfb_status qfb_design_dims(const qfb_design* d, size_t* n, size_t* cols);
qfb_status qfb_fit_ols(const qfb_design* d, const double* y, size_t y_len,
                       double* beta_out, size_t beta_len);
qfb_status qfb_excess_loss(const qfb_design* d, const double* beta_hat,
                           const double* beta_star, size_t len, double* out);
qfb_status qfb_risk_certificate(const qfb_design* d, double sigma, double t,
                                int strict_convention, double* out);
/* sigma for the certificate is the noise sampler's declared proxy. */
qfb_status qfb_run_ols_experiment(const qfb_design* d, const double* beta_star,
                                  size_t beta_len, const qfb_sampler* noise,
                                  uint64_t replicates, const double* t_grid,
                                  size_t t_len, uint64_t master_seed,
                                  int strict_convention, unsigned n_streams,
                                  qfb_ols_report** out);
void qfb_ols_report_free(qfb_ols_report* r);
qfb_status qfb_ols_report_mean_loss(const qfb_ols_report* r, double* mean,
                                    double* theory);
qfb_status qfb_ols_report_all_pass(const qfb_ols_report* r, int* out);
qfb_status qfb_ols_report_to_csv(const qfb_ols_report* r, char** out);
qfb_status qfb_ols_report_to_json(const qfb_ols_report* r, char** out);

/* ---- rendering of plain bound tables ---- */
qfb_status qfb_bound_rows_to_csv(const qfb_tail_bound* rows, size_t len, char** out);
qfb_status qfb_bound_rows_to_json(const qfb_tail_bound* rows, size_t len, char** out);
qfb_status qfb_comparison_rows_to_csv(const qfb_bound_comparison* rows, size_t len,
                                      char** out);
qfb_status qfb_comparison_rows_to_json(const qfb_bound_comparison* rows, size_t len,
                                       char** out);

/* ---- acceptance battery ---- */
/* Runs the full check battery; report_text receives one line per criterion.
 * all_pass is 1 only if every criterion passed. Zero trial counts select
 * the defaults (1e5 tail trials, 1e6 MGF trials). */
qfb_status qfb_run_acceptance(uint64_t tail_trials, uint64_t mgf_trials,
                              uint64_t master_seed, char** report_text,
                              int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* QFB_H */
