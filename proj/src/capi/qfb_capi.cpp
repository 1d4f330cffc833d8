// SPDX-License-Identifier: Apache-2.0
#include "qfb/qfb.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/acceptance.hpp"
#include "core/binomial.hpp"
#include "core/bounds.hpp"
#include "core/common.hpp"
#include "core/matrix.hpp"
#include "core/montecarlo.hpp"
#include "core/oracles.hpp"
#include "core/regression.hpp"
#include "core/render.hpp"
#include "core/samplers.hpp"
#include "core/spectral.hpp"

struct qfb_matrix {
  qfb::RealMatrix m;
};
struct qfb_summary {
  qfb::SpectralSummary s;
};
struct qfb_sampler {
  qfb::SubgaussianSpec spec;
};
struct qfb_martingale {
  qfb::MartingaleSpec spec;
};
struct qfb_tail {
  qfb::EmpiricalTail tail;
};
struct qfb_mgf {
  qfb::MgfCheck check;
};
struct qfb_design {
  qfb::FixedDesign design;
};
struct qfb_ols_report {
  qfb::ExcessRiskReport report;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* msg) { g_last_error = msg; }

// Run `fn`, translating exceptions into status codes. `fn` must write its
// outputs only when it completes.
template <typename Fn>
qfb_status wrap(Fn&& fn) {
  try {
    fn();
    return QFB_OK;
  } catch (const qfb::input_error& e) {
    set_error(e.what());
    return QFB_ERROR_INPUT;
  } catch (const qfb::domain_error& e) {
    set_error(e.what());
    return QFB_ERROR_DOMAIN;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return QFB_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QFB_ERROR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return QFB_ERROR_INTERNAL;
  }
}

void require_arg(const void* p, const char* what) {
  if (p == nullptr) throw qfb::input_error(std::string(what) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

qfb::Family to_family(int family) {
  switch (family) {
    case QFB_FAMILY_GAUSSIAN: return qfb::Family::gaussian;
    case QFB_FAMILY_RADEMACHER: return qfb::Family::rademacher;
    case QFB_FAMILY_UNIFORM: return qfb::Family::uniform_symmetric;
    default: throw qfb::input_error("unknown family code " + std::to_string(family));
  }
}

std::optional<Eigen::VectorXd> optional_mean(const double* mu, size_t mu_len) {
  if (mu == nullptr) return std::nullopt;
  if (mu_len == 0) throw qfb::input_error("mu_len must be positive when mu is set");
  return qfb::make_vector(std::span<const double>(mu, mu_len), "mu");
}

qfb::SubgaussianParams effective_params(const qfb_sampler* sampler, double sigma) {
  const double effective =
      sigma > 0.0 ? sigma : sampler->spec.declared_sigma;
  return qfb::SubgaussianParams{effective, sampler->spec.has_mean()};
}

qfb_tail_bound to_c(const qfb::TailBound& b) {
  return qfb_tail_bound{b.t, b.epsilon, b.term_trace, b.term_deviation, b.term_mean};
}

std::vector<qfb::TailBound> from_c(const qfb_tail_bound* rows, size_t len) {
  require_arg(rows, "rows");
  std::vector<qfb::TailBound> out(len);
  for (size_t i = 0; i < len; ++i)
    out[i] = qfb::TailBound{rows[i].t, rows[i].epsilon, rows[i].term_trace,
                            rows[i].term_deviation, rows[i].term_mean};
  return out;
}

}  // namespace

extern "C" {

const char* qfb_version(void) { return "0.1.0"; }

const char* qfb_last_error(void) { return g_last_error.c_str(); }

void qfb_string_free(char* s) { delete[] s; }

/* ---- matrices ---- */

qfb_status qfb_matrix_create(size_t rows, size_t cols, const double* row_major,
                             qfb_matrix** out) {
  return wrap([&] {
    require_arg(row_major, "row_major");
    require_arg(out, "out");
    auto m = qfb::RealMatrix::from_row_major(
        static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols),
        std::span<const double>(row_major, rows * cols));
    *out = new qfb_matrix{std::move(m)};
  });
}

qfb_status qfb_matrix_load_csv(const char* path, qfb_matrix** out) {
  return wrap([&] {
    require_arg(path, "path");
    require_arg(out, "out");
    *out = new qfb_matrix{qfb::load_matrix_csv(path)};
  });
}

qfb_status qfb_matrix_parse_csv(const char* text, qfb_matrix** out) {
  return wrap([&] {
    require_arg(text, "text");
    require_arg(out, "out");
    *out = new qfb_matrix{qfb::parse_matrix_csv(text, "<memory>")};
  });
}

void qfb_matrix_free(qfb_matrix* m) { delete m; }

qfb_status qfb_matrix_rows(const qfb_matrix* m, size_t* out) {
  return wrap([&] {
    require_arg(m, "matrix");
    require_arg(out, "out");
    *out = static_cast<size_t>(m->m.rows());
  });
}

qfb_status qfb_matrix_cols(const qfb_matrix* m, size_t* out) {
  return wrap([&] {
    require_arg(m, "matrix");
    require_arg(out, "out");
    *out = static_cast<size_t>(m->m.cols());
  });
}

qfb_status qfb_matrix_copy_row_major(const qfb_matrix* m, double* buf,
                                     size_t buf_len) {
  return wrap([&] {
    require_arg(m, "matrix");
    require_arg(buf, "buf");
    const size_t rows = static_cast<size_t>(m->m.rows());
    const size_t cols = static_cast<size_t>(m->m.cols());
    if (buf_len != rows * cols)
      throw qfb::input_error("buf_len must equal rows*cols");
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        buf[i * cols + j] = m->m.values(static_cast<Eigen::Index>(i),
                                        static_cast<Eigen::Index>(j));
  });
}

qfb_status qfb_matrix_column_norms(const qfb_matrix* m, double* buf, size_t buf_len) {
  return wrap([&] {
    require_arg(m, "matrix");
    require_arg(buf, "buf");
    if (buf_len != static_cast<size_t>(m->m.cols()))
      throw qfb::input_error("buf_len must equal the column count");
    for (Eigen::Index j = 0; j < m->m.cols(); ++j)
      buf[static_cast<size_t>(j)] = m->m.values.col(j).norm();
  });
}

/* ---- spectral summaries ---- */

qfb_status qfb_summary_create(const qfb_matrix* a, const double* mu, size_t mu_len,
                              qfb_summary** out) {
  return wrap([&] {
    require_arg(a, "matrix");
    require_arg(out, "out");
    *out = new qfb_summary{qfb::summarize(a->m, optional_mean(mu, mu_len))};
  });
}

qfb_status qfb_summary_from_eigenvalues(const double* rho, size_t len, int has_mean,
                                        double mean_image_sq, qfb_summary** out) {
  return wrap([&] {
    require_arg(rho, "rho");
    require_arg(out, "out");
    std::vector<double> values(rho, rho + len);
    std::optional<double> mean;
    if (has_mean) mean = mean_image_sq;
    *out = new qfb_summary{qfb::summary_from_eigenvalues(std::move(values), mean)};
  });
}

void qfb_summary_free(qfb_summary* s) { delete s; }

qfb_status qfb_summary_trace(const qfb_summary* s, double* out) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(out, "out");
    *out = s->s.trace_sigma;
  });
}

qfb_status qfb_summary_trace_sq(const qfb_summary* s, double* out) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(out, "out");
    *out = s->s.trace_sigma_sq;
  });
}

qfb_status qfb_summary_op_norm(const qfb_summary* s, double* out) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(out, "out");
    *out = s->s.op_norm;
  });
}

qfb_status qfb_summary_eigenvalue_count(const qfb_summary* s, size_t* out) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(out, "out");
    *out = s->s.rho.size();
  });
}

qfb_status qfb_summary_copy_eigenvalues(const qfb_summary* s, double* buf,
                                        size_t buf_len) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(buf, "buf");
    if (buf_len != s->s.rho.size())
      throw qfb::input_error("buf_len must equal the eigenvalue count");
    std::memcpy(buf, s->s.rho.data(), buf_len * sizeof(double));
  });
}

/* ---- bounds ---- */

qfb_status qfb_h1(double a, double* out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = qfb::h1(a);
  });
}

qfb_status qfb_h1_inverse(double b, double* out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = qfb::h1_inverse(b);
  });
}

qfb_status qfb_gaussian_quadratic_bound(const qfb_summary* s, double t,
                                        qfb_tail_bound* out) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(out, "out");
    *out = to_c(qfb::gaussian_quadratic_bound(s->s, t));
  });
}

qfb_status qfb_subgaussian_quadratic_bound(const qfb_summary* s, double sigma,
                                           int use_mean, double t,
                                           qfb_tail_bound* out) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(out, "out");
    *out = to_c(qfb::subgaussian_quadratic_bound(
        s->s, qfb::SubgaussianParams{sigma, use_mean != 0}, t));
  });
}

qfb_status qfb_tail_probability_at(const qfb_summary* s, double sigma, double epsilon,
                                   double* out) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(out, "out");
    *out = qfb::tail_probability_at(s->s, sigma, epsilon);
  });
}

qfb_status qfb_mgf_upper_bound(const qfb_summary* s, double sigma, int use_mean,
                               double eta, double* out) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(out, "out");
    *out = qfb::mgf_upper_bound(s->s, qfb::SubgaussianParams{sigma, use_mean != 0},
                                eta);
  });
}

qfb_status qfb_mgf_domain_limit(const qfb_summary* s, double sigma, double* out) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(out, "out");
    *out = qfb::mgf_domain_limit(s->s, sigma);
  });
}

qfb_status qfb_gaussian_cgf_bound(const double* alpha, const double* beta, size_t len,
                                  double lambda, double* out) {
  return wrap([&] {
    require_arg(alpha, "alpha");
    require_arg(beta, "beta");
    require_arg(out, "out");
    *out = qfb::gaussian_cgf_bound(std::span<const double>(alpha, len),
                                   std::span<const double>(beta, len), lambda);
  });
}

qfb_status qfb_chi2_tail_bound(const double* gamma, size_t len, double t,
                               double* out) {
  return wrap([&] {
    require_arg(gamma, "gamma");
    require_arg(out, "out");
    *out = qfb::chi2_tail_bound(std::span<const double>(gamma, len), t);
  });
}

qfb_status qfb_bernstein_bound(double v, double b, double t, double* out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = qfb::bernstein_bound(v, b, t);
  });
}

qfb_status qfb_centered_norm_bound(double v, double b, double t, double* out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = qfb::centered_norm_bound(v, b, t);
  });
}

qfb_status qfb_vector_bernstein_bound(double v, double b, double t, double* out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = qfb::vector_bernstein_bound(v, b, t);
  });
}

qfb_status qfb_compare_bounds(const qfb_summary* s, const double* column_norms,
                              size_t len, double t, qfb_bound_comparison* out) {
  return wrap([&] {
    require_arg(s, "summary");
    require_arg(column_norms, "column_norms");
    require_arg(out, "out");
    const qfb::BoundComparison cmp =
        qfb::compare_bounds(s->s, std::span<const double>(column_norms, len), t);
    *out = qfb_bound_comparison{cmp.t, cmp.theorem_bound, cmp.bernstein_bound,
                                cmp.bernstein_bound_sq, cmp.ratio};
  });
}

/* ---- closed-form oracles ---- */

qfb_status qfb_chi2_survival(double x, uint32_t df, double* out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = qfb::chi2_survival(x, df);
  });
}

qfb_status qfb_normal_upper_tail(double z, double* out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = qfb::normal_upper_tail(z);
  });
}

qfb_status qfb_gaussian_quadratic_mgf(const double* rho, size_t len, double eta,
                                      double* out) {
  return wrap([&] {
    require_arg(rho, "rho");
    require_arg(out, "out");
    *out = qfb::gaussian_quadratic_mgf(std::span<const double>(rho, len), eta);
  });
}

qfb_status qfb_gaussian_quadratic_cgf(const double* alpha, const double* beta,
                                      size_t len, double lambda, double* out) {
  return wrap([&] {
    require_arg(alpha, "alpha");
    require_arg(beta, "beta");
    require_arg(out, "out");
    *out = qfb::gaussian_quadratic_cgf(std::span<const double>(alpha, len),
                                       std::span<const double>(beta, len), lambda);
  });
}

qfb_status qfb_binomial_upper_confidence(uint64_t successes, uint64_t trials,
                                         double confidence, double* out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = qfb::binomial_upper_confidence(successes, trials, confidence);
  });
}

/* ---- samplers ---- */

qfb_status qfb_family_from_string(const char* name, int* out) {
  return wrap([&] {
    require_arg(name, "name");
    require_arg(out, "out");
    *out = static_cast<int>(qfb::family_from_string(name));
  });
}

const char* qfb_family_name(int family) {
  switch (family) {
    case QFB_FAMILY_GAUSSIAN: return "gaussian";
    case QFB_FAMILY_RADEMACHER: return "rademacher";
    case QFB_FAMILY_UNIFORM: return "uniform";
    default: return "?";
  }
}

qfb_status qfb_declared_sigma(int family, double scale, double* out) {
  return wrap([&] {
    require_arg(out, "out");
    qfb::require_finite(scale, "scale");
    if (scale < 0.0) throw qfb::input_error("scale must be >= 0");
    *out = qfb::declared_sigma_for(to_family(family), scale);
  });
}

qfb_status qfb_sampler_create(int family, size_t dimension, double scale,
                              const double* mu, size_t mu_len, qfb_sampler** out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = new qfb_sampler{qfb::SubgaussianSpec::make(
        to_family(family), static_cast<Eigen::Index>(dimension), scale,
        optional_mean(mu, mu_len))};
  });
}

void qfb_sampler_free(qfb_sampler* s) { delete s; }

qfb_status qfb_sampler_declared_sigma(const qfb_sampler* s, double* out) {
  return wrap([&] {
    require_arg(s, "sampler");
    require_arg(out, "out");
    *out = s->spec.declared_sigma;
  });
}

qfb_status qfb_sampler_has_mean(const qfb_sampler* s, int* out) {
  return wrap([&] {
    require_arg(s, "sampler");
    require_arg(out, "out");
    *out = s->spec.has_mean() ? 1 : 0;
  });
}

qfb_status qfb_sample_vector(const qfb_sampler* s, uint64_t master_seed,
                             uint64_t stream_index, double* buf, size_t buf_len) {
  return wrap([&] {
    require_arg(s, "sampler");
    require_arg(buf, "buf");
    if (buf_len != static_cast<size_t>(s->spec.dimension))
      throw qfb::input_error("buf_len must equal the sampler dimension");
    const Eigen::VectorXd x =
        qfb::sample_vector(s->spec, qfb::SeededStream{master_seed, stream_index});
    std::memcpy(buf, x.data(), buf_len * sizeof(double));
  });
}

qfb_status qfb_martingale_create(const qfb_matrix* columns, int adapted_gain,
                                 qfb_martingale** out) {
  return wrap([&] {
    require_arg(columns, "columns");
    require_arg(out, "out");
    *out = new qfb_martingale{
        qfb::MartingaleSpec::make(columns->m.values, adapted_gain != 0)};
  });
}

void qfb_martingale_free(qfb_martingale* m) { delete m; }

qfb_status qfb_martingale_bounds(const qfb_martingale* m, double* v, double* b) {
  return wrap([&] {
    require_arg(m, "martingale");
    require_arg(v, "v");
    require_arg(b, "b");
    *v = m->spec.v_bound;
    *b = m->spec.b_bound;
  });
}

/* ---- Monte Carlo experiments ---- */

qfb_status qfb_estimate_tail(const qfb_matrix* a, const qfb_sampler* sampler,
                             double sigma, const double* t_grid, size_t t_len,
                             uint64_t n_trials, uint64_t master_seed,
                             unsigned n_streams, qfb_tail** out) {
  return wrap([&] {
    require_arg(a, "matrix");
    require_arg(sampler, "sampler");
    require_arg(t_grid, "t_grid");
    require_arg(out, "out");
    *out = new qfb_tail{qfb::estimate_tail(
        a->m, sampler->spec, effective_params(sampler, sigma),
        std::span<const double>(t_grid, t_len), n_trials, master_seed, n_streams)};
  });
}

qfb_status qfb_martingale_experiment(const qfb_martingale* m, const double* t_grid,
                                     size_t t_len, uint64_t n_trials,
                                     uint64_t master_seed, qfb_tail** out) {
  return wrap([&] {
    require_arg(m, "martingale");
    require_arg(t_grid, "t_grid");
    require_arg(out, "out");
    *out = new qfb_tail{qfb::martingale_experiment(
        m->spec, std::span<const double>(t_grid, t_len), n_trials, master_seed)};
  });
}

void qfb_tail_free(qfb_tail* t) { delete t; }

qfb_status qfb_tail_size(const qfb_tail* t, size_t* out) {
  return wrap([&] {
    require_arg(t, "tail");
    require_arg(out, "out");
    *out = t->tail.t_grid.size();
  });
}

qfb_status qfb_tail_trials(const qfb_tail* t, uint64_t* out) {
  return wrap([&] {
    require_arg(t, "tail");
    require_arg(out, "out");
    *out = t->tail.n_trials;
  });
}

qfb_status qfb_tail_point(const qfb_tail* t, size_t index, double* t_value,
                          double* threshold, uint64_t* exceed_count, double* ci_upper,
                          double* target, int* certifiable, int* pass) {
  return wrap([&] {
    require_arg(t, "tail");
    if (index >= t->tail.t_grid.size()) throw qfb::input_error("index out of range");
    const qfb::CertifyReport report = qfb::certify(t->tail);
    if (t_value) *t_value = t->tail.t_grid[index];
    if (threshold) *threshold = t->tail.thresholds[index];
    if (exceed_count) *exceed_count = t->tail.exceed_counts[index];
    if (ci_upper) *ci_upper = t->tail.ci_upper[index];
    if (target) *target = t->tail.target[index];
    if (certifiable) *certifiable = t->tail.certifiable[index];
    if (pass) *pass = report.pass[index];
  });
}

qfb_status qfb_tail_all_pass(const qfb_tail* t, int* out) {
  return wrap([&] {
    require_arg(t, "tail");
    require_arg(out, "out");
    *out = qfb::certify(t->tail).all_pass ? 1 : 0;
  });
}

qfb_status qfb_tail_to_csv(const qfb_tail* t, char** out) {
  return wrap([&] {
    require_arg(t, "tail");
    require_arg(out, "out");
    *out = copy_string(qfb::tail_report_csv(t->tail));
  });
}

qfb_status qfb_tail_to_json(const qfb_tail* t, char** out) {
  return wrap([&] {
    require_arg(t, "tail");
    require_arg(out, "out");
    *out = copy_string(qfb::tail_report_json(t->tail));
  });
}

qfb_status qfb_estimate_mgf(const qfb_matrix* a, const qfb_sampler* sampler,
                            double sigma, const double* eta_grid, size_t eta_len,
                            uint64_t n_trials, uint64_t master_seed, qfb_mgf** out) {
  return wrap([&] {
    require_arg(a, "matrix");
    require_arg(sampler, "sampler");
    require_arg(eta_grid, "eta_grid");
    require_arg(out, "out");
    *out = new qfb_mgf{qfb::estimate_mgf(
        a->m, sampler->spec, effective_params(sampler, sigma),
        std::span<const double>(eta_grid, eta_len), n_trials, master_seed)};
  });
}

void qfb_mgf_free(qfb_mgf* m) { delete m; }

qfb_status qfb_mgf_size(const qfb_mgf* m, size_t* out) {
  return wrap([&] {
    require_arg(m, "mgf");
    require_arg(out, "out");
    *out = m->check.eta_grid.size();
  });
}

qfb_status qfb_mgf_point(const qfb_mgf* m, size_t index, double* eta,
                         double* empirical, double* empirical_se, double* decoupled,
                         double* decoupled_se, double* bound, int* chain_ok) {
  return wrap([&] {
    require_arg(m, "mgf");
    if (index >= m->check.eta_grid.size())
      throw qfb::input_error("index out of range");
    if (eta) *eta = m->check.eta_grid[index];
    if (empirical) *empirical = m->check.empirical[index];
    if (empirical_se) *empirical_se = m->check.empirical_se[index];
    if (decoupled) *decoupled = m->check.decoupled[index];
    if (decoupled_se) *decoupled_se = m->check.decoupled_se[index];
    if (bound) *bound = m->check.bound[index];
    if (chain_ok) *chain_ok = qfb::mgf_chain_ok(m->check, index) ? 1 : 0;
  });
}

qfb_status qfb_mgf_all_ok(const qfb_mgf* m, int* out) {
  return wrap([&] {
    require_arg(m, "mgf");
    require_arg(out, "out");
    bool ok = true;
    for (std::size_t i = 0; i < m->check.eta_grid.size(); ++i)
      ok = ok && qfb::mgf_chain_ok(m->check, i);
    *out = ok ? 1 : 0;
  });
}

qfb_status qfb_mgf_to_csv(const qfb_mgf* m, char** out) {
  return wrap([&] {
    require_arg(m, "mgf");
    require_arg(out, "out");
    *out = copy_string(qfb::mgf_report_csv(m->check));
  });
}

qfb_status qfb_mgf_to_json(const qfb_mgf* m, char** out) {
  return wrap([&] {
    require_arg(m, "mgf");
    require_arg(out, "out");
    *out = copy_string(qfb::mgf_report_json(m->check));
  });
}

/* ---- fixed-design least squares ---- */

qfb_status qfb_design_create(const qfb_matrix* x, qfb_design** out) {
  return wrap([&] {
    require_arg(x, "matrix");
    require_arg(out, "out");
    *out = new qfb_design{qfb::FixedDesign::make(x->m)};
  });
}

qfb_status qfb_design_random(size_t n, size_t d, uint64_t seed, qfb_design** out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = new qfb_design{qfb::FixedDesign::make(qfb::random_design(
        static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d), seed))};
  });
}

void qfb_design_free(qfb_design* d) { delete d; }

qfb_status qfb_design_dims(const qfb_design* d, size_t* n, size_t* cols) {
  return wrap([&] {
    require_arg(d, "design");
    require_arg(n, "n");
    require_arg(cols, "cols");
    *n = static_cast<size_t>(d->design.n);
    *cols = static_cast<size_t>(d->design.d);
  });
}

qfb_status qfb_fit_ols(const qfb_design* d, const double* y, size_t y_len,
                       double* beta_out, size_t beta_len) {
  return wrap([&] {
    require_arg(d, "design");
    require_arg(y, "y");
    require_arg(beta_out, "beta_out");
    if (beta_len != static_cast<size_t>(d->design.d))
      throw qfb::input_error("beta_len must equal the design column count");
    const Eigen::VectorXd beta = qfb::fit_ols(
        d->design, qfb::make_vector(std::span<const double>(y, y_len), "y"));
    std::memcpy(beta_out, beta.data(), beta_len * sizeof(double));
  });
}

qfb_status qfb_excess_loss(const qfb_design* d, const double* beta_hat,
                           const double* beta_star, size_t len, double* out) {
  return wrap([&] {
    require_arg(d, "design");
    require_arg(beta_hat, "beta_hat");
    require_arg(beta_star, "beta_star");
    require_arg(out, "out");
    *out = qfb::excess_loss(
        d->design,
        qfb::make_vector(std::span<const double>(beta_hat, len), "beta_hat"),
        qfb::make_vector(std::span<const double>(beta_star, len), "beta_star"));
  });
}

qfb_status qfb_risk_certificate(const qfb_design* d, double sigma, double t,
                                int strict_convention, double* out) {
  return wrap([&] {
    require_arg(d, "design");
    require_arg(out, "out");
    *out = qfb::risk_certificate(d->design, sigma, t, strict_convention != 0);
  });
}

qfb_status qfb_run_ols_experiment(const qfb_design* d, const double* beta_star,
                                  size_t beta_len, const qfb_sampler* noise,
                                  uint64_t replicates, const double* t_grid,
                                  size_t t_len, uint64_t master_seed,
                                  int strict_convention, unsigned n_streams,
                                  qfb_ols_report** out) {
  return wrap([&] {
    require_arg(d, "design");
    require_arg(beta_star, "beta_star");
    require_arg(noise, "noise");
    require_arg(t_grid, "t_grid");
    require_arg(out, "out");
    *out = new qfb_ols_report{qfb::run_experiment(
        d->design,
        qfb::make_vector(std::span<const double>(beta_star, beta_len), "beta_star"),
        noise->spec, replicates, std::span<const double>(t_grid, t_len), master_seed,
        strict_convention != 0, n_streams)};
  });
}

void qfb_ols_report_free(qfb_ols_report* r) { delete r; }

qfb_status qfb_ols_report_mean_loss(const qfb_ols_report* r, double* mean,
                                    double* theory) {
  return wrap([&] {
    require_arg(r, "report");
    if (mean) *mean = r->report.mean_loss;
    if (theory) *theory = r->report.theory_mean;
  });
}

qfb_status qfb_ols_report_all_pass(const qfb_ols_report* r, int* out) {
  return wrap([&] {
    require_arg(r, "report");
    require_arg(out, "out");
    *out = qfb::experiment_all_pass(r->report) ? 1 : 0;
  });
}

qfb_status qfb_ols_report_to_csv(const qfb_ols_report* r, char** out) {
  return wrap([&] {
    require_arg(r, "report");
    require_arg(out, "out");
    *out = copy_string(qfb::ols_report_csv(r->report));
  });
}

qfb_status qfb_ols_report_to_json(const qfb_ols_report* r, char** out) {
  return wrap([&] {
    require_arg(r, "report");
    require_arg(out, "out");
    *out = copy_string(qfb::ols_report_json(r->report));
  });
}

/* ---- rendering of plain bound tables ---- */

qfb_status qfb_bound_rows_to_csv(const qfb_tail_bound* rows, size_t len, char** out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = copy_string(qfb::bound_rows_csv(from_c(rows, len)));
  });
}

qfb_status qfb_bound_rows_to_json(const qfb_tail_bound* rows, size_t len,
                                  char** out) {
  return wrap([&] {
    require_arg(out, "out");
    *out = copy_string(qfb::bound_rows_json(from_c(rows, len)));
  });
}

qfb_status qfb_comparison_rows_to_csv(const qfb_bound_comparison* rows, size_t len,
                                      char** out) {
  return wrap([&] {
    require_arg(rows, "rows");
    require_arg(out, "out");
    std::vector<qfb::BoundComparison> native(len);
    for (size_t i = 0; i < len; ++i)
      native[i] = qfb::BoundComparison{rows[i].t, rows[i].theorem_bound,
                                       rows[i].bernstein_bound,
                                       rows[i].bernstein_bound_sq, rows[i].ratio};
    *out = copy_string(qfb::comparison_rows_csv(native));
  });
}

qfb_status qfb_comparison_rows_to_json(const qfb_bound_comparison* rows, size_t len,
                                       char** out) {
  return wrap([&] {
    require_arg(rows, "rows");
    require_arg(out, "out");
    std::vector<qfb::BoundComparison> native(len);
    for (size_t i = 0; i < len; ++i)
      native[i] = qfb::BoundComparison{rows[i].t, rows[i].theorem_bound,
                                       rows[i].bernstein_bound,
                                       rows[i].bernstein_bound_sq, rows[i].ratio};
    *out = copy_string(qfb::comparison_rows_json(native));
  });
}

/* ---- acceptance battery ---- */

qfb_status qfb_run_acceptance(uint64_t tail_trials, uint64_t mgf_trials,
                              uint64_t master_seed, char** report_text,
                              int* all_pass) {
  return wrap([&] {
    require_arg(report_text, "report_text");
    require_arg(all_pass, "all_pass");
    qfb::AcceptanceOptions options;
    if (tail_trials > 0) options.tail_trials = tail_trials;
    if (mgf_trials > 0) options.mgf_trials = mgf_trials;
    if (master_seed > 0) options.master_seed = master_seed;
    const auto results = qfb::run_acceptance(options);
    *report_text = copy_string(qfb::render_acceptance(results));
    *all_pass = qfb::all_passed(results) ? 1 : 0;
  });
}

}  // extern "C"
