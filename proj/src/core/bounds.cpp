// SPDX-License-Identifier: Apache-2.0
#include "core/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/common.hpp"

namespace qfb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_t(double t) {
  require_finite(t, "t");
  if (t <= 0.0) throw domain_error("t must be > 0, got " + std::to_string(t));
}

void require_sigma(double sigma) {
  require_finite(sigma, "sigma");
  if (sigma < 0.0) throw input_error("sigma must be >= 0");
}

}  // namespace

double h1(double a) {
  if (!(a >= 0.0)) throw domain_error("h1 requires a >= 0");
  // 1 + a - sqrt(1 + 2a) rewritten to avoid cancellation near 0.
  return a * a / (1.0 + a + std::sqrt(1.0 + 2.0 * a));
}

double h1_inverse(double b) {
  if (!(b >= 0.0)) throw domain_error("h1_inverse requires b >= 0");
  return std::sqrt(2.0 * b) + b;
}

TailBound subgaussian_quadratic_bound(const SpectralSummary& s,
                                      const SubgaussianParams& params, double t) {
  require_t(t);
  require_sigma(params.sigma);
  const double s2 = params.sigma * params.sigma;
  TailBound out;
  out.t = t;
  out.term_trace = s2 * s.trace_sigma;
  out.term_deviation =
      s2 * (2.0 * std::sqrt(s.trace_sigma_sq * t) + 2.0 * s.op_norm * t);
  if (params.use_mean) {
    if (!s.mean_image_sq)
      throw input_error("mean term requested but the summary carries no mean");
    double factor = 1.0;
    if (*s.mean_image_sq > 0.0 && s.trace_sigma_sq > 0.0) {
      const double r = s.op_norm * s.op_norm * t / s.trace_sigma_sq;
      factor = std::sqrt(1.0 + 4.0 * std::sqrt(r) + 4.0 * r);
    }
    // A zero spectrum forces ||Ax|| = 0 identically, so factor 1 still certifies.
    out.term_mean = *s.mean_image_sq * factor;
  }
  out.epsilon = out.term_trace + out.term_deviation + out.term_mean;
  return out;
}

TailBound gaussian_quadratic_bound(const SpectralSummary& s, double t) {
  return subgaussian_quadratic_bound(s, SubgaussianParams{1.0, false}, t);
}

double tail_probability_at(const SpectralSummary& s, double sigma, double epsilon) {
  require_sigma(sigma);
  require_finite(epsilon, "epsilon");
  if (s.mean_image_sq && *s.mean_image_sq > 0.0)
    throw domain_error("tail_probability_at applies only without a mean contribution");
  if (sigma == 0.0) return epsilon > 0.0 ? 0.0 : 1.0;
  const double s2 = sigma * sigma;
  if (epsilon <= s2 * s.trace_sigma) return 1.0;
  if (s.op_norm == 0.0) return 0.0;  // Sigma = 0 and epsilon > 0
  const double tau = epsilon / s2 - s.trace_sigma;
  const double a = s.op_norm * tau / s.trace_sigma_sq;
  return std::exp(-(s.trace_sigma_sq / (2.0 * s.op_norm * s.op_norm)) * h1(a));
}

double mgf_domain_limit(const SpectralSummary& s, double sigma) {
  require_sigma(sigma);
  const double denom = 2.0 * sigma * sigma * s.op_norm;
  return denom > 0.0 ? 1.0 / denom : kInf;
}

double mgf_upper_bound(const SpectralSummary& s, const SubgaussianParams& params,
                       double eta) {
  require_finite(eta, "eta");
  if (eta < 0.0) throw domain_error("eta must be >= 0");
  require_sigma(params.sigma);
  const double limit = mgf_domain_limit(s, params.sigma);
  if (eta >= limit)
    throw domain_error("eta = " + std::to_string(eta) +
                       " is at or beyond the MGF pole 1/(2 sigma^2 ||Sigma||) = " +
                       std::to_string(limit));
  const double s2 = params.sigma * params.sigma;
  double mean_sq = 0.0;
  if (params.use_mean) {
    if (!s.mean_image_sq)
      throw input_error("mean term requested but the summary carries no mean");
    mean_sq = *s.mean_image_sq;
  }
  const double denom = 1.0 - 2.0 * s2 * s.op_norm * eta;
  const double expo = s2 * s.trace_sigma * eta +
                      (s2 * s2 * s.trace_sigma_sq * eta * eta + mean_sq * eta) / denom;
  return std::exp(expo);
}

double gaussian_cgf_bound(std::span<const double> alpha, std::span<const double> beta,
                          double lambda) {
  if (alpha.size() != beta.size())
    throw input_error("alpha and beta must have equal length");
  if (alpha.empty()) throw input_error("alpha must be nonempty");
  double l1 = 0.0, l2sq = 0.0, linf = 0.0, b2sq = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    require_finite(alpha[i], "alpha");
    require_finite(beta[i], "beta");
    if (alpha[i] < 0.0) throw input_error("alpha entries must be >= 0");
    l1 += alpha[i];
    l2sq += alpha[i] * alpha[i];
    linf = std::max(linf, alpha[i]);
    b2sq += beta[i] * beta[i];
  }
  require_finite(lambda, "lambda");
  if (lambda < 0.0) throw domain_error("lambda must be >= 0");
  if (linf > 0.0 && lambda >= 1.0 / (2.0 * linf))
    throw domain_error("lambda = " + std::to_string(lambda) +
                       " is at or beyond the pole 1/(2 max alpha) = " +
                       std::to_string(1.0 / (2.0 * linf)));
  const double denom = 1.0 - 2.0 * linf * lambda;
  return l1 * lambda + (l2sq * lambda * lambda + 0.5 * b2sq) / denom;
}

double chi2_tail_bound(std::span<const double> gamma, double t) {
  if (gamma.empty()) throw input_error("gamma must be nonempty");
  require_t(t);
  double l1 = 0.0, l2sq = 0.0, linf = 0.0;
  for (double g : gamma) {
    require_finite(g, "gamma");
    if (g < 0.0) throw input_error("gamma entries must be >= 0");
    l1 += g;
    l2sq += g * g;
    linf = std::max(linf, g);
  }
  return l1 + 2.0 * std::sqrt(l2sq * t) + 2.0 * linf * t;
}

namespace {

void require_vb(double v, double b) {
  require_finite(v, "v");
  require_finite(b, "b");
  if (v < 0.0 || b < 0.0) throw input_error("variance and bound terms must be >= 0");
}

}  // namespace

double bernstein_bound(double v, double b, double t) {
  require_vb(v, b);
  require_t(t);
  return std::sqrt(2.0 * v * t) + (2.0 / 3.0) * b * t;
}

double centered_norm_bound(double v, double b, double t) {
  require_vb(v, b);
  require_t(t);
  return std::sqrt(8.0 * v * t) + (4.0 / 3.0) * b * t;
}

double vector_bernstein_bound(double v, double b, double t) {
  require_vb(v, b);
  require_t(t);
  return std::sqrt(v) + std::sqrt(8.0 * v * t) + (4.0 / 3.0) * b * t;
}

BoundComparison compare_bounds(const SpectralSummary& s,
                               std::span<const double> column_norms, double t) {
  require_t(t);
  double v = 0.0, b = 0.0;
  for (double c : column_norms) {
    require_finite(c, "column norm");
    if (c < 0.0) throw input_error("column norms must be >= 0");
    v += c * c;
    b = std::max(b, c);
  }
  const double scale = std::max(v, s.trace_sigma);
  if (scale > 0.0 && std::abs(v - s.trace_sigma) > 1e-8 * scale)
    throw input_error("column norms are inconsistent with tr(Sigma): sum of squares = " +
                      std::to_string(v) + ", tr(Sigma) = " + std::to_string(s.trace_sigma));
  BoundComparison out;
  out.t = t;
  out.theorem_bound = gaussian_quadratic_bound(s, t).epsilon;
  out.bernstein_bound = vector_bernstein_bound(v, b, t);
  out.bernstein_bound_sq = out.bernstein_bound * out.bernstein_bound;
  out.ratio = out.bernstein_bound_sq > 0.0 ? out.theorem_bound / out.bernstein_bound_sq : 1.0;
  return out;
}

}  // namespace qfb
