// SPDX-License-Identifier: Apache-2.0
#include "core/oracles.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "core/common.hpp"

namespace qfb {

double chi2_survival(double x, unsigned df) {
  require_finite(x, "x");
  if (df == 0) throw input_error("chi2_survival requires df >= 1");
  if (x <= 0.0) return 1.0;
  // Upward recurrence Q(x; k+2) = Q(x; k) + (x/2)^{k/2} e^{-x/2} / Gamma(k/2+1),
  // starting from Q(x; 1) = erfc(sqrt(x/2)) or Q(x; 2) = e^{-x/2}. All terms
  // are positive, so the recurrence never cancels.
  const bool odd = (df % 2) != 0;
  double q = odd ? std::erfc(std::sqrt(0.5 * x)) : std::exp(-0.5 * x);
  double term = odd ? std::sqrt(2.0 * x / std::numbers::pi) * std::exp(-0.5 * x)
                    : 0.5 * x * std::exp(-0.5 * x);
  for (unsigned k = odd ? 1 : 2; k < df; k += 2) {
    q += term;
    term *= x / static_cast<double>(k + 2);
  }
  return std::min(q, 1.0);
}

double normal_upper_tail(double z) {
  require_finite(z, "z");
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double gaussian_quadratic_mgf(std::span<const double> rho, double eta) {
  if (rho.empty()) throw input_error("rho must be nonempty");
  require_finite(eta, "eta");
  double log_val = 0.0;
  for (double r : rho) {
    require_finite(r, "rho");
    if (r < 0.0) throw input_error("rho entries must be >= 0");
    const double d = 1.0 - 2.0 * r * eta;
    if (d <= 0.0)
      throw domain_error("eta = " + std::to_string(eta) +
                         " is at or beyond the exact MGF pole");
    log_val -= 0.5 * std::log(d);
  }
  return std::exp(log_val);
}

double gaussian_quadratic_cgf(std::span<const double> alpha,
                              std::span<const double> beta, double lambda) {
  if (alpha.size() != beta.size())
    throw input_error("alpha and beta must have equal length");
  if (alpha.empty()) throw input_error("alpha must be nonempty");
  require_finite(lambda, "lambda");
  double val = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    require_finite(alpha[i], "alpha");
    require_finite(beta[i], "beta");
    if (alpha[i] < 0.0) throw input_error("alpha entries must be >= 0");
    const double d = 1.0 - 2.0 * alpha[i] * lambda;
    if (d <= 0.0)
      throw domain_error("lambda = " + std::to_string(lambda) +
                         " is at or beyond the exact CGF pole");
    val += -0.5 * std::log(d) + beta[i] * beta[i] / (2.0 * d);
  }
  return val;
}

}  // namespace qfb
