// SPDX-License-Identifier: Apache-2.0
#include "core/binomial.hpp"

#include <cmath>
#include <string>

#include "core/common.hpp"

namespace qfb {

double binomial_cdf(std::uint64_t k, std::uint64_t n, double p) {
  if (n == 0) throw input_error("binomial_cdf requires n >= 1");
  if (k >= n) return 1.0;
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  // Sum pmf(j) downward from j = k; the term ratio keeps everything in
  // scale even when the individual probabilities underflow a naive product.
  const double log_term_k = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) -
                            std::lgamma(nd - kd + 1.0) + kd * lp + (nd - kd) * lq;
  if (log_term_k < -745.0) {
    // Every term below j = k is smaller still whenever k <= n p, which holds
    // on the search range used by the confidence bound; the cdf is ~0.
    if (kd <= nd * p) return 0.0;
    // Otherwise the mass sits below k; it is the upper tail that vanishes.
    return 1.0;
  }
  double term = std::exp(log_term_k);
  double sum = term;
  const double q_over_p = std::exp(lq - lp);
  for (std::uint64_t j = k; j > 0; --j) {
    // pmf(j-1) / pmf(j) = j q / ((n - j + 1) p)
    term *= static_cast<double>(j) * q_over_p / static_cast<double>(n - j + 1);
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return std::min(sum, 1.0);
}

double binomial_upper_confidence(std::uint64_t successes, std::uint64_t trials,
                                 double confidence) {
  if (trials == 0) throw input_error("binomial bound requires trials >= 1");
  if (successes > trials) throw input_error("successes must not exceed trials");
  require_finite(confidence, "confidence");
  if (confidence <= 0.0 || confidence >= 1.0)
    throw input_error("confidence must lie strictly inside (0, 1)");
  if (successes == trials) return 1.0;
  const double alpha = 1.0 - confidence;
  if (successes == 0) {
    // (1 - p)^n = alpha
    return -std::expm1(std::log(alpha) / static_cast<double>(trials));
  }
  double lo = static_cast<double>(successes) / static_cast<double>(trials);
  double hi = 1.0;
  // cdf is strictly decreasing in p; bisect for cdf(p) = alpha.
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (binomial_cdf(successes, trials, mid) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return hi;  // cdf(hi) <= alpha, so hi is a valid (marginally conservative) bound
}

}  // namespace qfb
