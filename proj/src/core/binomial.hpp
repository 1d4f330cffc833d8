// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace qfb {

// Exact (Clopper-Pearson) one-sided upper confidence bound for a binomial
// proportion: the smallest p with P[Bin(n, p) <= k] <= 1 - confidence.
double binomial_upper_confidence(std::uint64_t successes, std::uint64_t trials,
                                 double confidence);

// P[Bin(n, p) <= k], exposed for verification.
double binomial_cdf(std::uint64_t k, std::uint64_t n, double p);

}  // namespace qfb
