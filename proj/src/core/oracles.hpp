// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

namespace qfb {

// Closed-form reference quantities used to certify the bounds. These are
// computed from classical special-function identities, never from the
// bound formulas they are checked against.

// P[chi-square with df degrees of freedom > x].
double chi2_survival(double x, unsigned df);

// P[N(0,1) > z].
double normal_upper_tail(double z);

// E exp(eta ||Ax||^2) for standard Gaussian x, given eigenvalues rho of
// A^T A: product of (1 - 2 rho_i eta)^{-1/2}. Requires eta < 1/(2 max rho).
double gaussian_quadratic_mgf(std::span<const double> rho, double eta);

// log E exp(lambda sum_i alpha_i z_i^2 + sum_i beta_i z_i) for standard
// normal z, exact: sum of -log(1 - 2 a l)/2 + b^2 / (2 (1 - 2 a l)).
double gaussian_quadratic_cgf(std::span<const double> alpha,
                              std::span<const double> beta, double lambda);

}  // namespace qfb
