// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "core/spectral.hpp"

namespace qfb {

struct SubgaussianParams {
  double sigma = 1.0;    // subgaussian proxy of the coordinates, >= 0
  bool use_mean = false; // include the ||A mu|| contribution
};

// One evaluated point of the deviation bound: with probability at least
// 1 - e^{-t}, ||Ax||^2 <= epsilon. The three terms sum to epsilon.
struct TailBound {
  double t = 0.0;
  double epsilon = 0.0;
  double term_trace = 0.0;      // sigma^2 * tr(Sigma)
  double term_deviation = 0.0;  // sigma^2 * (2*sqrt(tr(Sigma^2) t) + 2*||Sigma|| t)
  double term_mean = 0.0;       // ||A mu||^2 * sqrt(1 + 4 sqrt r + 4 r)
};

struct BoundComparison {
  double t = 0.0;
  double theorem_bound = 0.0;
  double bernstein_bound = 0.0;     // vector Bernstein bound on ||Ax||
  double bernstein_bound_sq = 0.0;  // its square, comparable to theorem_bound
  double ratio = 0.0;               // theorem_bound / bernstein_bound_sq
};

// h1(a) = 1 + a - sqrt(1 + 2a), evaluated in a cancellation-free form.
double h1(double a);
// Inverse of h1 on [0, inf): h1_inverse(b) = sqrt(2b) + b.
double h1_inverse(double b);

// Standard Gaussian x: P[||Ax||^2 > epsilon(t)] <= e^{-t}.
TailBound gaussian_quadratic_bound(const SpectralSummary& s, double t);

// x with independent sigma-subgaussian mean-zero coordinates, optionally
// shifted by mu. Reduces bit-for-bit to the Gaussian bound at sigma = 1
// with no mean term.
TailBound subgaussian_quadratic_bound(const SpectralSummary& s,
                                      const SubgaussianParams& params, double t);

// Inverted form of the centered bound: the exponential tail level the
// bound certifies at threshold epsilon. Requires no mean contribution.
double tail_probability_at(const SpectralSummary& s, double sigma, double epsilon);

// E exp(eta ||Ax||^2) bound, finite for eta < 1 / (2 sigma^2 ||Sigma||).
double mgf_upper_bound(const SpectralSummary& s, const SubgaussianParams& params,
                       double eta);
// The pole 1 / (2 sigma^2 ||Sigma||); +inf when sigma^2 ||Sigma|| = 0.
double mgf_domain_limit(const SpectralSummary& s, double sigma);

// log E exp(lambda sum_i alpha_i z_i^2 + sum_i beta_i z_i) bound for
// standard normal z, valid for 0 <= lambda < 1 / (2 max alpha).
double gaussian_cgf_bound(std::span<const double> alpha, std::span<const double> beta,
                          double lambda);

// Weighted chi-square tail threshold: sum_i gamma_i z_i^2 exceeds the
// returned value with probability at most e^{-t}.
double chi2_tail_bound(std::span<const double> gamma, double t);

// Scalar Bernstein-style deviation levels at confidence e^{-t}.
double bernstein_bound(double v, double b, double t);
double centered_norm_bound(double v, double b, double t);
// Norm deviation level for a vector martingale with increment norms
// bounded by b and total conditional variance bounded by v.
double vector_bernstein_bound(double v, double b, double t);

// Theorem bound vs the squared vector-Bernstein norm bound, for a standard
// Gaussian x. column_norms are ||a_i||, checked against tr(Sigma).
BoundComparison compare_bounds(const SpectralSummary& s,
                               std::span<const double> column_norms, double t);

}  // namespace qfb
