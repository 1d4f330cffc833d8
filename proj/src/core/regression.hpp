// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/matrix.hpp"
#include "core/samplers.hpp"
#include "core/spectral.hpp"

namespace qfb {

// Fixed-design least squares: X is n x d with d <= n and nonsingular
// empirical covariance Sigma_hat = X^T X / n. The thin QR factorization
// is precomputed once; every fit and loss evaluation reuses it.
struct FixedDesign {
  RealMatrix x;
  Eigen::Index n = 0;
  Eigen::Index d = 0;
  SpectralSummary sigma_hat;
  double min_eigenvalue = 0.0;
  Eigen::MatrixXd q_thin;    // n x d, orthonormal columns
  Eigen::MatrixXd r_factor;  // d x d upper triangular, X = Q R

  static FixedDesign make(RealMatrix x);
};

Eigen::VectorXd fit_ols(const FixedDesign& design, const Eigen::VectorXd& y);

// In-sample excess prediction risk (beta_hat - beta_star)^T Sigma_hat
// (beta_hat - beta_star), evaluated as ||R (beta_hat - beta_star)||^2 / n.
double excess_loss(const FixedDesign& design, const Eigen::VectorXd& beta_hat,
                   const Eigen::VectorXd& beta_star);

// High-probability excess risk level sigma^2 (d + 2 sqrt(d t) + 2 t) / n.
// strict_convention doubles it, matching the variance-proxy reading of the
// noise assumption instead of the displayed certificate.
double risk_certificate(const FixedDesign& design, double sigma, double t,
                        bool strict_convention = false);

struct ExcessRiskReport {
  std::uint64_t replicates = 0;
  std::vector<double> losses;
  double mean_loss = 0.0;
  double theory_mean = 0.0;  // sigma^2 d / n
  double noise_sigma = 0.0;
  bool strict_convention = false;
  std::vector<double> t_grid;
  std::vector<double> bound_curve;
  std::vector<std::uint64_t> violation_counts;
  std::vector<double> ci_upper;
  std::vector<double> target;
  std::vector<char> certifiable;
};

ExcessRiskReport run_experiment(const FixedDesign& design,
                                const Eigen::VectorXd& beta_star,
                                const SubgaussianSpec& noise, std::uint64_t replicates,
                                std::span<const double> t_grid,
                                std::uint64_t master_seed,
                                bool strict_convention = false, unsigned n_streams = 1);

bool experiment_all_pass(const ExcessRiskReport& report);

// Deterministic standard normal design for experiments.
RealMatrix random_design(Eigen::Index n, Eigen::Index d, std::uint64_t seed);

}  // namespace qfb
