// SPDX-License-Identifier: Apache-2.0
#include "core/regression.hpp"

#include <Eigen/QR>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "core/binomial.hpp"
#include "core/common.hpp"

namespace qfb {

FixedDesign FixedDesign::make(RealMatrix x) {
  FixedDesign design;
  design.n = x.rows();
  design.d = x.cols();
  if (design.d > design.n)
    throw input_error("design requires d <= n, got d = " + std::to_string(design.d) +
                      ", n = " + std::to_string(design.n));
  RealMatrix scaled{x.values / std::sqrt(static_cast<double>(design.n))};
  design.sigma_hat = summarize(scaled);
  design.min_eigenvalue = design.sigma_hat.rho.back();
  if (design.min_eigenvalue <= 1e-10 * design.sigma_hat.op_norm ||
      design.sigma_hat.op_norm == 0.0)
    throw input_error("design covariance is numerically singular: smallest eigenvalue " +
                      std::to_string(design.min_eigenvalue));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x.values);
  design.q_thin =
      qr.householderQ() * Eigen::MatrixXd::Identity(design.n, design.d);
  design.r_factor =
      qr.matrixQR().topRows(design.d).triangularView<Eigen::Upper>();
  design.x = std::move(x);
  return design;
}

Eigen::VectorXd fit_ols(const FixedDesign& design, const Eigen::VectorXd& y) {
  if (y.size() != design.n)
    throw input_error("response length must equal the number of rows");
  if (!y.allFinite()) throw input_error("response entries must be finite");
  const Eigen::VectorXd qty = design.q_thin.transpose() * y;
  return design.r_factor.triangularView<Eigen::Upper>().solve(qty);
}

double excess_loss(const FixedDesign& design, const Eigen::VectorXd& beta_hat,
                   const Eigen::VectorXd& beta_star) {
  if (beta_hat.size() != design.d || beta_star.size() != design.d)
    throw input_error("coefficient length must equal the number of columns");
  const Eigen::VectorXd delta = beta_hat - beta_star;
  return (design.r_factor * delta).squaredNorm() / static_cast<double>(design.n);
}

double risk_certificate(const FixedDesign& design, double sigma, double t,
                        bool strict_convention) {
  require_finite(sigma, "sigma");
  if (sigma < 0.0) throw input_error("sigma must be >= 0");
  require_finite(t, "t");
  if (t <= 0.0) throw domain_error("t must be > 0");
  const double d = static_cast<double>(design.d);
  const double n = static_cast<double>(design.n);
  const double base = sigma * sigma * (d + 2.0 * std::sqrt(d * t) + 2.0 * t) / n;
  return strict_convention ? 2.0 * base : base;
}

ExcessRiskReport run_experiment(const FixedDesign& design,
                                const Eigen::VectorXd& beta_star,
                                const SubgaussianSpec& noise, std::uint64_t replicates,
                                std::span<const double> t_grid,
                                std::uint64_t master_seed, bool strict_convention,
                                unsigned n_streams) {
  if (beta_star.size() != design.d)
    throw input_error("beta_star length must equal the number of columns");
  if (!beta_star.allFinite()) throw input_error("beta_star entries must be finite");
  if (noise.dimension != design.n)
    throw input_error("noise dimension must equal the number of rows");
  if (noise.has_mean()) throw input_error("noise must be mean-zero");
  if (replicates < 1000) throw input_error("replicates must be at least 1000");
  if (n_streams == 0) throw input_error("n_streams must be >= 1");
  if (t_grid.empty()) throw input_error("t grid must be nonempty");
  double prev = 0.0;
  for (double t : t_grid) {
    require_finite(t, "t");
    if (t <= 0.0) throw domain_error("t grid values must be > 0");
    if (t <= prev) throw input_error("t grid must be strictly increasing");
    prev = t;
  }

  ExcessRiskReport report;
  report.replicates = replicates;
  report.noise_sigma = noise.declared_sigma;
  report.strict_convention = strict_convention;
  report.t_grid.assign(t_grid.begin(), t_grid.end());
  for (double t : t_grid)
    report.bound_curve.push_back(
        risk_certificate(design, noise.declared_sigma, t, strict_convention));
  report.theory_mean = noise.declared_sigma * noise.declared_sigma *
                       static_cast<double>(design.d) / static_cast<double>(design.n);

  report.losses.assign(replicates, 0.0);
  auto run_block = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t j = begin; j < end; ++j) {
      const Eigen::VectorXd eps = sample_vector(noise, SeededStream{master_seed, j});
      // With y = X beta_star + eps, beta_hat - beta_star = R^{-1} Q^T eps,
      // so the excess loss is ||Q^T eps||^2 / n; beta_star cancels.
      report.losses[j] =
          (design.q_thin.transpose() * eps).squaredNorm() /
          static_cast<double>(design.n);
    }
  };
  if (n_streams == 1 || replicates < 2 * n_streams) {
    run_block(0, replicates);
  } else {
    const std::uint64_t block = replicates / n_streams;
    std::vector<std::thread> workers;
    workers.reserve(n_streams);
    for (unsigned w = 0; w < n_streams; ++w) {
      const std::uint64_t begin = w * block;
      const std::uint64_t end = (w + 1 == n_streams) ? replicates : begin + block;
      workers.emplace_back(run_block, begin, end);
    }
    for (auto& th : workers) th.join();
  }

  double sum = 0.0;
  for (double loss : report.losses) sum += loss;
  report.mean_loss = sum / static_cast<double>(replicates);
  report.violation_counts.assign(t_grid.size(), 0);
  for (double loss : report.losses)
    for (std::size_t i = 0; i < report.bound_curve.size(); ++i) {
      if (loss > report.bound_curve[i])
        ++report.violation_counts[i];
      else
        break;
    }
  const double nd = static_cast<double>(replicates);
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    report.ci_upper.push_back(
        binomial_upper_confidence(report.violation_counts[i], replicates, 0.99));
    const double target = std::exp(-report.t_grid[i]);
    report.target.push_back(target);
    report.certifiable.push_back(target * nd >= 10.0 ? 1 : 0);
  }
  return report;
}

bool experiment_all_pass(const ExcessRiskReport& report) {
  for (std::size_t i = 0; i < report.t_grid.size(); ++i)
    if (report.certifiable[i] && report.ci_upper[i] > report.target[i]) return false;
  return true;
}

RealMatrix random_design(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  if (n <= 0 || d <= 0) throw input_error("design dimensions must be positive");
  SplitMix64 eng(mix64(seed));
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = dist(eng);
  return RealMatrix::create(std::move(m));
}

}  // namespace qfb
