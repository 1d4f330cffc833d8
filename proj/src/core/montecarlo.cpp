// SPDX-License-Identifier: Apache-2.0
#include "core/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "core/binomial.hpp"
#include "core/common.hpp"

namespace qfb {

namespace {

constexpr double kConfidence = 0.99;
constexpr double kMinExpectedExceed = 10.0;
constexpr std::uint64_t kDecoupledSalt = 0xD6E8FEB86659FD93ull;

void validate_t_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw input_error("t grid must be nonempty");
  double prev = 0.0;
  for (double t : t_grid) {
    require_finite(t, "t");
    if (t <= 0.0) throw domain_error("t grid values must be > 0");
    if (t <= prev) throw input_error("t grid must be strictly increasing");
    prev = t;
  }
}

void validate_trials(std::uint64_t n_trials) {
  if (n_trials < 1000) throw input_error("n_trials must be at least 1000");
}

// Count threshold exceedances of `statistic(trial)` with one engine per
// trial; workers take contiguous trial blocks and merge integer counts,
// so the totals are invariant to n_streams.
template <typename Statistic>
std::vector<std::uint64_t> count_exceedances(std::span<const double> thresholds,
                                             std::uint64_t n_trials, unsigned n_streams,
                                             const Statistic& statistic) {
  if (n_streams == 0) throw input_error("n_streams must be >= 1");
  const std::size_t m = thresholds.size();
  auto run_block = [&](std::uint64_t begin, std::uint64_t end,
                       std::vector<std::uint64_t>& counts) {
    for (std::uint64_t j = begin; j < end; ++j) {
      const double value = statistic(j);
      // thresholds ascend with t, so exceedances form a prefix
      for (std::size_t i = 0; i < m; ++i) {
        if (value > thresholds[i])
          ++counts[i];
        else
          break;
      }
    }
  };
  std::vector<std::uint64_t> total(m, 0);
  if (n_streams == 1 || n_trials < 2 * n_streams) {
    run_block(0, n_trials, total);
    return total;
  }
  const std::uint64_t block = n_trials / n_streams;
  std::vector<std::vector<std::uint64_t>> partial(n_streams,
                                                  std::vector<std::uint64_t>(m, 0));
  std::vector<std::thread> workers;
  workers.reserve(n_streams);
  for (unsigned w = 0; w < n_streams; ++w) {
    const std::uint64_t begin = w * block;
    const std::uint64_t end = (w + 1 == n_streams) ? n_trials : begin + block;
    workers.emplace_back(run_block, begin, end, std::ref(partial[w]));
  }
  for (auto& th : workers) th.join();
  for (const auto& counts : partial)
    for (std::size_t i = 0; i < m; ++i) total[i] += counts[i];
  return total;
}

EmpiricalTail finish_tail(std::span<const double> t_grid, std::vector<double> thresholds,
                          std::vector<std::uint64_t> counts, std::uint64_t n_trials) {
  EmpiricalTail out;
  out.t_grid.assign(t_grid.begin(), t_grid.end());
  out.thresholds = std::move(thresholds);
  out.exceed_counts = std::move(counts);
  out.n_trials = n_trials;
  const double nd = static_cast<double>(n_trials);
  for (std::size_t i = 0; i < out.t_grid.size(); ++i) {
    out.empirical_rate.push_back(static_cast<double>(out.exceed_counts[i]) / nd);
    out.ci_upper.push_back(
        binomial_upper_confidence(out.exceed_counts[i], n_trials, kConfidence));
    const double target = std::exp(-out.t_grid[i]);
    out.target.push_back(target);
    out.certifiable.push_back(target * nd >= kMinExpectedExceed ? 1 : 0);
  }
  return out;
}

}  // namespace

EmpiricalTail estimate_tail(const RealMatrix& a, const SubgaussianSpec& spec,
                            const SubgaussianParams& params,
                            std::span<const double> t_grid, std::uint64_t n_trials,
                            std::uint64_t master_seed, unsigned n_streams) {
  if (spec.dimension != a.cols())
    throw input_error("sampler dimension must equal the matrix column count");
  validate_t_grid(t_grid);
  validate_trials(n_trials);
  if (params.sigma < spec.declared_sigma * (1.0 - 1e-12))
    throw input_error("sigma = " + std::to_string(params.sigma) +
                      " is below the declared subgaussian proxy " +
                      std::to_string(spec.declared_sigma) +
                      "; the bound would not be certified");
  if (params.use_mean != spec.has_mean())
    throw input_error("params.use_mean must match whether the sampler carries a mean");
  const SpectralSummary summary = summarize(a, spec.mu);
  std::vector<double> thresholds;
  thresholds.reserve(t_grid.size());
  for (double t : t_grid)
    thresholds.push_back(subgaussian_quadratic_bound(summary, params, t).epsilon);
  auto counts = count_exceedances(
      thresholds, n_trials, n_streams, [&](std::uint64_t j) {
        const Eigen::VectorXd x = sample_vector(spec, SeededStream{master_seed, j});
        return (a.values * x).squaredNorm();
      });
  return finish_tail(t_grid, std::move(thresholds), std::move(counts), n_trials);
}

CertifyReport certify(const EmpiricalTail& tail) {
  CertifyReport report;
  report.pass.resize(tail.t_grid.size(), 1);
  for (std::size_t i = 0; i < tail.t_grid.size(); ++i) {
    if (!tail.certifiable[i]) continue;
    const double margin = tail.ci_upper[i] / tail.target[i];
    const bool ok = tail.ci_upper[i] <= tail.target[i];
    report.pass[i] = ok ? 1 : 0;
    report.all_pass = report.all_pass && ok;
    if (!report.any_certified || margin > report.worst_margin) {
      report.worst_margin = margin;
      report.worst_index = i;
    }
    report.any_certified = true;
  }
  return report;
}

MgfCheck estimate_mgf(const RealMatrix& a, const SubgaussianSpec& spec,
                      const SubgaussianParams& params, std::span<const double> eta_grid,
                      std::uint64_t n_trials, std::uint64_t master_seed) {
  if (spec.dimension != a.cols())
    throw input_error("sampler dimension must equal the matrix column count");
  if (eta_grid.empty()) throw input_error("eta grid must be nonempty");
  validate_trials(n_trials);
  if (params.sigma < spec.declared_sigma * (1.0 - 1e-12))
    throw input_error("sigma is below the declared subgaussian proxy");
  if (params.use_mean != spec.has_mean())
    throw input_error("params.use_mean must match whether the sampler carries a mean");
  const SpectralSummary summary = summarize(a, spec.mu);
  const double limit = 0.9 * mgf_domain_limit(summary, params.sigma);
  MgfCheck out;
  out.eta_grid.assign(eta_grid.begin(), eta_grid.end());
  out.n_trials = n_trials;
  for (double eta : eta_grid) {
    require_finite(eta, "eta");
    if (eta < 0.0) throw domain_error("eta must be >= 0");
    if (eta > limit)
      throw domain_error("eta = " + std::to_string(eta) +
                         " exceeds the safety margin 0.9/(2 sigma^2 ||Sigma||) = " +
                         std::to_string(limit));
    out.bound.push_back(mgf_upper_bound(summary, params, eta));
  }

  const std::size_t m = out.eta_grid.size();
  std::vector<double> sum(m, 0.0), sum_sq(m, 0.0);
  for (std::uint64_t j = 0; j < n_trials; ++j) {
    const Eigen::VectorXd x = sample_vector(spec, SeededStream{master_seed, j});
    const double q = (a.values * x).squaredNorm();
    for (std::size_t i = 0; i < m; ++i) {
      const double v = std::exp(out.eta_grid[i] * q);
      sum[i] += v;
      sum_sq[i] += v * v;
    }
  }

  // Decoupled comparison: z standard normal in the row space, statistic
  // exp(sigma^2 eta ||A^T z||^2 + sqrt(2 eta) <A mu, z>).
  const std::uint64_t z_master = mix64(master_seed ^ kDecoupledSalt);
  const double s2 = params.sigma * params.sigma;
  Eigen::VectorXd a_mu = Eigen::VectorXd::Zero(a.rows());
  if (spec.mu) a_mu = a.values * (*spec.mu);
  std::vector<double> dsum(m, 0.0), dsum_sq(m, 0.0);
  for (std::uint64_t j = 0; j < n_trials; ++j) {
    SplitMix64 eng = SeededStream{z_master, j}.engine();
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::VectorXd z(a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) z[i] = dist(eng);
    const double qz = (a.values.transpose() * z).squaredNorm();
    const double mz = a_mu.dot(z);
    for (std::size_t i = 0; i < m; ++i) {
      const double eta = out.eta_grid[i];
      const double v = std::exp(s2 * eta * qz + std::sqrt(2.0 * eta) * mz);
      dsum[i] += v;
      dsum_sq[i] += v * v;
    }
  }

  const double nd = static_cast<double>(n_trials);
  auto mean_se = [&](double s, double ss, double& mean, double& se) {
    mean = s / nd;
    const double var = std::max(0.0, (ss - nd * mean * mean) / (nd - 1.0));
    se = std::sqrt(var / nd);
  };
  for (std::size_t i = 0; i < m; ++i) {
    double mean = 0.0, se = 0.0;
    mean_se(sum[i], sum_sq[i], mean, se);
    out.empirical.push_back(mean);
    out.empirical_se.push_back(se);
    mean_se(dsum[i], dsum_sq[i], mean, se);
    out.decoupled.push_back(mean);
    out.decoupled_se.push_back(se);
  }
  return out;
}

bool mgf_chain_ok(const MgfCheck& check, std::size_t i) {
  const double combined_se =
      std::hypot(check.empirical_se[i], check.decoupled_se[i]);
  if (check.empirical[i] > check.decoupled[i] + 3.0 * combined_se) return false;
  const double rel_se =
      check.decoupled[i] > 0.0 ? check.decoupled_se[i] / check.decoupled[i] : 0.0;
  return check.decoupled[i] <= check.bound[i] * (1.0 + 3.0 * rel_se);
}

EmpiricalTail martingale_experiment(const MartingaleSpec& spec,
                                    std::span<const double> t_grid,
                                    std::uint64_t n_trials, std::uint64_t master_seed) {
  validate_t_grid(t_grid);
  validate_trials(n_trials);
  std::vector<double> thresholds;
  thresholds.reserve(t_grid.size());
  for (double t : t_grid)
    thresholds.push_back(vector_bernstein_bound(spec.v_bound, spec.b_bound, t));
  auto counts = count_exceedances(
      thresholds, n_trials, 1, [&](std::uint64_t j) {
        return sample_martingale_sum(spec, SeededStream{master_seed, j}).norm;
      });
  return finish_tail(t_grid, std::move(thresholds), std::move(counts), n_trials);
}

}  // namespace qfb
