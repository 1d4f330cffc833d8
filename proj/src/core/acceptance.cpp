// SPDX-License-Identifier: Apache-2.0
#include "core/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "core/bounds.hpp"
#include "core/montecarlo.hpp"
#include "core/oracles.hpp"
#include "core/regression.hpp"
#include "core/render.hpp"

namespace qfb {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

RealMatrix identity_matrix(Eigen::Index n) {
  return RealMatrix::create(Eigen::MatrixXd::Identity(n, n));
}

RealMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  SplitMix64 eng(mix64(seed));
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(eng);
  return RealMatrix::create(std::move(m));
}

Eigen::VectorXd pattern_mean(Eigen::Index dim) {
  Eigen::VectorXd mu(dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    mu[j] = (static_cast<double>(j % 4) - 1.5) / 2.0;
  return mu;
}

// 1. Tail validity across a matrix x family grid.
CriterionResult criterion_validity(const AcceptanceOptions& opts) {
  CriterionResult res{1, "validity-suite", true, ""};
  std::vector<RealMatrix> matrices;
  matrices.push_back(identity_matrix(10));
  {
    Eigen::VectorXd diag(10);
    for (int i = 0; i < 10; ++i) diag[i] = i + 1.0;
    matrices.push_back(RealMatrix::create(diag.asDiagonal()));
  }
  {
    Eigen::Vector2d v(3.0, 4.0);
    matrices.push_back(RealMatrix::create(v * v.transpose()));
  }
  matrices.push_back(gaussian_matrix(5, 20, opts.master_seed ^ 0x11));

  const std::vector<double> t_grid{0.5, 1.0, 2.0, 3.0};
  double worst = 0.0;
  std::string worst_label = "none";
  std::uint64_t combo = 0;
  for (const RealMatrix& a : matrices) {
    const Eigen::Index dim = a.cols();
    struct Config {
      SubgaussianSpec spec;
      const char* label;
    };
    std::vector<Config> configs;
    configs.push_back({SubgaussianSpec::make(Family::gaussian, dim, 1.0), "gaussian"});
    configs.push_back(
        {SubgaussianSpec::make(Family::rademacher, dim, 1.0), "rademacher"});
    configs.push_back(
        {SubgaussianSpec::make(Family::uniform_symmetric, dim, 1.0), "uniform"});
    configs.push_back(
        {SubgaussianSpec::make(Family::gaussian, dim, 1.0, pattern_mean(dim)),
         "gaussian+mean"});
    for (const Config& config : configs) {
      const SubgaussianParams params{config.spec.declared_sigma,
                                     config.spec.has_mean()};
      const EmpiricalTail tail =
          estimate_tail(a, config.spec, params, t_grid, opts.tail_trials,
                        mix64(opts.master_seed + 0x100 * ++combo), 2);
      const CertifyReport report = certify(tail);
      if (!report.all_pass) res.pass = false;
      if (report.any_certified && report.worst_margin > worst) {
        worst = report.worst_margin;
        worst_label = std::string(config.label) + " at t=" +
                      format_g17(tail.t_grid[report.worst_index]);
      }
    }
  }
  res.detail = fmt("worst ci/target margin %.4f", worst) + " (" + worst_label + ")";
  return res;
}

// 2. Subgaussian bound at sigma=1 without mean equals the Gaussian bound.
CriterionResult criterion_reduction(const AcceptanceOptions& opts) {
  CriterionResult res{2, "gaussian-reduction", true, ""};
  SplitMix64 eng(mix64(opts.master_seed ^ 0x22));
  std::size_t checked = 0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index rows = 1 + static_cast<Eigen::Index>(eng() % 8);
    const Eigen::Index cols = 1 + static_cast<Eigen::Index>(eng() % 8);
    const RealMatrix a = gaussian_matrix(rows, cols, eng());
    const SpectralSummary s = summarize(a);
    for (int i = 1; i <= 100; ++i) {
      const double t = 0.1 * i;
      const TailBound g = gaussian_quadratic_bound(s, t);
      const TailBound sub = subgaussian_quadratic_bound(s, {1.0, false}, t);
      if (g.epsilon != sub.epsilon || g.term_trace != sub.term_trace ||
          g.term_deviation != sub.term_deviation || g.term_mean != sub.term_mean) {
        res.pass = false;
        res.detail = fmt("mismatch at t=%.2f", t);
        return res;
      }
      ++checked;
    }
  }
  res.detail = std::to_string(checked) + " pairs bit-identical";
  return res;
}

// 3. tail_probability_at inverts the bound exactly up to roundoff.
CriterionResult criterion_round_trip(const AcceptanceOptions& opts) {
  CriterionResult res{3, "chernoff-round-trip", true, ""};
  SplitMix64 eng(mix64(opts.master_seed ^ 0x33));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t dim = 1 + static_cast<std::size_t>(eng() % 30);
    std::vector<double> rho(dim);
    for (double& r : rho) r = std::exp(-6.0 + 12.0 * unit(eng));
    const SpectralSummary s = summary_from_eigenvalues(std::move(rho));
    const double sigma = std::exp(std::log(0.1) + std::log(30.0) * unit(eng));
    const double t = std::exp(std::log(0.01) + std::log(2000.0) * unit(eng));
    const double eps = subgaussian_quadratic_bound(s, {sigma, false}, t).epsilon;
    const double p = tail_probability_at(s, sigma, eps);
    const double target = std::exp(-t);
    const double rel = std::abs(p - target) / target;
    worst = std::max(worst, rel);
    if (rel > 1e-12) res.pass = false;
  }
  res.detail = fmt("worst relative error %.3e over 1000 triples", worst);
  return res;
}

// 4. Exact survival probabilities at the bound's threshold stay below e^{-t}.
CriterionResult criterion_chi2_oracle(const AcceptanceOptions&) {
  CriterionResult res{4, "chi2-oracle", true, ""};
  double worst = 0.0;
  const std::vector<double> gamma{1.0};
  for (double t : {0.5, 1.0, 2.0, 5.0}) {
    const double eps = chi2_tail_bound(gamma, t);
    const double oracle = 2.0 * normal_upper_tail(std::sqrt(eps));
    const double target = std::exp(-t);
    worst = std::max(worst, oracle / target);
    if (oracle > target) res.pass = false;
  }
  const SpectralSummary s100 =
      summary_from_eigenvalues(std::vector<double>(100, 1.0));
  const double eps100 = gaussian_quadratic_bound(s100, 1.0).epsilon;
  if (eps100 != 122.0) {
    res.pass = false;
    res.detail = fmt("threshold %.17g != 122", eps100);
    return res;
  }
  const double sf = chi2_survival(eps100, 100);
  if (sf > std::exp(-1.0)) res.pass = false;
  worst = std::max(worst, sf / std::exp(-1.0));
  res.detail = fmt("worst oracle/target %.4f; survival at 122 = %.6f", worst, sf);
  return res;
}

// 5. Closed-form MGF domination plus the Monte Carlo chain.
CriterionResult criterion_mgf(const AcceptanceOptions& opts) {
  CriterionResult res{5, "mgf-domination", true, ""};
  const RealMatrix a = RealMatrix::from_row_major(1, 1, std::vector<double>{1.0});
  const SpectralSummary s = summarize(a);
  std::vector<double> eta_grid;
  for (int i = 1; i <= 8; ++i) eta_grid.push_back(0.05 * i);
  double worst = 0.0;
  for (double eta : eta_grid) {
    const double closed = gaussian_quadratic_mgf(s.rho, eta);
    const double bound = mgf_upper_bound(s, {1.0, false}, eta);
    worst = std::max(worst, closed / bound);
    if (closed > bound) res.pass = false;
  }
  const SubgaussianSpec spec = SubgaussianSpec::make(Family::gaussian, 1, 1.0);
  const MgfCheck check = estimate_mgf(a, spec, {1.0, false}, eta_grid,
                                      opts.mgf_trials, opts.master_seed ^ 0x55);
  for (std::size_t i = 0; i < eta_grid.size(); ++i)
    if (!mgf_chain_ok(check, i)) {
      res.pass = false;
      res.detail = fmt("chain ordering fails at eta=%.2f", eta_grid[i]);
      return res;
    }
  res.detail = fmt("max closed-form/bound %.4f; chain holds at all 8 points", worst);
  return res;
}

// 6. Exact Gaussian CGF vs its bound on random in-domain triples.
CriterionResult criterion_cgf(const AcceptanceOptions& opts) {
  CriterionResult res{6, "cgf-oracle", true, ""};
  SplitMix64 eng(mix64(opts.master_seed ^ 0x66));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_gap = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t dim = 1 + static_cast<std::size_t>(eng() % 3);
    std::vector<double> alpha(dim), beta(dim);
    double amax = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      alpha[i] = 0.8 + 0.4 * unit(eng);
      beta[i] = -1.0 + 2.0 * unit(eng);
      amax = std::max(amax, alpha[i]);
    }
    const double lambda = (0.02 + 0.98 * unit(eng)) * 0.1 / amax;
    const double exact = gaussian_quadratic_cgf(alpha, beta, lambda);
    const double bound = gaussian_cgf_bound(alpha, beta, lambda);
    if (exact > bound * (1.0 + 1e-12)) res.pass = false;
    const double gap = (bound - exact) / exact;
    worst_gap = std::max(worst_gap, gap);
    if (gap >= 0.10) res.pass = false;
  }
  res.detail = fmt("max relative gap %.4f over 50 triples", worst_gap);
  return res;
}

// 7. OLS excess risk: mean tightness and exceedance certification.
CriterionResult criterion_ols(const AcceptanceOptions& opts) {
  CriterionResult res{7, "ols-experiment", true, ""};
  const FixedDesign design =
      FixedDesign::make(random_design(50, 2, opts.master_seed ^ 0x77));
  Eigen::VectorXd beta_star(2);
  beta_star << 1.0, -2.0;
  const std::vector<double> t_grid{0.5, 1.0, 2.0};
  const SubgaussianSpec gaussian_noise = SubgaussianSpec::make(Family::gaussian, 50, 1.0);
  const ExcessRiskReport gauss =
      run_experiment(design, beta_star, gaussian_noise, 10000, t_grid,
                     mix64(opts.master_seed ^ 0x777), false, 2);
  const double rel_mean = std::abs(gauss.mean_loss - gauss.theory_mean) /
                          gauss.theory_mean;
  if (rel_mean > 0.05) res.pass = false;
  if (!experiment_all_pass(gauss)) res.pass = false;
  const SubgaussianSpec rad_noise = SubgaussianSpec::make(Family::rademacher, 50, 1.0);
  const ExcessRiskReport rad =
      run_experiment(design, beta_star, rad_noise, 10000, t_grid,
                     mix64(opts.master_seed ^ 0x778), false, 2);
  if (!experiment_all_pass(rad)) res.pass = false;
  res.detail = fmt("gaussian mean %.5f vs 0.04 (gap %.2f%%); both noise runs certify",
                   gauss.mean_loss, 100.0 * rel_mean);
  return res;
}

// 8. The quadratic-form bound beats the squared norm-martingale bound.
CriterionResult criterion_comparison(const AcceptanceOptions&) {
  CriterionResult res{8, "bound-comparison", true, ""};
  const SpectralSummary s = summary_from_eigenvalues(std::vector<double>(100, 1.0));
  const std::vector<double> norms(100, 1.0);
  for (double t : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0, 25.0, 50.0, 100.0, 1000.0}) {
    const BoundComparison cmp = compare_bounds(s, norms, t);
    if (!(cmp.theorem_bound < cmp.bernstein_bound_sq)) {
      res.pass = false;
      res.detail = fmt("no improvement at t=%.1f", t);
      return res;
    }
  }
  const BoundComparison at25 = compare_bounds(s, norms, 25.0);
  const double frozen = 0.007324012336227839;
  if (std::abs(at25.ratio - frozen) > 1e-12 * frozen) res.pass = false;
  if (std::abs(at25.ratio - 0.0073) > 5e-5) res.pass = false;
  res.detail = fmt("ratio at t=25 is %.10f", at25.ratio);
  return res;
}

// 9. Martingale norm certification and the second-moment identity.
CriterionResult criterion_martingale(const AcceptanceOptions& opts) {
  CriterionResult res{9, "martingale-validity", true, ""};
  const Eigen::MatrixXd columns = Eigen::MatrixXd::Identity(100, 100);
  const std::vector<double> t_grid{0.5, 1.0, 2.0};
  double identity_gap = 0.0;
  for (bool adapted : {false, true}) {
    const MartingaleSpec spec = MartingaleSpec::make(columns, adapted);
    const EmpiricalTail tail = martingale_experiment(
        spec, t_grid, opts.tail_trials,
        mix64(opts.master_seed ^ (adapted ? 0x99Au : 0x999u)));
    if (!certify(tail).all_pass) res.pass = false;
    if (!adapted) {
      // E||sum||^2 equals the summed increment second moments; without
      // gains every draw hits it exactly.
      double sum = 0.0, sum_sq = 0.0;
      const std::uint64_t n = opts.tail_trials;
      for (std::uint64_t j = 0; j < n; ++j) {
        const double q =
            sample_martingale_sum(spec,
                                  SeededStream{mix64(opts.master_seed ^ 0x99Bu), j})
                .sum.squaredNorm();
        sum += q;
        sum_sq += q * q;
      }
      const double mean = sum / static_cast<double>(n);
      const double var = std::max(
          0.0, (sum_sq - static_cast<double>(n) * mean * mean) /
                   (static_cast<double>(n) - 1.0));
      const double se = std::sqrt(var / static_cast<double>(n));
      identity_gap = std::abs(mean - spec.v_bound);
      if (identity_gap > 3.0 * se + 1e-9) res.pass = false;
    }
  }
  res.detail = fmt("second-moment gap %.3e; both runs certify", identity_gap);
  return res;
}

// 10. Determinism: byte-identical reruns, partition-invariant counts.
CriterionResult criterion_determinism(const AcceptanceOptions& opts) {
  CriterionResult res{10, "determinism", true, ""};
  const RealMatrix a = identity_matrix(10);
  const SubgaussianSpec spec = SubgaussianSpec::make(Family::gaussian, 10, 1.0);
  const SubgaussianParams params{1.0, false};
  const std::vector<double> t_grid{0.5, 1.0, 2.0};
  const std::uint64_t seed = mix64(opts.master_seed ^ 0xAA);
  const EmpiricalTail one = estimate_tail(a, spec, params, t_grid, 20000, seed, 1);
  const EmpiricalTail again = estimate_tail(a, spec, params, t_grid, 20000, seed, 1);
  const EmpiricalTail sixteen = estimate_tail(a, spec, params, t_grid, 20000, seed, 16);
  if (tail_report_csv(one) != tail_report_csv(again)) res.pass = false;
  if (one.exceed_counts != sixteen.exceed_counts) res.pass = false;

  std::vector<double> eta_grid{0.05, 0.2, 0.4};
  const MgfCheck m1 = estimate_mgf(a, spec, params, eta_grid, 5000, seed);
  const MgfCheck m2 = estimate_mgf(a, spec, params, eta_grid, 5000, seed);
  if (mgf_report_csv(m1) != mgf_report_csv(m2)) res.pass = false;

  const FixedDesign design = FixedDesign::make(random_design(30, 3, seed));
  Eigen::VectorXd beta_star = Eigen::VectorXd::Zero(3);
  const SubgaussianSpec noise = SubgaussianSpec::make(Family::gaussian, 30, 0.5);
  const ExcessRiskReport r1 =
      run_experiment(design, beta_star, noise, 2000, t_grid, seed, false, 1);
  const ExcessRiskReport r16 =
      run_experiment(design, beta_star, noise, 2000, t_grid, seed, false, 16);
  if (ols_report_csv(r1) != ols_report_csv(r16)) res.pass = false;
  res.detail = "reruns byte-identical; counts invariant to stream partitioning";
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  results.push_back(criterion_validity(options));
  results.push_back(criterion_reduction(options));
  results.push_back(criterion_round_trip(options));
  results.push_back(criterion_chi2_oracle(options));
  results.push_back(criterion_mgf(options));
  results.push_back(criterion_cgf(options));
  results.push_back(criterion_ols(options));
  results.push_back(criterion_comparison(options));
  results.push_back(criterion_martingale(options));
  results.push_back(criterion_determinism(options));
  return results;
}

std::string render_acceptance(const std::vector<CriterionResult>& results) {
  std::string out;
  int passed = 0;
  for (const CriterionResult& r : results) {
    char head[64];
    std::snprintf(head, sizeof(head), "criterion %2d %-22s ", r.id, r.name.c_str());
    out += head;
    out += r.pass ? "PASS" : "FAIL";
    if (!r.detail.empty()) out += "  (" + r.detail + ")";
    out += "\n";
    if (r.pass) ++passed;
  }
  out += "acceptance: " + std::to_string(passed) + "/" +
         std::to_string(results.size()) + " criteria passed\n";
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const CriterionResult& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

}  // namespace qfb
