// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/bounds.hpp"
#include "core/matrix.hpp"
#include "core/samplers.hpp"

namespace qfb {

// Exceedance counts of a statistic against per-t thresholds, plus the
// exact one-sided 99% upper confidence bound on each exceedance rate.
// Trial j always draws from stream (master_seed, j), so the counts do not
// depend on how trials were partitioned across workers.
struct EmpiricalTail {
  std::vector<double> t_grid;
  std::vector<double> thresholds;
  std::vector<std::uint64_t> exceed_counts;
  std::uint64_t n_trials = 0;
  std::vector<double> empirical_rate;
  std::vector<double> ci_upper;
  std::vector<double> target;      // e^{-t}
  std::vector<char> certifiable;   // target * n_trials >= 10
};

struct CertifyReport {
  std::vector<char> pass;  // per grid point; non-certifiable points pass vacuously
  bool all_pass = true;
  bool any_certified = false;
  double worst_margin = 0.0;  // max ci_upper / target over certified points
  std::size_t worst_index = 0;
};

EmpiricalTail estimate_tail(const RealMatrix& a, const SubgaussianSpec& spec,
                            const SubgaussianParams& params,
                            std::span<const double> t_grid, std::uint64_t n_trials,
                            std::uint64_t master_seed, unsigned n_streams);

CertifyReport certify(const EmpiricalTail& tail);

// Empirical MGF of ||Ax||^2 at each eta, against the decoupled Gaussian
// comparison and the closed-form bound. Standard errors accompany both
// empirical columns.
struct MgfCheck {
  std::vector<double> eta_grid;
  std::vector<double> empirical;
  std::vector<double> empirical_se;
  std::vector<double> decoupled;
  std::vector<double> decoupled_se;
  std::vector<double> bound;
  std::uint64_t n_trials = 0;
};

// empirical <= decoupled + 3 * combined SE, and decoupled <= bound within
// 3 relative SE; the chain the theory promises, with sampling slack.
bool mgf_chain_ok(const MgfCheck& check, std::size_t i);

MgfCheck estimate_mgf(const RealMatrix& a, const SubgaussianSpec& spec,
                      const SubgaussianParams& params, std::span<const double> eta_grid,
                      std::uint64_t n_trials, std::uint64_t master_seed);

// Norm of the martingale sum against the vector Bernstein level: the
// thresholds bound the norm itself, not its square.
EmpiricalTail martingale_experiment(const MartingaleSpec& spec,
                                    std::span<const double> t_grid,
                                    std::uint64_t n_trials, std::uint64_t master_seed);

}  // namespace qfb
