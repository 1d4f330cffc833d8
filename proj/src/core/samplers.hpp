// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string_view>

namespace qfb {

// splitmix64: cheap to seed at any stream offset, passes BigCrush-level
// smoke tests, and gives every Monte Carlo trial its own reproducible
// engine regardless of how trials are partitioned across workers.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t z);

// (master_seed, stream_index) -> independent engine. Equal pairs give
// identical draws; the stream index decorrelates initial states.
struct SeededStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  SplitMix64 engine() const {
    return SplitMix64(mix64(master_seed + 0x9E3779B97F4A7C15ull * (stream_index + 1)));
  }
};

enum class Family { gaussian, rademacher, uniform_symmetric };

Family family_from_string(std::string_view name);
const char* to_string(Family family);
// Certified subgaussian proxy per unit scale for each family.
double declared_sigma_for(Family family, double scale);

// Distribution of x: independent mean-zero coordinates from a named
// family, scaled, optionally shifted by mu. declared_sigma is the proxy
// the family certifies at the given scale.
struct SubgaussianSpec {
  Family family = Family::gaussian;
  Eigen::Index dimension = 0;
  double scale = 1.0;
  double declared_sigma = 1.0;
  std::optional<Eigen::VectorXd> mu;

  static SubgaussianSpec make(Family family, Eigen::Index dimension, double scale,
                              std::optional<Eigen::VectorXd> mu = std::nullopt);
  bool has_mean() const { return mu.has_value(); }
};

Eigen::VectorXd sample_vector(const SubgaussianSpec& spec, const SeededStream& stream);

// Martingale sum_i a_i x_i g_i with Rademacher x_i and a gain g_i in
// [-1, 1] measurable with respect to the past, so each increment stays
// conditionally centered with norm at most ||a_i||.
struct MartingaleSpec {
  Eigen::MatrixXd columns;  // one increment direction per column
  bool adapted_gain = false;
  double v_bound = 0.0;  // sum of squared column norms
  double b_bound = 0.0;  // largest column norm

  static MartingaleSpec make(Eigen::MatrixXd columns, bool adapted_gain);
};

struct MartingaleDraw {
  Eigen::VectorXd sum;
  double norm = 0.0;
};

MartingaleDraw sample_martingale_sum(const MartingaleSpec& spec,
                                     const SeededStream& stream);

}  // namespace qfb
