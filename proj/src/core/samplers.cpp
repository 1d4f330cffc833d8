// SPDX-License-Identifier: Apache-2.0
#include "core/samplers.hpp"

#include <cmath>
#include <random>
#include <string>

#include "core/common.hpp"

namespace qfb {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Family family_from_string(std::string_view name) {
  if (name == "gaussian") return Family::gaussian;
  if (name == "rademacher") return Family::rademacher;
  if (name == "uniform") return Family::uniform_symmetric;
  throw input_error("unknown family '" + std::string(name) +
                    "' (expected gaussian, rademacher, or uniform)");
}

const char* to_string(Family family) {
  switch (family) {
    case Family::gaussian: return "gaussian";
    case Family::rademacher: return "rademacher";
    case Family::uniform_symmetric: return "uniform";
  }
  return "?";
}

double declared_sigma_for(Family family, double scale) {
  switch (family) {
    case Family::gaussian: return scale;
    case Family::rademacher: return scale;
    // E exp(u U) = sinh(uc)/(uc) <= exp(u^2 c^2 / 6) for U uniform on [-c, c].
    case Family::uniform_symmetric: return scale / std::sqrt(3.0);
  }
  throw input_error("family carries no certified subgaussian proxy");
}

SubgaussianSpec SubgaussianSpec::make(Family family, Eigen::Index dimension, double scale,
                                      std::optional<Eigen::VectorXd> mu) {
  if (dimension <= 0) throw input_error("dimension must be positive");
  require_finite(scale, "scale");
  if (scale < 0.0) throw input_error("scale must be >= 0");
  if (mu) {
    if (mu->size() != dimension)
      throw input_error("mean vector length must equal the dimension");
    if (!mu->allFinite()) throw input_error("mean vector entries must be finite");
  }
  SubgaussianSpec spec;
  spec.family = family;
  spec.dimension = dimension;
  spec.scale = scale;
  spec.declared_sigma = declared_sigma_for(family, scale);
  spec.mu = std::move(mu);
  return spec;
}

Eigen::VectorXd sample_vector(const SubgaussianSpec& spec, const SeededStream& stream) {
  SplitMix64 eng = stream.engine();
  Eigen::VectorXd x(spec.dimension);
  switch (spec.family) {
    case Family::gaussian: {
      std::normal_distribution<double> dist(0.0, 1.0);
      for (Eigen::Index i = 0; i < spec.dimension; ++i) x[i] = spec.scale * dist(eng);
      break;
    }
    case Family::rademacher: {
      for (Eigen::Index i = 0; i < spec.dimension; ++i)
        x[i] = (eng() >> 63) ? spec.scale : -spec.scale;
      break;
    }
    case Family::uniform_symmetric: {
      std::uniform_real_distribution<double> dist(-spec.scale, spec.scale);
      for (Eigen::Index i = 0; i < spec.dimension; ++i) x[i] = dist(eng);
      break;
    }
  }
  if (spec.mu) x += *spec.mu;
  return x;
}

MartingaleSpec MartingaleSpec::make(Eigen::MatrixXd columns, bool adapted_gain) {
  if (columns.rows() == 0 || columns.cols() == 0)
    throw input_error("martingale increment matrix must be nonempty");
  if (!columns.allFinite())
    throw input_error("martingale increment entries must be finite");
  MartingaleSpec spec;
  spec.adapted_gain = adapted_gain;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    const double n2 = columns.col(j).squaredNorm();
    spec.v_bound += n2;
    spec.b_bound = std::max(spec.b_bound, std::sqrt(n2));
  }
  spec.columns = std::move(columns);
  return spec;
}

MartingaleDraw sample_martingale_sum(const MartingaleSpec& spec,
                                     const SeededStream& stream) {
  SplitMix64 eng = stream.engine();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(spec.columns.rows());
  for (Eigen::Index j = 0; j < spec.columns.cols(); ++j) {
    const double x = (eng() >> 63) ? 1.0 : -1.0;
    double gain = 1.0;
    if (spec.adapted_gain) {
      // Any [-1, 1] function of the partial sum keeps the increments
      // conditionally centered; the offset avoids the fixed point at 0.
      gain = std::tanh(sum[0] + 0.5);
    }
    sum += spec.columns.col(j) * (x * gain);
  }
  MartingaleDraw draw;
  draw.norm = sum.norm();
  draw.sum = std::move(sum);
  return draw;
}

}  // namespace qfb
