// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "core/matrix.hpp"

namespace qfb {

// Spectral functionals of Sigma = A^T A, the only facts about A the
// bounds consume. rho holds the eigenvalues of Sigma (squared singular
// values of A) in nonincreasing order; values below 64*eps*op_norm are
// clipped to exact zero so rank-deficient inputs report clean spectra.
struct SpectralSummary {
  std::vector<double> rho;
  double trace_sigma = 0.0;
  double trace_sigma_sq = 0.0;
  double op_norm = 0.0;
  std::optional<double> mean_image_sq;  // ||A mu||^2 when a mean was supplied
};

SpectralSummary summarize(const RealMatrix& a,
                          const std::optional<Eigen::VectorXd>& mu = std::nullopt);

// Build a summary directly from eigenvalues of Sigma (any order, >= 0).
SpectralSummary summary_from_eigenvalues(std::vector<double> rho,
                                         std::optional<double> mean_image_sq = std::nullopt);

}  // namespace qfb
