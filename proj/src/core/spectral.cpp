// SPDX-License-Identifier: Apache-2.0
#include "core/spectral.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "core/common.hpp"

namespace qfb {

namespace {

SpectralSummary finish(std::vector<double> rho, std::optional<double> mean_image_sq) {
  SpectralSummary s;
  s.op_norm = rho.empty() ? 0.0 : rho.front();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * s.op_norm;
  for (double& r : rho)
    if (r < floor) r = 0.0;
  double tr = 0.0, trsq = 0.0;
  for (double r : rho) {
    tr += r;
    trsq += r * r;
  }
  s.rho = std::move(rho);
  s.trace_sigma = tr;
  s.trace_sigma_sq = trsq;
  s.mean_image_sq = mean_image_sq;
  return s;
}

}  // namespace

SpectralSummary summarize(const RealMatrix& a, const std::optional<Eigen::VectorXd>& mu) {
  std::optional<double> mean_image_sq;
  if (mu) {
    if (mu->size() != a.cols())
      throw input_error("mean vector length must equal the matrix column count");
    if (!mu->allFinite()) throw input_error("mean vector entries must be finite");
    mean_image_sq = (a.values * (*mu)).squaredNorm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.values);
  const auto& sv = svd.singularValues();
  // Sigma = A^T A has one eigenvalue per column; a wide matrix carries
  // structural zeros beyond the singular value count.
  std::vector<double> rho(static_cast<std::size_t>(a.cols()), 0.0);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    rho[static_cast<std::size_t>(i)] = sv[i] * sv[i];
  return finish(std::move(rho), mean_image_sq);
}

SpectralSummary summary_from_eigenvalues(std::vector<double> rho,
                                         std::optional<double> mean_image_sq) {
  if (rho.empty()) throw input_error("eigenvalue list must be nonempty");
  for (double r : rho) {
    require_finite(r, "eigenvalue");
    if (r < 0.0) throw input_error("eigenvalues of Sigma must be nonnegative");
  }
  if (mean_image_sq) {
    require_finite(*mean_image_sq, "mean_image_sq");
    if (*mean_image_sq < 0.0) throw input_error("mean_image_sq must be nonnegative");
  }
  std::sort(rho.begin(), rho.end(), std::greater<double>());
  return finish(std::move(rho), mean_image_sq);
}

}  // namespace qfb
