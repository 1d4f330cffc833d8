// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <span>
#include <string>

namespace qfb {

// Dense real matrix with every entry validated finite at construction.
struct RealMatrix {
  Eigen::MatrixXd values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }

  static RealMatrix create(Eigen::MatrixXd m);
  static RealMatrix from_row_major(Eigen::Index rows, Eigen::Index cols,
                                   std::span<const double> data);
};

Eigen::VectorXd make_vector(std::span<const double> data, const char* what);

// CSV: one row per line, comma-separated numeric fields, all rows equal
// length. Blank lines are ignored. Anything else is an input error.
RealMatrix parse_matrix_csv(const std::string& text, const std::string& origin);
RealMatrix load_matrix_csv(const std::string& path);
Eigen::VectorXd load_vector_csv(const std::string& path);

}  // namespace qfb
