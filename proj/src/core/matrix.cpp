// SPDX-License-Identifier: Apache-2.0
#include "core/matrix.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "core/common.hpp"

namespace qfb {

RealMatrix RealMatrix::create(Eigen::MatrixXd m) {
  if (m.rows() == 0 || m.cols() == 0) throw input_error("matrix must be nonempty");
  if (!m.allFinite()) throw input_error("matrix entries must be finite");
  return RealMatrix{std::move(m)};
}

RealMatrix RealMatrix::from_row_major(Eigen::Index rows, Eigen::Index cols,
                                      std::span<const double> data) {
  if (rows <= 0 || cols <= 0) throw input_error("matrix dimensions must be positive");
  if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != data.size())
    throw input_error("matrix data length does not match dimensions");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = data[i * cols + j];
  return create(std::move(m));
}

Eigen::VectorXd make_vector(std::span<const double> data, const char* what) {
  if (data.empty()) throw input_error(std::string(what) + " must be nonempty");
  Eigen::VectorXd v(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    require_finite(data[i], what);
    v[static_cast<Eigen::Index>(i)] = data[i];
  }
  return v;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field, const std::string& origin, std::size_t line_no) {
  field = trim(field);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw input_error(origin + ": line " + std::to_string(line_no) +
                      ": cannot parse numeric field '" + std::string(field) + "'");
  if (!std::isfinite(v))
    throw input_error(origin + ": line " + std::to_string(line_no) + ": non-finite value");
  return v;
}

}  // namespace

RealMatrix parse_matrix_csv(const std::string& text, const std::string& origin) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest = line;
    while (true) {
      auto comma = rest.find(',');
      row.push_back(parse_field(rest.substr(0, comma), origin, line_no));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw input_error(origin + ": line " + std::to_string(line_no) + ": expected " +
                        std::to_string(rows.front().size()) + " fields, got " +
                        std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw input_error(origin + ": no data rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return RealMatrix::create(std::move(m));
}

RealMatrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_csv(buf.str(), path);
}

Eigen::VectorXd load_vector_csv(const std::string& path) {
  RealMatrix m = load_matrix_csv(path);
  if (m.rows() != 1 && m.cols() != 1)
    throw input_error(path + ": expected a single row or column of values");
  Eigen::VectorXd v = (m.cols() == 1) ? Eigen::VectorXd(m.values.col(0))
                                      : Eigen::VectorXd(m.values.row(0).transpose());
  return v;
}

}  // namespace qfb
