// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>

#include "core/bounds.hpp"
#include "core/montecarlo.hpp"
#include "core/regression.hpp"

namespace qfb {

// Shortest exact decimal round-trip is not required; 17 significant
// digits reproduce every double bit-for-bit, which keeps reruns of the
// same seed byte-identical.
std::string format_g17(double v);

std::string bound_rows_csv(std::span<const TailBound> rows);
std::string bound_rows_json(std::span<const TailBound> rows);

std::string tail_report_csv(const EmpiricalTail& tail);
std::string tail_report_json(const EmpiricalTail& tail);

std::string mgf_report_csv(const MgfCheck& check);
std::string mgf_report_json(const MgfCheck& check);

std::string ols_report_csv(const ExcessRiskReport& report);
std::string ols_report_json(const ExcessRiskReport& report);

std::string comparison_rows_csv(std::span<const BoundComparison> rows);
std::string comparison_rows_json(std::span<const BoundComparison> rows);

}  // namespace qfb
