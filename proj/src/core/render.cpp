// SPDX-License-Identifier: Apache-2.0
#include "core/render.hpp"

#include <cstdio>

#include <json.hpp>

namespace qfb {

using nlohmann::json;

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

// Numbers are serialized as strings of format_g17 output inside CSV and as
// native doubles inside JSON; nlohmann emits shortest-round-trip decimals,
// which are equally deterministic.
json tail_rows_json(const EmpiricalTail& tail, const CertifyReport& report) {
  json rows = json::array();
  for (std::size_t i = 0; i < tail.t_grid.size(); ++i) {
    rows.push_back({{"t", tail.t_grid[i]},
                    {"threshold", tail.thresholds[i]},
                    {"exceed_count", tail.exceed_counts[i]},
                    {"n_trials", tail.n_trials},
                    {"empirical_rate", tail.empirical_rate[i]},
                    {"ci_upper", tail.ci_upper[i]},
                    {"target", tail.target[i]},
                    {"certifiable", tail.certifiable[i] != 0},
                    {"pass", report.pass[i] != 0}});
  }
  return rows;
}

}  // namespace

std::string bound_rows_csv(std::span<const TailBound> rows) {
  std::string out = "t,epsilon,term_trace,term_deviation,term_mean\n";
  for (const TailBound& row : rows) {
    out += format_g17(row.t) + "," + format_g17(row.epsilon) + "," +
           format_g17(row.term_trace) + "," + format_g17(row.term_deviation) + "," +
           format_g17(row.term_mean) + "\n";
  }
  return out;
}

std::string bound_rows_json(std::span<const TailBound> rows) {
  json arr = json::array();
  for (const TailBound& row : rows) {
    arr.push_back({{"t", row.t},
                   {"epsilon", row.epsilon},
                   {"term_trace", row.term_trace},
                   {"term_deviation", row.term_deviation},
                   {"term_mean", row.term_mean}});
  }
  return json{{"rows", arr}}.dump(2) + "\n";
}

std::string tail_report_csv(const EmpiricalTail& tail) {
  const CertifyReport report = certify(tail);
  std::string out =
      "t,threshold,exceed_count,n_trials,empirical_rate,ci_upper,target,pass\n";
  for (std::size_t i = 0; i < tail.t_grid.size(); ++i) {
    out += format_g17(tail.t_grid[i]) + "," + format_g17(tail.thresholds[i]) + "," +
           std::to_string(tail.exceed_counts[i]) + "," +
           std::to_string(tail.n_trials) + "," +
           format_g17(tail.empirical_rate[i]) + "," + format_g17(tail.ci_upper[i]) +
           "," + format_g17(tail.target[i]) + "," +
           (report.pass[i] ? "1" : "0") + "\n";
  }
  return out;
}

std::string tail_report_json(const EmpiricalTail& tail) {
  const CertifyReport report = certify(tail);
  json doc{{"n_trials", tail.n_trials},
           {"rows", tail_rows_json(tail, report)},
           {"all_pass", report.all_pass},
           {"any_certified", report.any_certified}};
  if (report.any_certified) {
    doc["worst_margin"] = report.worst_margin;
    doc["worst_t"] = tail.t_grid[report.worst_index];
  }
  return doc.dump(2) + "\n";
}

std::string mgf_report_csv(const MgfCheck& check) {
  std::string out =
      "eta,empirical,empirical_se,decoupled,decoupled_se,bound,chain_ok\n";
  for (std::size_t i = 0; i < check.eta_grid.size(); ++i) {
    out += format_g17(check.eta_grid[i]) + "," + format_g17(check.empirical[i]) + "," +
           format_g17(check.empirical_se[i]) + "," + format_g17(check.decoupled[i]) +
           "," + format_g17(check.decoupled_se[i]) + "," +
           format_g17(check.bound[i]) + "," + (mgf_chain_ok(check, i) ? "1" : "0") +
           "\n";
  }
  return out;
}

std::string mgf_report_json(const MgfCheck& check) {
  json rows = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < check.eta_grid.size(); ++i) {
    const bool ok = mgf_chain_ok(check, i);
    all_ok = all_ok && ok;
    rows.push_back({{"eta", check.eta_grid[i]},
                    {"empirical", check.empirical[i]},
                    {"empirical_se", check.empirical_se[i]},
                    {"decoupled", check.decoupled[i]},
                    {"decoupled_se", check.decoupled_se[i]},
                    {"bound", check.bound[i]},
                    {"chain_ok", ok}});
  }
  return json{{"n_trials", check.n_trials}, {"rows", rows}, {"all_ok", all_ok}}
             .dump(2) +
         "\n";
}

std::string ols_report_csv(const ExcessRiskReport& report) {
  std::string out =
      "t,certificate,violation_count,replicates,violation_rate,ci_upper,target,pass\n";
  for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
    const bool ok = !report.certifiable[i] || report.ci_upper[i] <= report.target[i];
    out += format_g17(report.t_grid[i]) + "," + format_g17(report.bound_curve[i]) +
           "," + std::to_string(report.violation_counts[i]) + "," +
           std::to_string(report.replicates) + "," +
           format_g17(static_cast<double>(report.violation_counts[i]) /
                      static_cast<double>(report.replicates)) +
           "," + format_g17(report.ci_upper[i]) + "," + format_g17(report.target[i]) +
           "," + (ok ? "1" : "0") + "\n";
  }
  return out;
}

std::string ols_report_json(const ExcessRiskReport& report) {
  json rows = json::array();
  for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
    const bool ok = !report.certifiable[i] || report.ci_upper[i] <= report.target[i];
    rows.push_back({{"t", report.t_grid[i]},
                    {"certificate", report.bound_curve[i]},
                    {"violation_count", report.violation_counts[i]},
                    {"replicates", report.replicates},
                    {"ci_upper", report.ci_upper[i]},
                    {"target", report.target[i]},
                    {"certifiable", report.certifiable[i] != 0},
                    {"pass", ok}});
  }
  return json{{"replicates", report.replicates},
              {"mean_loss", report.mean_loss},
              {"theory_mean", report.theory_mean},
              {"noise_sigma", report.noise_sigma},
              {"strict_convention", report.strict_convention},
              {"rows", rows},
              {"all_pass", experiment_all_pass(report)}}
             .dump(2) +
         "\n";
}

std::string comparison_rows_csv(std::span<const BoundComparison> rows) {
  std::string out =
      "t,theorem_bound,bernstein_bound,bernstein_bound_sq,ratio\n";
  for (const BoundComparison& row : rows) {
    out += format_g17(row.t) + "," + format_g17(row.theorem_bound) + "," +
           format_g17(row.bernstein_bound) + "," +
           format_g17(row.bernstein_bound_sq) + "," + format_g17(row.ratio) + "\n";
  }
  return out;
}

std::string comparison_rows_json(std::span<const BoundComparison> rows) {
  json arr = json::array();
  for (const BoundComparison& row : rows) {
    arr.push_back({{"t", row.t},
                   {"theorem_bound", row.theorem_bound},
                   {"bernstein_bound", row.bernstein_bound},
                   {"bernstein_bound_sq", row.bernstein_bound_sq},
                   {"ratio", row.ratio}});
  }
  return json{{"rows", arr}}.dump(2) + "\n";
}

}  // namespace qfb
