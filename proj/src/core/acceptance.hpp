// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qfb {

struct AcceptanceOptions {
  std::uint64_t tail_trials = 100000;   // exceedance experiments
  std::uint64_t mgf_trials = 1000000;   // MGF chain check
  std::uint64_t master_seed = 0x5EEDC0DEull;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The full check battery. Every criterion runs even if an earlier one
// fails; the report carries one entry per criterion in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

// One line per criterion plus a summary line.
std::string render_acceptance(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qfb
