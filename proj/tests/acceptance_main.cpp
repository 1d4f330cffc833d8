// SPDX-License-Identifier: Apache-2.0
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "core/acceptance.hpp"

namespace fs = std::filesystem;

namespace {

int run_cmd(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool files_equal(const fs::path& a, const fs::path& b) {
  const std::string text = slurp(a);
  return !text.empty() && text == slurp(b);
}

// Re-runs the shipped command-line tool and checks that simulate, mgf, and
// ols are byte-stable under reruns and stream-count changes.
bool cli_determinism(const std::string& cli, std::string& detail) {
  const fs::path dir = fs::temp_directory_path() / "qfb_acceptance_cli";
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir);

  {
    std::ofstream out(dir / "I10.csv");
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) out << (i == j ? '1' : '0') << (j < 9 ? "," : "");
      out << '\n';
    }
  }
  const std::string matrix = (dir / "I10.csv").string();
  const auto out = [&dir](const char* name) { return (dir / name).string(); };

  const std::string simulate = cli + " simulate --matrix " + matrix +
                               " --family gaussian --trials 20000 --t 0.5,1,2 "
                               "--seed 424242 --out ";
  if (run_cmd(simulate + out("sim_a.csv") + " --streams 4") != 0 ||
      run_cmd(simulate + out("sim_b.csv") + " --streams 4") != 0 ||
      run_cmd(simulate + out("sim_s1.csv") + " --streams 1") != 0 ||
      run_cmd(simulate + out("sim_s16.csv") + " --streams 16") != 0) {
    detail = "simulate invocation failed";
    return false;
  }
  if (!files_equal(dir / "sim_a.csv", dir / "sim_b.csv")) {
    detail = "simulate rerun differed";
    return false;
  }
  if (!files_equal(dir / "sim_s1.csv", dir / "sim_s16.csv")) {
    detail = "simulate counts changed with the stream partition";
    return false;
  }

  const std::string mgf = cli + " mgf --matrix " + matrix +
                          " --family gaussian --eta 0.005,0.01 --trials 5000 "
                          "--seed 77 --out ";
  if (run_cmd(mgf + out("mgf_a.csv")) != 0 || run_cmd(mgf + out("mgf_b.csv")) != 0 ||
      !files_equal(dir / "mgf_a.csv", dir / "mgf_b.csv")) {
    detail = "mgf rerun differed or failed";
    return false;
  }

  const std::string ols = cli +
                          " ols --d 3 --n 30 --sigma 0.5 --trials 2000 --seed 99 "
                          "--out ";
  if (run_cmd(ols + out("ols_a.csv") + " --streams 1") != 0 ||
      run_cmd(ols + out("ols_b.csv") + " --streams 1") != 0 ||
      run_cmd(ols + out("ols_s16.csv") + " --streams 16") != 0) {
    detail = "ols invocation failed";
    return false;
  }
  if (!files_equal(dir / "ols_a.csv", dir / "ols_b.csv") ||
      !files_equal(dir / "ols_a.csv", dir / "ols_s16.csv")) {
    detail = "ols rerun differed";
    return false;
  }

  detail = "cli reruns byte-identical; stream partition invariant";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  qfb::AcceptanceOptions options;
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const bool has_value = i + 1 < argc;
    if (arg == "--cli" && has_value) {
      cli = argv[++i];
    } else if (arg == "--trials" && has_value) {
      options.tail_trials = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--mgf-trials" && has_value) {
      options.mgf_trials = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--seed" && has_value) {
      options.master_seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::fprintf(stderr,
                   "usage: %s [--cli PATH] [--trials N] [--mgf-trials N] "
                   "[--seed U64]\n",
                   argv[0]);
      return 2;
    }
  }

  auto results = qfb::run_acceptance(options);

  if (!cli.empty()) {
    std::string detail;
    const bool ok = cli_determinism(cli, detail);
    auto& determinism = results.back();
    determinism.pass = determinism.pass && ok;
    determinism.detail += "; " + detail;
  }

  std::fputs(qfb::render_acceptance(results).c_str(), stdout);
  return qfb::all_passed(results) ? 0 : 1;
}
