// SPDX-License-Identifier: Apache-2.0
//
// qfb: tail and moment bounds for quadratic forms in subgaussian vectors,
// plus the Monte Carlo experiments certifying them.
//
// Exit codes: 0 success/certified, 1 certification failure, 2 input error,
// 3 domain error.

#include <qfb/qfb.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using nlohmann::json;

[[noreturn]] void die(int code, const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::exit(code);
}

[[noreturn]] void die_status(qfb_status status) {
  const int code = status == QFB_ERROR_INPUT    ? 2
                   : status == QFB_ERROR_DOMAIN ? 3
                                                : 4;
  die(code, qfb_last_error());
}

void check(qfb_status status) {
  if (status != QFB_OK) die_status(status);
}

template <typename T, void (*FreeFn)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& other) noexcept : ptr(std::exchange(other.ptr, nullptr)) {}
  Handle& operator=(Handle&& other) noexcept {
    if (this != &other) {
      if (ptr) FreeFn(ptr);
      ptr = std::exchange(other.ptr, nullptr);
    }
    return *this;
  }
  ~Handle() {
    if (ptr) FreeFn(ptr);
  }
  T** slot() { return &ptr; }
  operator T*() const { return ptr; }
};

using MatrixHandle = Handle<qfb_matrix, qfb_matrix_free>;
using SummaryHandle = Handle<qfb_summary, qfb_summary_free>;
using SamplerHandle = Handle<qfb_sampler, qfb_sampler_free>;
using TailHandle = Handle<qfb_tail, qfb_tail_free>;
using MgfHandle = Handle<qfb_mgf, qfb_mgf_free>;
using DesignHandle = Handle<qfb_design, qfb_design_free>;
using OlsHandle = Handle<qfb_ols_report, qfb_ols_report_free>;

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { qfb_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) die(2, out_path + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) die(2, out_path + ": write failed");
}

// Flags override the config file; the config file uses the flag names.
class Settings {
 public:
  Settings(CLI::App* cmd, std::string config_path) : cmd_(cmd) {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) die(2, config_path + ": cannot open config");
    try {
      in >> config_;
    } catch (const json::exception& e) {
      die(2, config_path + ": invalid JSON: " + e.what());
    }
    if (!config_.is_object()) die(2, config_path + ": config must be a JSON object");
  }

  template <typename T>
  T pick(const std::string& name, const T& flag_value, const T& fallback) const {
    if (cmd_->count("--" + name) > 0) return flag_value;
    if (config_.contains(name)) {
      try {
        return config_.at(name).get<T>();
      } catch (const json::exception& e) {
        die(2, "config field '" + name + "': " + e.what());
      }
    }
    return fallback;
  }

  bool has(const std::string& name, const std::string& flag_spelled) const {
    return cmd_->count(flag_spelled) > 0 || config_.contains(name);
  }

 private:
  CLI::App* cmd_;
  json config_;
};

std::uint64_t env_or_default_seed() {
  if (const char* env = std::getenv("QFT_SEED")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') die(2, std::string("QFT_SEED is not a valid unsigned integer: ") + env);
    return value;
  }
  return 12345;
}

std::vector<double> load_values(const std::string& path) {
  MatrixHandle m;
  check(qfb_matrix_load_csv(path.c_str(), m.slot()));
  size_t rows = 0, cols = 0;
  check(qfb_matrix_rows(m, &rows));
  check(qfb_matrix_cols(m, &cols));
  if (rows != 1 && cols != 1)
    die(2, path + ": expected a single row or column of values");
  std::vector<double> values(rows * cols);
  check(qfb_matrix_copy_row_major(m, values.data(), values.size()));
  return values;
}

struct CommandIO {
  std::string out_path;
  std::string format;  // "csv" or "json"
};

CommandIO resolve_io(const Settings& settings, const std::string& out_flag,
                     const std::string& format_flag) {
  CommandIO io;
  io.out_path = settings.pick<std::string>("out", out_flag, "");
  io.format = settings.pick<std::string>("format", format_flag, "csv");
  if (io.format != "csv" && io.format != "json")
    die(2, "format must be csv or json, got '" + io.format + "'");
  return io;
}

// ---- subcommand state ----

struct BoundArgs {
  CLI::App* cmd = nullptr;
  std::string config, matrix, mu, out, format = "csv";
  double sigma = 1.0;
  std::vector<double> t;
};

struct SimulateArgs {
  CLI::App* cmd = nullptr;
  std::string config, matrix, mu, family = "gaussian", out, format = "csv";
  double sigma = 0.0, scale = 1.0;
  std::vector<double> t;
  std::uint64_t trials = 100000, seed = 0;
  unsigned streams = 4;
};

struct MgfArgs {
  CLI::App* cmd = nullptr;
  std::string config, matrix, mu, family = "gaussian", out, format = "csv";
  double sigma = 0.0, scale = 1.0;
  std::vector<double> eta;
  std::uint64_t trials = 100000, seed = 0;
};

struct OlsArgs {
  CLI::App* cmd = nullptr;
  std::string config, matrix, beta, family = "gaussian", out, format = "csv";
  double scale = 1.0, sigma = 0.0;
  std::vector<double> t;
  std::uint64_t trials = 10000, seed = 0, d = 2, n = 50;
  unsigned streams = 4;
  bool strict = false;
};

struct CompareArgs {
  CLI::App* cmd = nullptr;
  std::string config, matrix, out, format = "csv";
  std::vector<double> t;
};

struct AcceptanceArgs {
  CLI::App* cmd = nullptr;
  std::string config, out;
  std::uint64_t trials = 0, mgf_trials = 0, seed = 0;
};

std::uint64_t resolve_seed(const Settings& settings, const CLI::App* cmd,
                           std::uint64_t flag_value) {
  if (cmd->count("--seed") > 0) return flag_value;
  const std::uint64_t fallback = env_or_default_seed();
  return settings.pick<std::uint64_t>("seed", flag_value, fallback);
}

int run_bound(const BoundArgs& args) {
  Settings settings(args.cmd, args.config);
  const std::string matrix_path = settings.pick<std::string>("matrix", args.matrix, "");
  if (matrix_path.empty()) die(2, "bound requires --matrix");
  const std::string mu_path = settings.pick<std::string>("mu", args.mu, "");
  const double sigma = settings.pick<double>("sigma", args.sigma, 1.0);
  const std::vector<double> t_grid = settings.pick<std::vector<double>>(
      "t", args.t, {0.5, 1.0, 2.0, 3.0, 5.0});
  const CommandIO io = resolve_io(settings, args.out, args.format);

  MatrixHandle matrix;
  check(qfb_matrix_load_csv(matrix_path.c_str(), matrix.slot()));
  SummaryHandle summary;
  std::vector<double> mu;
  if (!mu_path.empty()) {
    mu = load_values(mu_path);
    check(qfb_summary_create(matrix, mu.data(), mu.size(), summary.slot()));
  } else {
    check(qfb_summary_create(matrix, nullptr, 0, summary.slot()));
  }
  std::vector<qfb_tail_bound> rows(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    check(qfb_subgaussian_quadratic_bound(summary, sigma, mu_path.empty() ? 0 : 1,
                                          t_grid[i], &rows[i]));
  OwnedString text;
  if (io.format == "csv")
    check(qfb_bound_rows_to_csv(rows.data(), rows.size(), &text.ptr));
  else
    check(qfb_bound_rows_to_json(rows.data(), rows.size(), &text.ptr));
  emit(text.str(), io.out_path);
  return 0;
}

SamplerHandle make_sampler(const std::string& family, size_t dimension, double scale,
                           const std::string& mu_path) {
  int family_code = 0;
  check(qfb_family_from_string(family.c_str(), &family_code));
  SamplerHandle sampler;
  if (!mu_path.empty()) {
    const std::vector<double> mu = load_values(mu_path);
    check(qfb_sampler_create(family_code, dimension, scale, mu.data(), mu.size(),
                             sampler.slot()));
  } else {
    check(qfb_sampler_create(family_code, dimension, scale, nullptr, 0,
                             sampler.slot()));
  }
  return sampler;
}

int run_simulate(const SimulateArgs& args) {
  Settings settings(args.cmd, args.config);
  const std::string matrix_path = settings.pick<std::string>("matrix", args.matrix, "");
  if (matrix_path.empty()) die(2, "simulate requires --matrix");
  const std::string mu_path = settings.pick<std::string>("mu", args.mu, "");
  const std::string family = settings.pick<std::string>("family", args.family, "gaussian");
  const double scale = settings.pick<double>("scale", args.scale, 1.0);
  const double sigma = settings.pick<double>("sigma", args.sigma, 0.0);
  const std::vector<double> t_grid =
      settings.pick<std::vector<double>>("t", args.t, {0.5, 1.0, 2.0, 3.0});
  const std::uint64_t trials =
      settings.pick<std::uint64_t>("trials", args.trials, 100000);
  const unsigned streams = settings.pick<unsigned>("streams", args.streams, 4);
  const std::uint64_t seed = resolve_seed(settings, args.cmd, args.seed);
  const CommandIO io = resolve_io(settings, args.out, args.format);

  MatrixHandle matrix;
  check(qfb_matrix_load_csv(matrix_path.c_str(), matrix.slot()));
  size_t cols = 0;
  check(qfb_matrix_cols(matrix, &cols));
  SamplerHandle sampler = make_sampler(family, cols, scale, mu_path);
  TailHandle tail;
  check(qfb_estimate_tail(matrix, sampler, sigma, t_grid.data(), t_grid.size(),
                          trials, seed, streams, tail.slot()));
  OwnedString text;
  if (io.format == "csv")
    check(qfb_tail_to_csv(tail, &text.ptr));
  else
    check(qfb_tail_to_json(tail, &text.ptr));
  emit(text.str(), io.out_path);
  int all_pass = 0;
  check(qfb_tail_all_pass(tail, &all_pass));
  return all_pass ? 0 : 1;
}

int run_mgf(const MgfArgs& args) {
  Settings settings(args.cmd, args.config);
  const std::string matrix_path = settings.pick<std::string>("matrix", args.matrix, "");
  if (matrix_path.empty()) die(2, "mgf requires --matrix");
  const std::string mu_path = settings.pick<std::string>("mu", args.mu, "");
  const std::string family = settings.pick<std::string>("family", args.family, "gaussian");
  const double scale = settings.pick<double>("scale", args.scale, 1.0);
  const double sigma = settings.pick<double>("sigma", args.sigma, 0.0);
  std::vector<double> eta_grid =
      settings.pick<std::vector<double>>("eta", args.eta, {});
  const std::uint64_t trials =
      settings.pick<std::uint64_t>("trials", args.trials, 100000);
  const std::uint64_t seed = resolve_seed(settings, args.cmd, args.seed);
  const CommandIO io = resolve_io(settings, args.out, args.format);

  MatrixHandle matrix;
  check(qfb_matrix_load_csv(matrix_path.c_str(), matrix.slot()));
  size_t cols = 0;
  check(qfb_matrix_cols(matrix, &cols));
  SamplerHandle sampler = make_sampler(family, cols, scale, mu_path);
  double effective_sigma = sigma;
  if (effective_sigma <= 0.0)
    check(qfb_sampler_declared_sigma(sampler, &effective_sigma));
  if (eta_grid.empty()) {
    // Default: quarter points of the safe window below the MGF pole.
    SummaryHandle summary;
    check(qfb_summary_create(matrix, nullptr, 0, summary.slot()));
    double pole = 0.0;
    check(qfb_mgf_domain_limit(summary, effective_sigma, &pole));
    const double top = std::isfinite(pole) ? 0.9 * pole : 1.0;
    for (double u : {0.25, 0.5, 0.75, 1.0}) eta_grid.push_back(u * top);
  }
  MgfHandle mgf;
  check(qfb_estimate_mgf(matrix, sampler, sigma, eta_grid.data(), eta_grid.size(),
                         trials, seed, mgf.slot()));
  OwnedString text;
  if (io.format == "csv")
    check(qfb_mgf_to_csv(mgf, &text.ptr));
  else
    check(qfb_mgf_to_json(mgf, &text.ptr));
  emit(text.str(), io.out_path);
  int all_ok = 0;
  check(qfb_mgf_all_ok(mgf, &all_ok));
  return all_ok ? 0 : 1;
}

int run_ols(const OlsArgs& args) {
  Settings settings(args.cmd, args.config);
  const std::string matrix_path = settings.pick<std::string>("matrix", args.matrix, "");
  const std::string beta_path = settings.pick<std::string>("beta", args.beta, "");
  const std::string family = settings.pick<std::string>("family", args.family, "gaussian");
  double scale = settings.pick<double>("scale", args.scale, 1.0);
  const double sigma = settings.pick<double>("sigma", args.sigma, 0.0);
  if (sigma > 0.0) {
    // --sigma fixes the noise standard deviation; convert to the family scale.
    scale = (family == "uniform") ? sigma * std::sqrt(3.0) : sigma;
  }
  const std::vector<double> t_grid =
      settings.pick<std::vector<double>>("t", args.t, {0.5, 1.0, 2.0});
  const std::uint64_t trials =
      settings.pick<std::uint64_t>("trials", args.trials, 10000);
  const unsigned streams = settings.pick<unsigned>("streams", args.streams, 4);
  const bool strict = settings.pick<bool>("strict", args.strict, false);
  const std::uint64_t seed = resolve_seed(settings, args.cmd, args.seed);
  const CommandIO io = resolve_io(settings, args.out, args.format);

  DesignHandle design;
  if (!matrix_path.empty()) {
    MatrixHandle x;
    check(qfb_matrix_load_csv(matrix_path.c_str(), x.slot()));
    check(qfb_design_create(x, design.slot()));
  } else {
    const std::uint64_t d = settings.pick<std::uint64_t>("d", args.d, 2);
    const std::uint64_t n = settings.pick<std::uint64_t>("n", args.n, 50);
    check(qfb_design_random(n, d, seed ^ 0xDE516Eull, design.slot()));
  }
  size_t n_rows = 0, d_cols = 0;
  check(qfb_design_dims(design, &n_rows, &d_cols));
  std::vector<double> beta_star(d_cols, 0.0);
  if (!beta_path.empty()) {
    beta_star = load_values(beta_path);
    if (beta_star.size() != d_cols)
      die(2, beta_path + ": coefficient length does not match the design");
  }
  SamplerHandle noise = make_sampler(family, n_rows, scale, "");
  OlsHandle report;
  check(qfb_run_ols_experiment(design, beta_star.data(), beta_star.size(), noise,
                               trials, t_grid.data(), t_grid.size(), seed,
                               strict ? 1 : 0, streams, report.slot()));
  OwnedString text;
  if (io.format == "csv")
    check(qfb_ols_report_to_csv(report, &text.ptr));
  else
    check(qfb_ols_report_to_json(report, &text.ptr));
  emit(text.str(), io.out_path);
  int all_pass = 0;
  check(qfb_ols_report_all_pass(report, &all_pass));
  return all_pass ? 0 : 1;
}

int run_compare(const CompareArgs& args) {
  Settings settings(args.cmd, args.config);
  const std::string matrix_path = settings.pick<std::string>("matrix", args.matrix, "");
  if (matrix_path.empty()) die(2, "compare requires --matrix");
  const std::vector<double> t_grid = settings.pick<std::vector<double>>(
      "t", args.t, {1.0, 2.0, 5.0, 10.0, 25.0});
  const CommandIO io = resolve_io(settings, args.out, args.format);

  MatrixHandle matrix;
  check(qfb_matrix_load_csv(matrix_path.c_str(), matrix.slot()));
  SummaryHandle summary;
  check(qfb_summary_create(matrix, nullptr, 0, summary.slot()));
  size_t cols = 0;
  check(qfb_matrix_cols(matrix, &cols));
  std::vector<double> norms(cols, 0.0);
  check(qfb_matrix_column_norms(matrix, norms.data(), norms.size()));
  std::vector<qfb_bound_comparison> rows(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    check(qfb_compare_bounds(summary, norms.data(), norms.size(), t_grid[i],
                             &rows[i]));
  OwnedString text;
  if (io.format == "csv")
    check(qfb_comparison_rows_to_csv(rows.data(), rows.size(), &text.ptr));
  else
    check(qfb_comparison_rows_to_json(rows.data(), rows.size(), &text.ptr));
  emit(text.str(), io.out_path);
  return 0;
}

int run_acceptance(const AcceptanceArgs& args) {
  Settings settings(args.cmd, args.config);
  const std::uint64_t trials = settings.pick<std::uint64_t>("trials", args.trials, 0);
  const std::uint64_t mgf_trials =
      settings.pick<std::uint64_t>("mgf-trials", args.mgf_trials, 0);
  const std::uint64_t seed = resolve_seed(settings, args.cmd, args.seed);
  const std::string out_path = settings.pick<std::string>("out", args.out, "");

  OwnedString text;
  int all_pass = 0;
  check(qfb_run_acceptance(trials, mgf_trials, seed, &text.ptr, &all_pass));
  emit(text.str(), out_path);
  return all_pass ? 0 : 1;
}

void add_common_output(CLI::App* cmd, std::string& config, std::string& out,
                       std::string& format) {
  cmd->add_option("--config", config, "JSON config file; flags override its fields");
  cmd->add_option("--out", out, "write the report to this file instead of stdout");
  cmd->add_option("--format", format, "output format: csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail and moment bounds for quadratic forms in subgaussian vectors"};
  app.require_subcommand(1);

  BoundArgs bound;
  bound.cmd = app.add_subcommand("bound", "evaluate the deviation bound on a t grid");
  bound.cmd->add_option("--matrix", bound.matrix, "CSV file holding A");
  bound.cmd->add_option("--mu", bound.mu, "CSV file holding the mean vector");
  bound.cmd->add_option("--sigma", bound.sigma, "subgaussian proxy (default 1)");
  bound.cmd->add_option("--t", bound.t, "confidence grid")->delimiter(',');
  add_common_output(bound.cmd, bound.config, bound.out, bound.format);

  SimulateArgs simulate;
  simulate.cmd =
      app.add_subcommand("simulate", "Monte Carlo exceedance certification");
  simulate.cmd->add_option("--matrix", simulate.matrix, "CSV file holding A");
  simulate.cmd->add_option("--mu", simulate.mu, "CSV file holding the mean vector");
  simulate.cmd->add_option("--family", simulate.family,
                           "gaussian, rademacher, or uniform");
  simulate.cmd->add_option("--scale", simulate.scale, "family scale (default 1)");
  simulate.cmd->add_option("--sigma", simulate.sigma,
                           "proxy override; defaults to the family's declared value");
  simulate.cmd->add_option("--t", simulate.t, "confidence grid")->delimiter(',');
  simulate.cmd->add_option("--trials", simulate.trials, "Monte Carlo trials");
  simulate.cmd->add_option("--streams", simulate.streams, "worker streams");
  simulate.cmd->add_option("--seed", simulate.seed, "master seed");
  add_common_output(simulate.cmd, simulate.config, simulate.out, simulate.format);

  MgfArgs mgf;
  mgf.cmd = app.add_subcommand("mgf", "empirical MGF vs decoupled and closed-form");
  mgf.cmd->add_option("--matrix", mgf.matrix, "CSV file holding A");
  mgf.cmd->add_option("--mu", mgf.mu, "CSV file holding the mean vector");
  mgf.cmd->add_option("--family", mgf.family, "gaussian, rademacher, or uniform");
  mgf.cmd->add_option("--scale", mgf.scale, "family scale (default 1)");
  mgf.cmd->add_option("--sigma", mgf.sigma,
                      "proxy override; defaults to the family's declared value");
  mgf.cmd->add_option("--eta", mgf.eta, "MGF evaluation points")->delimiter(',');
  mgf.cmd->add_option("--trials", mgf.trials, "Monte Carlo trials");
  mgf.cmd->add_option("--seed", mgf.seed, "master seed");
  add_common_output(mgf.cmd, mgf.config, mgf.out, mgf.format);

  OlsArgs ols;
  ols.cmd = app.add_subcommand("ols", "least-squares excess risk experiment");
  ols.cmd->add_option("--matrix", ols.matrix,
                      "CSV design matrix; omit to generate one randomly");
  ols.cmd->add_option("--beta", ols.beta, "CSV file with true coefficients");
  ols.cmd->add_option("--d", ols.d, "columns of the generated design (default 2)");
  ols.cmd->add_option("--n", ols.n, "rows of the generated design (default 50)");
  ols.cmd->add_option("--family", ols.family, "noise family");
  ols.cmd->add_option("--scale", ols.scale, "noise scale (default 1)");
  ols.cmd->add_option("--sigma", ols.sigma,
                      "noise standard deviation; overrides --scale");
  ols.cmd->add_option("--t", ols.t, "confidence grid")->delimiter(',');
  ols.cmd->add_option("--trials", ols.trials, "experiment replicates");
  ols.cmd->add_option("--streams", ols.streams, "worker streams");
  ols.cmd->add_option("--seed", ols.seed, "master seed");
  ols.cmd->add_flag("--strict", ols.strict,
                    "use the doubled variance-proxy certificate");
  add_common_output(ols.cmd, ols.config, ols.out, ols.format);

  CompareArgs compare;
  compare.cmd =
      app.add_subcommand("compare", "deviation bound vs the norm-martingale bound");
  compare.cmd->add_option("--matrix", compare.matrix, "CSV file holding A");
  compare.cmd->add_option("--t", compare.t, "confidence grid")->delimiter(',');
  add_common_output(compare.cmd, compare.config, compare.out, compare.format);

  AcceptanceArgs acceptance;
  acceptance.cmd = app.add_subcommand("acceptance", "run the full check battery");
  acceptance.cmd->add_option("--trials", acceptance.trials,
                             "tail-experiment trials (default 100000)");
  acceptance.cmd->add_option("--mgf-trials", acceptance.mgf_trials,
                             "MGF chain trials (default 1000000)");
  acceptance.cmd->add_option("--seed", acceptance.seed, "battery master seed");
  acceptance.cmd->add_option("--config", acceptance.config,
                             "JSON config file; flags override its fields");
  acceptance.cmd->add_option("--out", acceptance.out,
                             "write the report to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (app.got_subcommand(bound.cmd)) return run_bound(bound);
  if (app.got_subcommand(simulate.cmd)) return run_simulate(simulate);
  if (app.got_subcommand(mgf.cmd)) return run_mgf(mgf);
  if (app.got_subcommand(ols.cmd)) return run_ols(ols);
  if (app.got_subcommand(compare.cmd)) return run_compare(compare);
  if (app.got_subcommand(acceptance.cmd)) return run_acceptance(acceptance);
  return 2;
}
