// Command-line front end: predict, simulate, sweep and root-plot.
//
// Exit codes: 0 success, 2 config/validation error, 3 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hetpca/error.hpp"
#include "hetpca/experiment.hpp"

namespace {

namespace ex = hetpca::experiment;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> sigma_is;
  std::optional<unsigned> threads;
  bool long_running = false;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool simulation_flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file")->required();
  cmd->add_option("--out", flags.out_path, "output file (default: stdout)");
  cmd->add_option("--sigma-is", flags.sigma_is, "interpretation of noise.levels[].sigma")
      ->check(CLI::IsMember({"stddev", "variance"}));
  if (simulation_flags) {
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--trials", flags.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", flags.threads, "worker threads (0 = hardware concurrency)");
    cmd->add_flag("--long-running", flags.long_running, "allow simulations with d >= 1000");
  }
}

// Output goes to --out when given, stdout otherwise.
void emit(const CommonFlags& flags, const std::string& text) {
  if (flags.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(flags.out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw hetpca::Error(hetpca::ErrorCode::Io, "cannot open output file '" + flags.out_path + "'");
  out << text;
  out.flush();
  if (!out) throw hetpca::Error(hetpca::ErrorCode::Io, "failed writing output file '" + flags.out_path + "'");
}

ex::Json load(const CommonFlags& flags, ex::Command command) {
  ex::Json config = ex::load_config(flags.config_path);
  ex::apply_overrides(config, {flags.seed, flags.trials, flags.sigma_is, flags.threads}, command);
  return config;
}

int run_predict(const CommonFlags& flags) {
  const ex::Json config = load(flags, ex::Command::predict);
  const auto result = hetpca::predict(ex::parse_mixture(config), ex::parse_model(config));
  emit(flags, ex::format_prediction(result));
  return kExitOk;
}

int run_simulate(const CommonFlags& flags) {
  const ex::Json config = load(flags, ex::Command::simulate);
  const auto report = ex::run_simulation(config, flags.long_running);
  emit(flags, flags.json ? ex::simulation_to_json(report).dump(2) + "\n" : ex::format_simulation_text(report));
  return kExitOk;
}

int run_sweep(const CommonFlags& flags) {
  const ex::Json config = load(flags, ex::Command::sweep);
  const auto spec = ex::parse_sweep(config);
  const auto records = ex::run_sweep(spec, flags.long_running);
  std::ostringstream out;
  ex::write_sweep_csv(out, spec, records, config);
  emit(flags, out.str());
  return kExitOk;
}

int run_root_plot(const CommonFlags& flags) {
  const ex::Json config = load(flags, ex::Command::root_plot);
  const auto plot = ex::compute_root_plot(config);
  std::ostringstream out;
  ex::write_root_plot_csv(out, plot, config);
  emit(flags, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic and Monte Carlo recovery analysis for PCA under heteroscedastic noise"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ex::kToolVersion));

  CommonFlags flags;
  auto* predict = app.add_subcommand("predict", "asymptotic squared inner product for one configuration");
  add_common(predict, flags, false);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate at one configuration");
  add_common(simulate, flags, true);
  simulate->add_flag("--json", flags.json, "machine-readable JSON report");
  auto* sweep = app.add_subcommand("sweep", "1-D sweeps and 2-D heatmaps as CSV");
  add_common(sweep, flags, true);
  auto* root_plot = app.add_subcommand("root-plot", "samples of the B(x) pole sum and its real roots as CSV");
  add_common(root_plot, flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*predict) return run_predict(flags);
    if (*simulate) return run_simulate(flags);
    if (*sweep) return run_sweep(flags);
    if (*root_plot) return run_root_plot(flags);
  } catch (const hetpca::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == hetpca::ErrorCode::Io ? kExitIo : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
