#include "hetpca/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "hetpca/error.hpp"
#include "hetpca/rng.hpp"

namespace hetpca::experiment {

namespace {

[[noreturn]] void config_error(std::string_view key, std::string_view message) {
  throw Error(ErrorCode::InvalidConfig, fmt::format("{}: {}", key, message));
}

std::string join_key(std::string_view prefix, std::string_view key) {
  return prefix.empty() ? std::string(key) : fmt::format("{}.{}", prefix, key);
}

// Follows a dotted path; returns nullptr when any segment is absent.
const Json* find(const Json& root, std::string_view dotted) {
  const Json* node = &root;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    const std::size_t dot = dotted.find('.', start);
    const auto segment = std::string(dotted.substr(start, dot == std::string_view::npos ? dotted.npos : dot - start));
    if (!node->is_object()) return nullptr;
    const auto it = node->find(segment);
    if (it == node->end()) return nullptr;
    node = &*it;
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return node;
}

const Json& require(const Json& root, std::string_view dotted) {
  const Json* node = find(root, dotted);
  if (node == nullptr) config_error(dotted, "required key is missing");
  return *node;
}

double number_at(const Json& node, std::string_view key) {
  if (!node.is_number()) config_error(key, "must be a number");
  return node.get<double>();
}

double require_number(const Json& root, std::string_view dotted) { return number_at(require(root, dotted), dotted); }

std::optional<double> optional_number(const Json& root, std::string_view dotted) {
  const Json* node = find(root, dotted);
  if (node == nullptr) return std::nullopt;
  return number_at(*node, dotted);
}

std::uint64_t unsigned_at(const Json& node, std::string_view key) {
  if (!node.is_number_unsigned() && !(node.is_number_integer() && node.get<std::int64_t>() >= 0)) {
    config_error(key, "must be a non-negative integer");
  }
  return node.get<std::uint64_t>();
}

std::pair<double, double> require_proportions(const Json& root, std::string_view dotted) {
  const Json& node = require(root, dotted);
  if (!node.is_array() || node.size() != 2) config_error(dotted, "must be a two-element array [p1, p2]");
  const double p1 = number_at(node[0], dotted);
  const double p2 = number_at(node[1], dotted);
  if (!(p1 > 0.0) || !(p2 > 0.0) || std::abs(p1 + p2 - 1.0) > kProportionSumTolerance) {
    config_error(dotted, fmt::format("proportions must be positive and sum to 1 (got {}, {})", p1, p2));
  }
  return {p1, p2};
}

SigmaInput parse_sigma_input(const Json& config) {
  const Json& node = require(config, "noise.sigma_is");
  if (node == "stddev") return SigmaInput::stddev;
  if (node == "variance") return SigmaInput::variance;
  config_error("noise.sigma_is", "must be \"stddev\" or \"variance\"");
}

const Json& require_levels(const Json& config) {
  const Json& levels = require(config, "noise.levels");
  if (!levels.is_array() || levels.empty()) config_error("noise.levels", "must be a non-empty array");
  return levels;
}

double level_variance(const Json& level, std::size_t index, SigmaInput input) {
  const auto key = fmt::format("noise.levels[{}].sigma", index);
  if (!level.is_object() || !level.contains("sigma")) config_error(key, "required key is missing");
  const double sigma = number_at(level["sigma"], key);
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) config_error(key, "must be finite and >= 0");
  return input == SigmaInput::stddev ? sigma * sigma : sigma;
}

GridAxis parse_axis(const Json& config, std::size_t index, GridAxis axis) {
  const auto key = fmt::format("sweep.axes[{}]", index);
  if (const Json* axes = find(config, "sweep.axes")) {
    if (!axes->is_array()) config_error("sweep.axes", "must be an array");
    if (index < axes->size()) {
      const Json& node = (*axes)[index];
      if (!node.is_object()) config_error(key, "must be an object");
      if (node.contains("min")) axis.min = number_at(node["min"], key + ".min");
      if (node.contains("max")) axis.max = number_at(node["max"], key + ".max");
      if (node.contains("num_points")) axis.num_points = unsigned_at(node["num_points"], key + ".num_points");
      if (node.contains("name") && node["name"] != axis.name) {
        config_error(key + ".name", fmt::format("this sweep kind expects axis '{}'", axis.name));
      }
    }
  }
  if (axis.num_points < 2) config_error(key + ".num_points", "grid axes need at least 2 points");
  if (!(axis.min < axis.max)) config_error(key, fmt::format("axis '{}' needs min < max", axis.name));
  return axis;
}

SweepKind parse_kind(const Json& node) {
  if (!node.is_string()) config_error("sweep.kind", "must be a string");
  const auto name = node.get<std::string>();
  for (auto kind : {SweepKind::proportion_sweep, SweepKind::lambda_sweep, SweepKind::sigma_heatmap,
                    SweepKind::phase_heatmap, SweepKind::root_plot}) {
    if (name == to_string(kind)) return kind;
  }
  config_error("sweep.kind", fmt::format("unknown sweep kind '{}'", name));
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.17g}", value);
}

Json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot read config file '{}'", path.string()));
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("{}: malformed JSON: {}", path.string(), e.what()));
  }
}

void apply_overrides(Json& config, const Overrides& overrides, Command command) {
  if (!config.is_object()) config = Json::object();
  if (overrides.sigma_is) config["noise"]["sigma_is"] = *overrides.sigma_is;
  if (command != Command::simulate && command != Command::sweep) return;
  if (!overrides.seed && !overrides.trials && !overrides.threads) return;
  Json& block = command == Command::simulate ? config["simulate"] : config["sweep"]["simulate"];
  if (overrides.seed) block["seed"] = *overrides.seed;
  if (overrides.trials) block["trials"] = *overrides.trials;
  if (overrides.threads) block["threads"] = *overrides.threads;
}

ModelParams parse_model(const Json& config) {
  const double c = require_number(config, "model.c");
  const double theta = require_number(config, "model.theta");
  if (!(c > 1.0) || !std::isfinite(c)) config_error("model.c", fmt::format("sample ratio c must be > 1 (got {})", c));
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    config_error("model.theta", fmt::format("amplitude theta must be > 0 (got {})", theta));
  }
  return ModelParams(c, theta);
}

std::vector<double> parse_level_variances(const Json& config) {
  const SigmaInput input = parse_sigma_input(config);
  const Json& levels = require_levels(config);
  std::vector<double> out;
  for (std::size_t k = 0; k < levels.size(); ++k) out.push_back(level_variance(levels[k], k, input));
  return out;
}

NoiseMixture parse_mixture(const Json& config) {
  const SigmaInput input = parse_sigma_input(config);
  const Json& levels = require_levels(config);
  std::vector<NoiseLevel> raw;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto key = fmt::format("noise.levels[{}].p", k);
    if (!levels[k].is_object() || !levels[k].contains("p")) config_error(key, "required key is missing");
    raw.push_back({number_at(levels[k]["p"], key), level_variance(levels[k], k, input)});
  }
  try {
    return validate_and_normalize(raw);
  } catch (const Error& e) {
    config_error("noise.levels", e.what());
  }
}

SimulationSettings parse_simulation(const Json& block, std::string_view prefix) {
  if (!block.is_object()) config_error(prefix, "must be an object");
  SimulationSettings settings;
  const auto get_unsigned = [&](std::string_view key) -> std::optional<std::uint64_t> {
    if (!block.contains(key)) return std::nullopt;
    return unsigned_at(block[std::string(key)], join_key(prefix, key));
  };
  const auto d = get_unsigned("d");
  if (!d) config_error(join_key(prefix, "d"), "required key is missing");
  if (*d < 1) config_error(join_key(prefix, "d"), "dimension must be >= 1");
  settings.dimension = *d;
  if (const auto n = get_unsigned("n")) settings.num_samples = *n;
  settings.trials = get_unsigned("trials").value_or(1);
  if (settings.trials < 1) config_error(join_key(prefix, "trials"), "must be >= 1");
  settings.seed = get_unsigned("seed").value_or(0);
  settings.threads = static_cast<unsigned>(get_unsigned("threads").value_or(0));
  if (block.contains("distributions")) {
    const Json& dists = block["distributions"];
    const auto key = join_key(prefix, "distributions");
    if (!dists.is_array() || dists.size() != 3) config_error(key, "must list three distributions");
    for (std::size_t k = 0; k < 3; ++k) {
      const auto parsed = dists[k].is_string() ? parse_distribution(dists[k].get<std::string>()) : std::nullopt;
      if (!parsed) config_error(key, "entries must be gaussian, rademacher or uniform");
      settings.distributions[k] = *parsed;
    }
  }
  return settings;
}

void check_long_running(const SimulationSettings& settings, bool long_running, std::string_view prefix) {
  if (settings.dimension >= kLongRunningDimension && !long_running) {
    config_error(join_key(prefix, "d"),
                 fmt::format("simulations with d >= {} require --long-running", kLongRunningDimension));
  }
}

std::size_t samples_for(const SimulationSettings& settings, double sample_ratio) {
  if (settings.num_samples) return *settings.num_samples;
  return static_cast<std::size_t>(std::llround(sample_ratio * static_cast<double>(settings.dimension)));
}

// ---- predict ----------------------------------------------------------------

std::string format_prediction(const PredictionResult& r) {
  std::string out;
  out += fmt::format("value = {:.6g}\n", r.value);
  out += fmt::format("beta = {:.6g}\n", r.beta);
  out += r.alpha ? fmt::format("alpha = {:.6g}\n", *r.alpha) : std::string("alpha = undefined\n");
  out += fmt::format("A(beta) = {:.6g}\n", r.a_at_beta);
  out += fmt::format("B'(beta) = {:.6g}\n", r.b_prime_at_beta);
  out += fmt::format("above_transition = {}\n", r.above_transition);
  return out;
}

// ---- simulate ---------------------------------------------------------------

SimulationReport run_simulation(const Json& config, bool long_running) {
  const ModelParams params = parse_model(config);
  const NoiseMixture mixture = parse_mixture(config);
  const SimulationSettings settings = parse_simulation(require(config, "simulate"), "simulate");
  check_long_running(settings, long_running, "simulate");

  DatasetSpec spec{.dimension = settings.dimension,
                   .num_samples = samples_for(settings, params.sample_ratio()),
                   .mixture = mixture,
                   .amplitude = params.amplitude(),
                   .distributions = settings.distributions,
                   .seed = settings.seed};
  if (spec.num_samples <= spec.dimension) {
    config_error("simulate.n", fmt::format("n must exceed d (got n={}, d={})", spec.num_samples, spec.dimension));
  }

  SimulationReport report{.spec = spec, .trials = settings.trials, .summary = {}, .prediction = {}};
  report.summary = run_monte_carlo(spec, settings.trials, settings.threads);
  // Compare against the prediction at the realized ratio n/d.
  report.prediction = predict(mixture, ModelParams(spec.sample_ratio(), params.amplitude()));
  report.abs_deviation = std::abs(report.summary.mean - report.prediction.value);
  return report;
}

std::string format_simulation_text(const SimulationReport& r) {
  std::string out;
  out += fmt::format("d = {}\nn = {}\ntrials = {}\nseed = {}\n", r.spec.dimension, r.spec.num_samples, r.trials,
                     r.spec.seed);
  out += fmt::format("mean = {:.6g}\n", r.summary.mean);
  out += fmt::format("q25 = {:.6g}\n", r.summary.q25);
  out += fmt::format("median = {:.6g}\n", r.summary.median);
  out += fmt::format("q75 = {:.6g}\n", r.summary.q75);
  out += fmt::format("normalized_mean = {:.6g}\n", r.summary.normalized_mean);
  out += fmt::format("convergence_failures = {}\n", r.summary.convergence_failures);
  out += fmt::format("prediction = {:.6g}\n", r.prediction.value);
  out += fmt::format("abs_deviation = {:.6g}\n", r.abs_deviation);
  return out;
}

Json simulation_to_json(const SimulationReport& r) {
  Json out;
  out["d"] = r.spec.dimension;
  out["n"] = r.spec.num_samples;
  out["trials"] = r.trials;
  out["seed"] = r.spec.seed;
  out["mean"] = r.summary.mean;
  out["q25"] = r.summary.q25;
  out["median"] = r.summary.median;
  out["q75"] = r.summary.q75;
  out["normalized_mean"] = r.summary.normalized_mean;
  out["convergence_failures"] = r.summary.convergence_failures;
  out["prediction"] = r.prediction.value;
  out["beta"] = r.prediction.beta;
  out["abs_deviation"] = r.abs_deviation;
  return out;
}

// ---- sweep ------------------------------------------------------------------

std::string_view to_string(SweepKind kind) noexcept {
  switch (kind) {
    case SweepKind::proportion_sweep: return "proportion_sweep";
    case SweepKind::lambda_sweep: return "lambda_sweep";
    case SweepKind::sigma_heatmap: return "sigma_heatmap";
    case SweepKind::phase_heatmap: return "phase_heatmap";
    case SweepKind::root_plot: return "root_plot";
  }
  return "unknown";
}

double GridAxis::at(std::size_t k) const {
  if (k + 1 >= num_points) return max;
  return min + (max - min) * static_cast<double>(k) / static_cast<double>(num_points - 1);
}

SweepSpec parse_sweep(const Json& config) {
  SweepSpec spec;
  spec.kind = parse_kind(require(config, "sweep.kind"));
  switch (spec.kind) {
    case SweepKind::proportion_sweep: {
      const ModelParams params = parse_model(config);
      spec.sample_ratio = params.sample_ratio();
      spec.amplitude = params.amplitude();
      spec.level_variances = parse_level_variances(config);
      if (spec.level_variances.size() != 2) config_error("noise.levels", "proportion_sweep needs exactly two levels");
      spec.axes = {parse_axis(config, 0, {"p2", 0.0, 1.0, kDefaultGridPoints})};
      if (spec.axes[0].min < 0.0 || spec.axes[0].max > 1.0) config_error("sweep.axes[0]", "p2 must stay in [0, 1]");
      break;
    }
    case SweepKind::lambda_sweep: {
      const ModelParams params = parse_model(config);
      spec.sample_ratio = params.sample_ratio();
      spec.amplitude = params.amplitude();
      spec.proportions = require_proportions(config, "sweep.proportions");
      spec.avg_variance = require_number(config, "sweep.avg_variance");
      if (!(spec.avg_variance >= 0.0)) config_error("sweep.avg_variance", "must be >= 0");
      spec.axes = {parse_axis(config, 0, {"lambda", 0.0, 1.0, kDefaultGridPoints})};
      if (spec.axes[0].min < 0.0 || spec.axes[0].max > 1.0) config_error("sweep.axes[0]", "lambda must stay in [0, 1]");
      break;
    }
    case SweepKind::sigma_heatmap: {
      const ModelParams params = parse_model(config);
      spec.sample_ratio = params.sample_ratio();
      spec.amplitude = params.amplitude();
      spec.proportions = require_proportions(config, "sweep.proportions");
      spec.axes = {parse_axis(config, 0, {"sigma1_sq", 0.0, 4.0, kDefaultGridPoints}),
                   parse_axis(config, 1, {"sigma2_sq", 0.0, 4.0, kDefaultGridPoints})};
      for (std::size_t k = 0; k < 2; ++k) {
        if (spec.axes[k].min < 0.0) config_error(fmt::format("sweep.axes[{}]", k), "variances must be >= 0");
      }
      break;
    }
    case SweepKind::phase_heatmap: {
      spec.amplitude = require_number(config, "model.theta");
      if (!(spec.amplitude > 0.0)) config_error("model.theta", "amplitude theta must be > 0");
      const Json* split = find(config, "sweep.split");
      if (split == nullptr || *split == "homoscedastic") {
        spec.split = PhaseSplit::homoscedastic;
      } else if (*split == "balanced") {
        spec.split = PhaseSplit::balanced;
        spec.proportions = require_proportions(config, "sweep.proportions");
      } else {
        config_error("sweep.split", "must be \"homoscedastic\" or \"balanced\"");
      }
      spec.axes = {parse_axis(config, 0, {"c", 1.1, 10.0, kDefaultGridPoints}),
                   parse_axis(config, 1, {"avg_variance", 0.0, 4.0, kDefaultGridPoints})};
      if (!(spec.axes[0].min > 1.0)) config_error("sweep.axes[0]", "c must stay > 1");
      if (spec.axes[1].min < 0.0) config_error("sweep.axes[1]", "avg_variance must be >= 0");
      break;
    }
    case SweepKind::root_plot:
      config_error("sweep.kind", "root_plot is produced by the root-plot command");
  }
  if (const Json* sim = find(config, "sweep.simulate")) {
    if (!sim->is_object() || !sim->contains("d")) {
      // Overrides alone (seed/trials from flags) do not enable simulation.
      if (!sim->is_object()) config_error("sweep.simulate", "must be an object");
    } else {
      spec.simulate = parse_simulation(*sim, "sweep.simulate");
    }
  }
  return spec;
}

std::pair<NoiseMixture, double> sweep_point(const SweepSpec& spec, std::span<const double> x) {
  switch (spec.kind) {
    case SweepKind::proportion_sweep: {
      const double p2 = x[0];
      const double p1 = 1.0 - p2;
      std::vector<NoiseLevel> levels;
      // A level with zero share drops out (the endpoints are homoscedastic).
      if (p1 > 0.0) levels.push_back({p1, spec.level_variances[0]});
      if (p2 > 0.0) levels.push_back({p2, spec.level_variances[1]});
      return {validate_and_normalize(levels), spec.sample_ratio};
    }
    case SweepKind::lambda_sweep:
      return {lambda_split(x[0], spec.avg_variance, spec.proportions), spec.sample_ratio};
    case SweepKind::sigma_heatmap: {
      const NoiseLevel levels[] = {{spec.proportions.first, x[0]}, {spec.proportions.second, x[1]}};
      return {validate_and_normalize(levels), spec.sample_ratio};
    }
    case SweepKind::phase_heatmap: {
      const double avg = x[1];
      if (spec.split == PhaseSplit::homoscedastic) {
        const NoiseLevel level[] = {{1.0, avg}};
        return {validate_and_normalize(level), x[0]};
      }
      const auto [p1, p2] = spec.proportions;
      const NoiseLevel levels[] = {{p1, avg / (2.0 * p1)}, {p2, avg / (2.0 * p2)}};
      return {validate_and_normalize(levels), x[0]};
    }
    case SweepKind::root_plot: break;
  }
  throw Error(ErrorCode::InvalidArgument, "sweep kind has no grid points");
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, bool long_running) {
  if (spec.simulate) check_long_running(*spec.simulate, long_running, "sweep.simulate");

  std::size_t total = 1;
  for (const auto& axis : spec.axes) total *= axis.num_points;

  std::vector<SweepRecord> records;
  records.reserve(total);
  std::vector<std::size_t> index(spec.axes.size(), 0);
  for (std::size_t point = 0; point < total; ++point) {
    // Row-major: the last axis varies fastest.
    std::size_t rest = point;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      index[a] = rest % spec.axes[a].num_points;
      rest /= spec.axes[a].num_points;
    }
    SweepRecord record;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) record.coordinates.push_back(spec.axes[a].at(index[a]));

    const auto [mixture, ratio] = sweep_point(spec, record.coordinates);
    const ModelParams params(ratio, spec.amplitude);
    record.prediction = predict(mixture, params);

    if (spec.simulate) {
      const auto& sim = *spec.simulate;
      DatasetSpec ds{.dimension = sim.dimension,
                     .num_samples = samples_for(sim, ratio),
                     .mixture = mixture,
                     .amplitude = spec.amplitude,
                     .distributions = sim.distributions,
                     .seed = derive_seed(sim.seed, point)};
      const MonteCarloSummary mc = run_monte_carlo(ds, sim.trials, sim.threads);
      record.simulation = SimulationStats{mc.mean, mc.q25, mc.q75, sim.trials, mc.convergence_failures};
    }
    records.push_back(std::move(record));
  }
  return records;
}

namespace {

// Thread count only affects scheduling, so it is left out of the recorded
// config to keep output byte-identical across thread counts.
void write_header(std::ostream& out, std::string_view command, const Json& config) {
  Json recorded = config;
  if (recorded.contains("simulate") && recorded["simulate"].is_object()) recorded["simulate"].erase("threads");
  if (recorded.contains("sweep") && recorded["sweep"].is_object() && recorded["sweep"].contains("simulate") &&
      recorded["sweep"]["simulate"].is_object()) {
    recorded["sweep"]["simulate"].erase("threads");
  }
  out << "# " << kToolName << ' ' << kToolVersion << ' ' << command << '\n';
  out << "# config: " << recorded.dump() << '\n';
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRecord>& records,
                     const Json& config) {
  write_header(out, "sweep", config);
  out << "# kind: " << to_string(spec.kind) << '\n';
  for (const auto& axis : spec.axes) {
    out << "# axis: " << axis.name << " min=" << format_number(axis.min) << " max=" << format_number(axis.max)
        << " num_points=" << axis.num_points << " linear\n";
  }
  for (const auto& axis : spec.axes) out << axis.name << ',';
  out << "pred_value,beta,alpha,above_transition";
  if (spec.simulate) out << ",sim_mean,sim_q25,sim_q75,sim_trials,sim_failures";
  out << '\n';
  for (const auto& r : records) {
    for (double x : r.coordinates) out << format_number(x) << ',';
    out << format_number(r.prediction.value) << ',' << format_number(r.prediction.beta) << ','
        << format_number(r.prediction.alpha.value_or(std::numeric_limits<double>::quiet_NaN())) << ','
        << (r.prediction.above_transition ? 1 : 0);
    if (r.simulation) {
      out << ',' << format_number(r.simulation->mean) << ',' << format_number(r.simulation->q25) << ','
          << format_number(r.simulation->q75) << ',' << r.simulation->trials << ',' << r.simulation->failures;
    }
    out << '\n';
  }
}

// ---- root plot --------------------------------------------------------------

RootPlot compute_root_plot(const Json& config) {
  const ModelParams params = parse_model(config);
  const NoiseMixture mixture = parse_mixture(config);
  const SecularFunctions sf(mixture, params);

  RootPlot plot;
  plot.roots = all_real_roots_B(sf);
  plot.threshold = 1.0 / (params.sample_ratio() * params.amplitude() * params.amplitude());

  const double beta = plot.roots.back();
  const double span = beta - mixture.min_variance();
  GridAxis axis{"x", mixture.min_variance() - 0.25 * span, beta + 0.25 * span, 1001};
  if (const auto v = optional_number(config, "root_plot.x_min")) axis.min = *v;
  if (const auto v = optional_number(config, "root_plot.x_max")) axis.max = *v;
  if (const Json* n = find(config, "root_plot.num_points")) axis.num_points = unsigned_at(*n, "root_plot.num_points");
  if (axis.num_points < 2) config_error("root_plot.num_points", "grid axes need at least 2 points");
  if (!(axis.min < axis.max)) config_error("root_plot", "x_min must be below x_max");

  for (std::size_t k = 0; k < axis.num_points; ++k) {
    const double x = axis.at(k);
    plot.x.push_back(x);
    try {
      plot.sum_term.push_back(sf.pole_sum(x));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PoleEvaluation) throw;
      plot.sum_term.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return plot;
}

void write_root_plot_csv(std::ostream& out, const RootPlot& plot, const Json& config) {
  write_header(out, "root-plot", config);
  out << "# roots of B are where sum_term crosses threshold\n";
  out << "x,sum_term,threshold\n";
  for (std::size_t k = 0; k < plot.x.size(); ++k) {
    out << format_number(plot.x[k]) << ',' << format_number(plot.sum_term[k]) << ',' << format_number(plot.threshold)
        << '\n';
  }
  out << "# roots (ascending; the last is beta)\n";
  for (std::size_t k = 0; k < plot.roots.size(); ++k) out << "# root," << k << ',' << format_number(plot.roots[k]) << '\n';
}

}  // namespace hetpca::experiment
