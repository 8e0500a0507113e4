#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hetpca/asymptotic_prediction.hpp"
#include "hetpca/noise_model.hpp"
#include "hetpca/pca_simulation.hpp"

namespace hetpca::experiment {

using Json = nlohmann::json;

inline constexpr std::string_view kToolName = "hetpca";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::size_t kDefaultGridPoints = 101;
// Simulations at or above this dimension must be requested explicitly.
inline constexpr std::size_t kLongRunningDimension = 1000;

enum class SigmaInput { stddev, variance };

/// Reads a JSON config document. Io on unreadable files, InvalidConfig on
/// malformed JSON.
Json load_config(const std::filesystem::path& path);

/// Flag values that take precedence over the config document.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> sigma_is;
  std::optional<unsigned> threads;
};

enum class Command { predict, sweep, simulate, root_plot };

/// Writes override values into the keys the command reads:
/// seed/trials/threads go to `simulate.*` (simulate) or `sweep.simulate.*` (sweep),
/// sigma_is to `noise.sigma_is`.
void apply_overrides(Json& config, const Overrides& overrides, Command command);

ModelParams parse_model(const Json& config);

/// `noise.levels = [{p, sigma}, ...]` interpreted through `noise.sigma_is`;
/// stddev values are squared on ingestion.
NoiseMixture parse_mixture(const Json& config);

/// Standard deviations or variances of `noise.levels`, converted to variances,
/// ignoring proportions (used by the proportion sweep).
std::vector<double> parse_level_variances(const Json& config);

struct SimulationSettings {
  std::size_t dimension = 0;
  std::optional<std::size_t> num_samples;  // defaults to round(c d)
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::array<Distribution, 3> distributions{Distribution::gaussian, Distribution::gaussian,
                                            Distribution::gaussian};
  unsigned threads = 0;
};

/// Parses a simulation block (`simulate` or `sweep.simulate`); `prefix` names
/// the block in error messages.
SimulationSettings parse_simulation(const Json& block, std::string_view prefix);

/// Rejects d >= 1000 unless long_running is set.
void check_long_running(const SimulationSettings& settings, bool long_running, std::string_view prefix);

std::size_t samples_for(const SimulationSettings& settings, double sample_ratio);

// ---- predict ----------------------------------------------------------------

/// Six-significant-digit `key = value` report.
std::string format_prediction(const PredictionResult& result);

// ---- simulate ---------------------------------------------------------------

struct SimulationReport {
  DatasetSpec spec;
  std::size_t trials = 0;
  MonteCarloSummary summary;
  PredictionResult prediction;
  double abs_deviation = 0.0;
};

SimulationReport run_simulation(const Json& config, bool long_running);
std::string format_simulation_text(const SimulationReport& report);
Json simulation_to_json(const SimulationReport& report);

// ---- sweep ------------------------------------------------------------------

enum class SweepKind { proportion_sweep, lambda_sweep, sigma_heatmap, phase_heatmap, root_plot };

std::string_view to_string(SweepKind kind) noexcept;

struct GridAxis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t num_points = kDefaultGridPoints;

  /// Linear grid value; the last point is exactly `max`.
  double at(std::size_t k) const;
};

enum class PhaseSplit { homoscedastic, balanced };

struct SweepSpec {
  SweepKind kind = SweepKind::proportion_sweep;
  double sample_ratio = 0.0;  // unused by phase_heatmap, where c is an axis
  double amplitude = 1.0;
  std::vector<double> level_variances;            // proportion_sweep
  std::pair<double, double> proportions{0.5, 0.5};  // lambda_sweep, sigma_heatmap, phase_heatmap
  double avg_variance = 0.0;                      // lambda_sweep
  PhaseSplit split = PhaseSplit::homoscedastic;   // phase_heatmap
  std::vector<GridAxis> axes;
  std::optional<SimulationSettings> simulate;
};

SweepSpec parse_sweep(const Json& config);

/// Mixture and model ratio at one grid point.
std::pair<NoiseMixture, double> sweep_point(const SweepSpec& spec, std::span<const double> coordinates);

struct SimulationStats {
  double mean = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  std::size_t trials = 0;
  std::size_t failures = 0;
};

struct SweepRecord {
  std::vector<double> coordinates;
  PredictionResult prediction;
  std::optional<SimulationStats> simulation;
};

/// Evaluates every grid point in row-major order (first axis outermost).
/// Simulated points use master seed derive_seed(seed, point_index).
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, bool long_running);

/// `#` comment header (tool, version, kind, grid, config), column header, rows.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRecord>& records,
                     const Json& config);

// ---- root plot --------------------------------------------------------------

struct RootPlot {
  std::vector<double> x;
  std::vector<double> sum_term;  // NaN where x hits a pole
  double threshold = 0.0;        // 1 / (c theta^2)
  std::vector<double> roots;     // ascending; the last is beta
};

/// Samples sum_l p_l / (x - sigma_l^2) on `root_plot.{x_min,x_max,num_points}`
/// (defaults bracket every pole and beta) and lists every real root of B.
RootPlot compute_root_plot(const Json& config);
void write_root_plot_csv(std::ostream& out, const RootPlot& plot, const Json& config);

/// Round-trip decimal formatting (17 significant digits).
std::string format_number(double value);

}  // namespace hetpca::experiment
