#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hetpca/noise_model.hpp"

namespace hetpca {

/// Zero-mean, unit-variance draw families for the subspace, the coefficients
/// and the noise entries.
enum class Distribution { gaussian, rademacher, uniform };

std::string_view to_string(Distribution dist) noexcept;
std::optional<Distribution> parse_distribution(std::string_view name) noexcept;

struct DatasetSpec {
  std::size_t dimension = 0;    // d
  std::size_t num_samples = 0;  // n, must exceed d
  NoiseMixture mixture;
  double amplitude = 1.0;
  // Subspace entries, subspace coefficients, noise entries.
  std::array<Distribution, 3> distributions{Distribution::gaussian, Distribution::gaussian,
                                            Distribution::gaussian};
  std::uint64_t seed = 0;

  double sample_ratio() const noexcept {
    return static_cast<double>(num_samples) / static_cast<double>(dimension);
  }
};

/// Throws InvalidArgument unless d >= 1, n > d and amplitude > 0.
void validate(const DatasetSpec& spec);

/// Per-level sample counts by largest-remainder apportionment of n * p_l.
/// Ties in the fractional remainder go to the lower level index.
std::vector<std::size_t> level_counts(std::size_t num_samples, const NoiseMixture& mixture);

struct Dataset {
  Eigen::MatrixXd data;           // d x n, Y = theta u z^T + E H
  Eigen::VectorXd true_subspace;  // u, entries with variance 1/d
  Eigen::VectorXd coefficients;   // z
  std::vector<std::size_t> level_assignment;
};

/// Draws one dataset. A single engine seeded with spec.seed produces u, then z,
/// then the noise entries column by column; samples 0..n_1-1 get level 0, the
/// next n_2 get level 1, and so on.
Dataset generate_dataset(const DatasetSpec& spec);

struct SingularVectorResult {
  Eigen::VectorXd vector;  // unit norm, first significant coordinate positive
  double singular_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Top left singular vector of a d x n matrix by power iteration on Y Y^T.
/// Stops once the Rayleigh quotient rho changes by less than 1e-12 relative and
/// ||Y Y^T v - rho v|| <= 1e-10 rho, or after 50 d iterations, in which case the
/// last iterate is returned with converged = false.
SingularVectorResult top_left_singular_vector(const Eigen::Ref<const Eigen::MatrixXd>& matrix);

struct RecoveryMetric {
  double raw_sq_inner = 0.0;         // (u^T u_hat)^2, can exceed 1 since ||u|| is random
  double normalized_sq_inner = 0.0;  // raw / ||u||^2
};

RecoveryMetric recovery_metric(const Eigen::Ref<const Eigen::VectorXd>& true_subspace,
                               const Eigen::Ref<const Eigen::VectorXd>& estimate);

struct TrialSummary {
  double raw_sq_inner = 0.0;
  double normalized_sq_inner = 0.0;
  double top_singular_value = 0.0;
  int iterations = 0;
  bool converged = false;

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

/// One simulated trial: generate, estimate, score.
TrialSummary run_trial(const DatasetSpec& spec);

struct MonteCarloSummary {
  double mean = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double normalized_mean = 0.0;
  std::size_t convergence_failures = 0;
  std::vector<TrialSummary> trials;

  friend bool operator==(const MonteCarloSummary&, const MonteCarloSummary&) = default;
};

/// Runs `trials` independent trials; trial t uses seed derive_seed(spec.seed, t).
/// Statistics are over raw_sq_inner and are reduced in trial order, so the
/// result does not depend on `threads` (0 picks the hardware concurrency).
MonteCarloSummary run_monte_carlo(const DatasetSpec& spec, std::size_t trials, unsigned threads = 0);

/// Quantile of sorted data with linear interpolation between order statistics
/// (position q (n - 1)).
double quantile_sorted(const std::vector<double>& sorted, double q);

}  // namespace hetpca
