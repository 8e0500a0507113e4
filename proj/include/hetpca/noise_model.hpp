#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hetpca {

/// One noise level: a fraction of the samples sharing a common noise variance.
struct NoiseLevel {
  double proportion = 0.0;
  double variance = 0.0;

  friend bool operator==(const NoiseLevel&, const NoiseLevel&) = default;
};

/// A validated mixture of noise levels.
///
/// Levels are sorted by strictly increasing variance, variances that agree to
/// within a relative 1e-12 are merged into a single level, and proportions are
/// positive and sum to one within 1e-12. Instances can only be obtained through
/// validate_and_normalize (or helpers built on it), so every NoiseMixture in
/// the program satisfies these invariants.
class NoiseMixture {
 public:
  const std::vector<NoiseLevel>& levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }
  double max_variance() const noexcept { return levels_.back().variance; }
  double min_variance() const noexcept { return levels_.front().variance; }
  bool noiseless() const noexcept { return max_variance() == 0.0; }

  friend bool operator==(const NoiseMixture&, const NoiseMixture&) = default;

 private:
  explicit NoiseMixture(std::vector<NoiseLevel> levels) : levels_(std::move(levels)) {}
  friend NoiseMixture validate_and_normalize(std::span<const NoiseLevel> levels);

  std::vector<NoiseLevel> levels_;
};

/// Sample-to-dimension ratio c = n/d (must exceed 1) and subspace amplitude theta > 0.
class ModelParams {
 public:
  ModelParams(double sample_ratio, double amplitude);

  double sample_ratio() const noexcept { return sample_ratio_; }
  double amplitude() const noexcept { return amplitude_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double sample_ratio_;
  double amplitude_;
};

inline constexpr double kProportionSumTolerance = 1e-12;
inline constexpr double kVarianceMergeTolerance = 1e-12;

/// Validates raw (proportion, variance) pairs and returns the canonical
/// mixture. Proportions are never renormalized: a sum off by more than 1e-12
/// is rejected.
NoiseMixture validate_and_normalize(std::span<const NoiseLevel> levels);

/// Sum of p_l * sigma_l^2.
double average_variance(const NoiseMixture& mix);

/// Two-level mixture holding the average variance fixed while lambda in [0,1]
/// moves weight between the levels:
///   sigma_1^2 = lambda / (p1 lambda + p2 (1 - lambda)) * avg
///   sigma_2^2 = (1 - lambda) / (p1 lambda + p2 (1 - lambda)) * avg
/// lambda = 1/2 yields the homoscedastic mixture.
NoiseMixture lambda_split(double lambda, double avg_variance, std::pair<double, double> proportions);

/// Multiplies every variance by t^2 and the amplitude by t. The asymptotic
/// prediction is invariant under this map.
std::pair<NoiseMixture, ModelParams> scale_mixture(const NoiseMixture& mix, const ModelParams& params,
                                                   double t);

}  // namespace hetpca
