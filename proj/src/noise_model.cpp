#include "hetpca/noise_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "hetpca/error.hpp"

namespace hetpca {

ModelParams::ModelParams(double sample_ratio, double amplitude)
    : sample_ratio_(sample_ratio), amplitude_(amplitude) {
  if (!(sample_ratio > 1.0) || !std::isfinite(sample_ratio)) {
    throw Error(ErrorCode::InvalidModelParams,
                fmt::format("sample ratio c must be finite and > 1 (got {})", sample_ratio));
  }
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw Error(ErrorCode::InvalidModelParams,
                fmt::format("amplitude theta must be finite and > 0 (got {})", amplitude));
  }
}

NoiseMixture validate_and_normalize(std::span<const NoiseLevel> levels) {
  if (levels.empty()) {
    throw Error(ErrorCode::EmptyMixture, "noise mixture has no levels");
  }
  double total = 0.0;
  for (const auto& level : levels) {
    if (!(level.proportion > 0.0) || !std::isfinite(level.proportion)) {
      throw Error(ErrorCode::NonpositiveProportion,
                  fmt::format("noise level proportion must be finite and > 0 (got {})", level.proportion));
    }
    if (!(level.variance >= 0.0)) {
      throw Error(ErrorCode::NegativeVariance,
                  fmt::format("noise level variance must be >= 0 (got {})", level.variance));
    }
    if (!std::isfinite(level.variance)) {
      throw Error(ErrorCode::InvalidArgument, "noise level variance must be finite");
    }
    total += level.proportion;
  }
  if (std::abs(total - 1.0) > kProportionSumTolerance) {
    throw Error(ErrorCode::ProportionSumInvalid,
                fmt::format("noise level proportions sum to {:.17g}, expected 1", total));
  }

  std::vector<NoiseLevel> sorted(levels.begin(), levels.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const NoiseLevel& a, const NoiseLevel& b) { return a.variance < b.variance; });

  // Each merged group is represented by its smallest variance, so consecutive
  // representatives always differ by more than the tolerance.
  std::vector<NoiseLevel> merged;
  merged.reserve(sorted.size());
  for (const auto& level : sorted) {
    if (!merged.empty()) {
      auto& last = merged.back();
      if (level.variance - last.variance <= kVarianceMergeTolerance * level.variance) {
        last.proportion += level.proportion;
        continue;
      }
    }
    merged.push_back(level);
  }
  return NoiseMixture(std::move(merged));
}

double average_variance(const NoiseMixture& mix) {
  double sum = 0.0;
  for (const auto& level : mix.levels()) sum += level.proportion * level.variance;
  return sum;
}

NoiseMixture lambda_split(double lambda, double avg_variance, std::pair<double, double> proportions) {
  const auto [p1, p2] = proportions;
  if (!(p1 > 0.0) || !(p2 > 0.0) || std::abs(p1 + p2 - 1.0) > kProportionSumTolerance) {
    throw Error(ErrorCode::InvalidProportions,
                fmt::format("lambda split needs two positive proportions summing to 1 (got {}, {})", p1, p2));
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("lambda must lie in [0, 1] (got {})", lambda));
  }
  if (!(avg_variance >= 0.0)) {
    throw Error(ErrorCode::NegativeVariance,
                fmt::format("average variance must be >= 0 (got {})", avg_variance));
  }
  const double denom = p1 * lambda + p2 * (1.0 - lambda);
  const NoiseLevel levels[] = {
      {p1, lambda / denom * avg_variance},
      {p2, (1.0 - lambda) / denom * avg_variance},
  };
  return validate_and_normalize(levels);
}

std::pair<NoiseMixture, ModelParams> scale_mixture(const NoiseMixture& mix, const ModelParams& params,
                                                   double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::NonpositiveScale, fmt::format("scale factor must be finite and > 0 (got {})", t));
  }
  std::vector<NoiseLevel> scaled = mix.levels();
  for (auto& level : scaled) level.variance *= t * t;
  return {validate_and_normalize(scaled), ModelParams(params.sample_ratio(), params.amplitude() * t)};
}

}  // namespace hetpca
