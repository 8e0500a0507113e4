#include "hetpca/asymptotic_prediction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hetpca/error.hpp"

namespace hetpca {

namespace {

constexpr double kBisectionTolerance = 1e-6;
constexpr double kResidualTolerance = 1e-12;
constexpr int kMaxNewtonSteps = 100;

// Offset right of the largest pole used as the first left bracket probe.
double pole_offset(double pole) { return std::abs(pole) * 1e-9 + 1e-300; }

// Finds the root of an increasing function f on the open interval (lo, hi).
// The caller guarantees f < 0 just right of lo and f >= 0 at or just left of
// hi; endpoints are never evaluated. Bisection narrows the bracket to a
// relative width of 1e-6 (measured against the interval length), then a
// safeguarded Newton iteration polishes until the relative residual drops
// below 1e-12 or the bracket collapses to adjacent doubles.
template <typename F, typename DF, typename R>
double solve_increasing(F f, DF df, R residual, double lo, double hi) {
  const double scale = hi - lo;
  while (hi - lo > kBisectionTolerance * scale) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  double x = lo + 0.5 * (hi - lo);
  for (int step = 0; step < kMaxNewtonSteps; ++step) {
    const double fx = f(x);
    if (fx == 0.0 || residual(x) < kResidualTolerance) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double slope = df(x);
    double next = x - fx / slope;
    if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
    if (next == x || next <= lo || next >= hi) return x;
    x = next;
  }
  return x;
}

}  // namespace

SecularFunctions::SecularFunctions(NoiseMixture mixture, const ModelParams& params)
    : SecularFunctions(std::move(mixture), params.sample_ratio(), params.amplitude()) {}

SecularFunctions::SecularFunctions(NoiseMixture mixture, double sample_ratio, double amplitude)
    : mixture_(std::move(mixture)), sample_ratio_(sample_ratio), amplitude_(amplitude) {
  if (!(sample_ratio > 0.0) || !(amplitude > 0.0) || !std::isfinite(sample_ratio) ||
      !std::isfinite(amplitude)) {
    throw Error(ErrorCode::InvalidModelParams,
                fmt::format("secular functions need c > 0 and theta > 0 (got c={}, theta={})",
                            sample_ratio, amplitude));
  }
}

void SecularFunctions::check_not_pole(double x) const {
  for (const auto& level : mixture_.levels()) {
    if (x == level.variance) {
      throw Error(ErrorCode::PoleEvaluation, fmt::format("evaluation at pole x = {}", x));
    }
  }
}

double SecularFunctions::A(double x) const {
  check_not_pole(x);
  double sum = 0.0;
  for (const auto& [p, s] : mixture_.levels()) {
    const double gap = x - s;
    sum += p * s * s / (gap * gap);
  }
  return 1.0 - sample_ratio_ * sum;
}

double SecularFunctions::pole_sum(double x) const {
  check_not_pole(x);
  double sum = 0.0;
  for (const auto& [p, s] : mixture_.levels()) sum += p / (x - s);
  return sum;
}

double SecularFunctions::B(double x) const {
  return 1.0 - sample_ratio_ * amplitude_ * amplitude_ * pole_sum(x);
}

double SecularFunctions::B_prime(double x) const {
  check_not_pole(x);
  double sum = 0.0;
  for (const auto& [p, s] : mixture_.levels()) {
    const double gap = x - s;
    sum += p / (gap * gap);
  }
  return sample_ratio_ * amplitude_ * amplitude_ * sum;
}

double relative_residual_A(const SecularFunctions& sf, double x) {
  const double value = sf.A(x);
  return std::abs(value) / (1.0 + std::abs(1.0 - value));
}

double relative_residual_B(const SecularFunctions& sf, double x) {
  double magnitude = 0.0;
  for (const auto& [p, s] : sf.mixture().levels()) magnitude += p / std::abs(x - s);
  magnitude *= sf.sample_ratio() * sf.amplitude() * sf.amplitude();
  return std::abs(sf.B(x)) / (1.0 + magnitude);
}

namespace {

double A_prime(const SecularFunctions& sf, double x) {
  double sum = 0.0;
  for (const auto& [p, s] : sf.mixture().levels()) {
    const double gap = x - s;
    sum += p * s * s / (gap * gap * gap);
  }
  return 2.0 * sf.sample_ratio() * sum;
}

double root_B_in(const SecularFunctions& sf, double lo, double hi) {
  return solve_increasing([&](double x) { return sf.B(x); }, [&](double x) { return sf.B_prime(x); },
                          [&](double x) { return relative_residual_B(sf, x); }, lo, hi);
}

}  // namespace

double largest_root_B(const SecularFunctions& sf) {
  const double pole = sf.mixture().max_variance();
  const double ct2 = sf.sample_ratio() * sf.amplitude() * sf.amplitude();
  // sum_l p_l / (x - s_l) <= 1 / (x - s_max), so B(s_max + c t^2) >= 0.
  const double hi = pole + ct2;
  if (sf.B(hi) == 0.0) return hi;
  double lo = pole;
  const double probe = pole + pole_offset(pole);
  if (probe < hi && sf.B(probe) < 0.0) lo = probe;
  return root_B_in(sf, lo, hi);
}

double largest_root_A(const SecularFunctions& sf) {
  const double pole = sf.mixture().max_variance();
  if (!(pole > 0.0)) {
    throw Error(ErrorCode::NoRoot, "A is identically 1 for a noiseless mixture and has no root");
  }
  double lo = pole;
  const double probe = pole + pole_offset(pole);
  if (sf.A(probe) < 0.0) lo = probe;
  double width = pole;
  double hi = pole + width;
  while (sf.A(hi) < 0.0) {
    lo = hi;
    width *= 2.0;
    hi = pole + width;
  }
  if (sf.A(hi) == 0.0) return hi;
  return solve_increasing([&](double x) { return sf.A(x); }, [&](double x) { return A_prime(sf, x); },
                          [&](double x) { return relative_residual_A(sf, x); }, lo, hi);
}

std::vector<double> all_real_roots_B(const SecularFunctions& sf) {
  const auto& levels = sf.mixture().levels();
  std::vector<double> roots;
  roots.reserve(levels.size());
  // Between consecutive poles B rises from -inf to +inf.
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    roots.push_back(root_B_in(sf, levels[k].variance, levels[k + 1].variance));
  }
  roots.push_back(largest_root_B(sf));
  return roots;
}

PredictionResult predict(const NoiseMixture& mixture, const ModelParams& params) {
  return predict(SecularFunctions(mixture, params));
}

PredictionResult predict(const SecularFunctions& sf) {
  PredictionResult result;
  result.beta = largest_root_B(sf);
  if (!sf.mixture().noiseless()) result.alpha = largest_root_A(sf);
  result.a_at_beta = sf.A(result.beta);
  result.b_prime_at_beta = sf.B_prime(result.beta);
  result.unclamped_value = result.a_at_beta / (result.beta * result.b_prime_at_beta);
  result.value = std::clamp(result.unclamped_value, 0.0, 1.0);
  result.above_transition = result.a_at_beta > 0.0;
  return result;
}

double homoscedastic_closed_form(double sample_ratio, double amplitude, double variance) {
  if (!(sample_ratio > 1.0) || !(amplitude > 0.0) || !(variance >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("homoscedastic prediction needs c > 1, theta > 0, variance >= 0 "
                            "(got c={}, theta={}, variance={})",
                            sample_ratio, amplitude, variance));
  }
  const double t2 = amplitude * amplitude;
  const double snr_fourth = sample_ratio * t2 * t2;
  const double var_sq = variance * variance;
  if (!(snr_fourth > var_sq)) return 0.0;
  return (1.0 - var_sq / snr_fourth) / (1.0 + variance / (sample_ratio * t2));
}

double critical_sample_ratio(const NoiseMixture& mixture, double amplitude) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw Error(ErrorCode::InvalidModelParams, fmt::format("amplitude must be > 0 (got {})", amplitude));
  }
  if (mixture.noiseless()) {
    throw Error(ErrorCode::NoTransition, "noiseless mixture has a prediction of 1 for every c");
  }
  auto positive = [&](double c) {
    const SecularFunctions sf(mixture, c, amplitude);
    return sf.A(largest_root_B(sf)) > 0.0;
  };
  if (positive(1.0)) return 1.0;

  double lo = 1.0;
  double hi = 2.0;
  while (!positive(hi)) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw Error(ErrorCode::NoTransition, "prediction stays at zero for every finite c");
    }
  }
  constexpr double kRelativeTolerance = 1e-12;
  while (hi - lo > kRelativeTolerance * hi) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (positive(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace hetpca
