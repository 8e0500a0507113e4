#pragma once

#include <optional>
#include <vector>

#include "hetpca/noise_model.hpp"

namespace hetpca {

/// The two secular functions governing rank-one recovery under L noise levels:
///
///   A(x) = 1 - c     sum_l p_l sigma_l^4 / (x - sigma_l^2)^2
///   B(x) = 1 - c t^2 sum_l p_l         / (x - sigma_l^2)
///
/// with t the subspace amplitude. Both tend to 1 at +infinity and are strictly
/// increasing and concave right of the largest variance.
class SecularFunctions {
 public:
  SecularFunctions(NoiseMixture mixture, const ModelParams& params);

  /// Unchecked ratio variant used when scanning c down to the c = 1 boundary.
  /// Requires sample_ratio > 0 and amplitude > 0.
  SecularFunctions(NoiseMixture mixture, double sample_ratio, double amplitude);

  const NoiseMixture& mixture() const noexcept { return mixture_; }
  double sample_ratio() const noexcept { return sample_ratio_; }
  double amplitude() const noexcept { return amplitude_; }

  double A(double x) const;
  double B(double x) const;
  double B_prime(double x) const;

  /// Sum_l p_l / (x - sigma_l^2); B(x) = 1 - c t^2 * pole_sum(x).
  double pole_sum(double x) const;

 private:
  void check_not_pole(double x) const;

  NoiseMixture mixture_;
  double sample_ratio_;
  double amplitude_;
};

/// Relative residuals used as root-finding stopping criteria: |f(x)| divided
/// by 1 plus the magnitude of the subtracted sum.
double relative_residual_A(const SecularFunctions& sf, double x);
double relative_residual_B(const SecularFunctions& sf, double x);

/// beta: the unique root of B right of the largest variance.
double largest_root_B(const SecularFunctions& sf);

/// alpha: the unique root of A right of the largest variance. Throws NoRoot
/// for a noiseless mixture, where A is identically 1.
double largest_root_A(const SecularFunctions& sf);

/// All L real roots of B in ascending order: one between each pair of
/// consecutive poles and one right of the largest.
std::vector<double> all_real_roots_B(const SecularFunctions& sf);

struct PredictionResult {
  double beta = 0.0;
  std::optional<double> alpha;  // undefined for noiseless mixtures
  double a_at_beta = 0.0;
  double b_prime_at_beta = 0.0;
  double unclamped_value = 0.0;  // A(beta) / (beta B'(beta)) before max(0, .) and clamping
  double value = 0.0;            // asymptotic |u^T u_hat|^2, in [0, 1]
  bool above_transition = false;
};

/// Limit of the squared inner product between the true subspace and the PCA
/// estimate as n, d grow with n/d = c: max(0, A(beta) / (beta B'(beta))).
PredictionResult predict(const NoiseMixture& mixture, const ModelParams& params);
PredictionResult predict(const SecularFunctions& sf);

/// Single-level specialization:
/// (1 - s^2/(c t^4)) / (1 + s/(c t^2)) if c t^4 > s^2, else 0.
double homoscedastic_closed_form(double sample_ratio, double amplitude, double variance);

/// Smallest c* >= 1 with a positive prediction for every c > c*, located by
/// bisection on the sign of A(beta). Returns 1 when the prediction is
/// positive arbitrarily close to c = 1. Throws NoTransition for a noiseless
/// mixture.
double critical_sample_ratio(const NoiseMixture& mixture, double amplitude);

}  // namespace hetpca
