#include "hetpca/pca_simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "hetpca/error.hpp"
#include "hetpca/rng.hpp"

namespace hetpca {

std::string_view to_string(Distribution dist) noexcept {
  switch (dist) {
    case Distribution::gaussian: return "gaussian";
    case Distribution::rademacher: return "rademacher";
    case Distribution::uniform: return "uniform";
  }
  return "unknown";
}

std::optional<Distribution> parse_distribution(std::string_view name) noexcept {
  if (name == "gaussian") return Distribution::gaussian;
  if (name == "rademacher") return Distribution::rademacher;
  if (name == "uniform") return Distribution::uniform;
  return std::nullopt;
}

void validate(const DatasetSpec& spec) {
  if (spec.dimension < 1) {
    throw Error(ErrorCode::InvalidArgument, "dimension d must be >= 1");
  }
  if (spec.num_samples <= spec.dimension) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("num_samples n must exceed dimension d (got n={}, d={})", spec.num_samples,
                            spec.dimension));
  }
  if (!(spec.amplitude > 0.0) || !std::isfinite(spec.amplitude)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("amplitude must be finite and > 0 (got {})", spec.amplitude));
  }
}

std::vector<std::size_t> level_counts(std::size_t num_samples, const NoiseMixture& mixture) {
  const auto& levels = mixture.levels();
  std::vector<std::size_t> counts(levels.size());
  std::vector<double> remainders(levels.size());
  std::size_t assigned = 0;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const double exact = levels[l].proportion * static_cast<double>(num_samples);
    const double whole = std::floor(exact);
    counts[l] = static_cast<std::size_t>(whole);
    remainders[l] = exact - whole;
    assigned += counts[l];
  }
  // Proportions sum to 1 within 1e-12, so assigned can overshoot only when a
  // product rounds up to an integer; trim from the smallest remainders.
  std::vector<std::size_t> order(levels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t k = 0; assigned < num_samples; k = (k + 1) % order.size()) {
    ++counts[order[k]];
    ++assigned;
  }
  for (std::size_t k = order.size(); assigned > num_samples;) {
    k = (k == 0 ? order.size() : k) - 1;
    if (counts[order[k]] > 0) {
      --counts[order[k]];
      --assigned;
    }
  }
  return counts;
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(make_engine(seed)) {}

  double draw(Distribution dist) {
    switch (dist) {
      case Distribution::gaussian: return normal_(engine_);
      case Distribution::rademacher: return (engine_() >> 63) ? 1.0 : -1.0;
      case Distribution::uniform: return uniform_(engine_);
    }
    return 0.0;
  }

 private:
  Engine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  // Centered with unit variance: half-width sqrt(3).
  std::uniform_real_distribution<double> uniform_{-std::sqrt(3.0), std::sqrt(3.0)};
};

constexpr std::uint64_t kStartVectorSeed = 0x5eed5eed5eed5eedULL;
constexpr double kRayleighTolerance = 1e-12;
constexpr double kResidualTolerance = 1e-10;
constexpr double kSignificantCoordinate = 1e-12;

}  // namespace

Dataset generate_dataset(const DatasetSpec& spec) {
  validate(spec);
  const auto d = static_cast<Eigen::Index>(spec.dimension);
  const auto n = static_cast<Eigen::Index>(spec.num_samples);
  const auto [subspace_dist, coeff_dist, noise_dist] = spec.distributions;

  Dataset out;
  out.level_assignment.reserve(spec.num_samples);
  const auto counts = level_counts(spec.num_samples, spec.mixture);
  for (std::size_t l = 0; l < counts.size(); ++l) out.level_assignment.insert(out.level_assignment.end(), counts[l], l);

  std::vector<double> noise_sd;
  for (const auto& level : spec.mixture.levels()) noise_sd.push_back(std::sqrt(level.variance));

  Sampler sampler(spec.seed);
  const double subspace_scale = 1.0 / std::sqrt(static_cast<double>(d));
  out.true_subspace.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) out.true_subspace(j) = sampler.draw(subspace_dist) * subspace_scale;
  out.coefficients.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.coefficients(i) = sampler.draw(coeff_dist);

  out.data.resize(d, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sd = noise_sd[out.level_assignment[static_cast<std::size_t>(i)]];
    const double signal = spec.amplitude * out.coefficients(i);
    auto column = out.data.col(i);
    for (Eigen::Index j = 0; j < d; ++j) {
      column(j) = signal * out.true_subspace(j) + sd * sampler.draw(noise_dist);
    }
  }
  return out;
}

SingularVectorResult top_left_singular_vector(const Eigen::Ref<const Eigen::MatrixXd>& matrix) {
  const Eigen::Index d = matrix.rows();
  if (d == 0 || matrix.cols() == 0 || matrix.isZero(0.0)) {
    throw Error(ErrorCode::InvalidArgument, "top singular vector of an empty or zero matrix");
  }
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(matrix);
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();

  Eigen::VectorXd v(d);
  {
    Sampler start(kStartVectorSeed);
    for (Eigen::Index j = 0; j < d; ++j) v(j) = start.draw(Distribution::gaussian);
  }
  v.normalize();
  Eigen::VectorXd w = gram * v;
  if (w.squaredNorm() == 0.0) {
    Eigen::Index best = 0;
    gram.diagonal().maxCoeff(&best);
    v = Eigen::VectorXd::Unit(d, best);
    w = gram * v;
  }

  SingularVectorResult result;
  const int max_iterations = static_cast<int>(50 * d);
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= max_iterations; ++it) {
    v = w / w.norm();
    w.noalias() = gram * v;
    result.iterations = it;
    const double rayleigh = v.dot(w);
    // The quotient settles long before the vector does, so also require a small
    // eigen-residual: sin(angle) <= residual / spectral gap.
    const double residual = (w - rayleigh * v).norm();
    if (std::abs(rayleigh - previous) < kRayleighTolerance * std::abs(rayleigh) &&
        residual <= kResidualTolerance * std::abs(rayleigh)) {
      result.converged = true;
      break;
    }
    previous = rayleigh;
  }

  for (Eigen::Index j = 0; j < d; ++j) {
    if (std::abs(v(j)) > kSignificantCoordinate) {
      if (v(j) < 0.0) v = -v;
      break;
    }
  }
  result.singular_value = std::sqrt(std::max(0.0, v.dot(gram * v)));
  result.vector = std::move(v);
  return result;
}

RecoveryMetric recovery_metric(const Eigen::Ref<const Eigen::VectorXd>& true_subspace,
                               const Eigen::Ref<const Eigen::VectorXd>& estimate) {
  if (true_subspace.size() != estimate.size()) {
    throw Error(ErrorCode::InvalidArgument, "true subspace and estimate differ in length");
  }
  const double norm_sq = true_subspace.squaredNorm();
  if (norm_sq == 0.0) {
    throw Error(ErrorCode::ZeroTrueSubspace, "true subspace is the zero vector");
  }
  if (std::abs(estimate.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "estimate must have unit norm");
  }
  const double inner = true_subspace.dot(estimate);
  RecoveryMetric metric;
  metric.raw_sq_inner = inner * inner;
  metric.normalized_sq_inner = std::min(1.0, metric.raw_sq_inner / norm_sq);
  return metric;
}

TrialSummary run_trial(const DatasetSpec& spec) {
  const Dataset data = generate_dataset(spec);
  const SingularVectorResult top = top_left_singular_vector(data.data);
  const RecoveryMetric metric = recovery_metric(data.true_subspace, top.vector);
  return TrialSummary{metric.raw_sq_inner, metric.normalized_sq_inner, top.singular_value, top.iterations,
                      top.converged};
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw Error(ErrorCode::InvalidArgument, "quantile of empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

MonteCarloSummary run_monte_carlo(const DatasetSpec& spec, std::size_t trials, unsigned threads) {
  validate(spec);
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));

  MonteCarloSummary summary;
  summary.trials.resize(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      try {
        DatasetSpec trial_spec = spec;
        trial_spec.seed = derive_seed(spec.seed, t);
        summary.trials[t] = run_trial(trial_spec);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> raw;
  raw.reserve(trials);
  double raw_sum = 0.0;
  double normalized_sum = 0.0;
  for (const auto& trial : summary.trials) {
    raw.push_back(trial.raw_sq_inner);
    raw_sum += trial.raw_sq_inner;
    normalized_sum += trial.normalized_sq_inner;
    if (!trial.converged) ++summary.convergence_failures;
  }
  const auto count = static_cast<double>(trials);
  summary.mean = raw_sum / count;
  summary.normalized_mean = normalized_sum / count;
  std::sort(raw.begin(), raw.end());
  summary.q25 = quantile_sorted(raw, 0.25);
  summary.median = quantile_sorted(raw, 0.5);
  summary.q75 = quantile_sorted(raw, 0.75);
  return summary;
}

}  // namespace hetpca
