#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hetpca/asymptotic_prediction.hpp"
#include "hetpca/error.hpp"
#include "hetpca/pca_simulation.hpp"
#include "hetpca/rng.hpp"
#include "support/oracles.hpp"

using namespace hetpca;

namespace {

NoiseMixture mix(std::vector<NoiseLevel> levels) { return validate_and_normalize(levels); }

DatasetSpec small_spec(NoiseMixture mixture, std::uint64_t seed = 1) {
  return DatasetSpec{.dimension = 20, .num_samples = 60, .mixture = std::move(mixture), .amplitude = 1.0, .seed = seed};
}

}  // namespace

TEST(LevelCounts, ExactProportions) {
  EXPECT_EQ(level_counts(10, mix({{0.2, 1.0}, {0.8, 4.0}})), (std::vector<std::size_t>{2, 8}));
}

TEST(LevelCounts, LargestRemainderWithinOne) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> weight(0.01, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int L = 1 + trial % 5;
    std::vector<NoiseLevel> raw(static_cast<std::size_t>(L));
    double total = 0.0;
    for (int l = 0; l < L; ++l) {
      raw[l] = {weight(rng), static_cast<double>(l)};
      total += raw[l].proportion;
    }
    double sum = 0.0;
    for (int l = 0; l + 1 < L; ++l) sum += (raw[l].proportion /= total);
    raw.back().proportion = 1.0 - sum;
    const auto m = validate_and_normalize(raw);
    const std::size_t n = 7 + static_cast<std::size_t>(trial);
    const auto counts = level_counts(n, m);
    std::size_t assigned = 0;
    for (std::size_t l = 0; l < counts.size(); ++l) {
      EXPECT_LT(std::abs(static_cast<double>(counts[l]) - m.levels()[l].proportion * n), 1.0);
      assigned += counts[l];
    }
    EXPECT_EQ(assigned, n);
  }
}

TEST(GenerateDataset, NoiselessIsRankOne) {
  const auto data = generate_dataset(small_spec(mix({{1.0, 0.0}})));
  const Eigen::MatrixXd expected = data.true_subspace * data.coefficients.transpose();
  EXPECT_EQ((data.data - expected).cwiseAbs().maxCoeff(), 0.0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(data.data);
  EXPECT_LT(svd.singularValues()(1), 1e-12 * svd.singularValues()(0));
}

TEST(GenerateDataset, LevelAssignmentFollowsCounts) {
  DatasetSpec spec{.dimension = 4, .num_samples = 10, .mixture = mix({{0.2, 1.0}, {0.8, 4.0}}), .amplitude = 1.0};
  const auto data = generate_dataset(spec);
  EXPECT_EQ(data.level_assignment, (std::vector<std::size_t>{0, 0, 1, 1, 1, 1, 1, 1, 1, 1}));
}

TEST(GenerateDataset, RegenerationIsBitwiseIdentical) {
  const auto spec = small_spec(mix({{0.3, 0.5}, {0.7, 2.0}}), 42);
  const auto a = generate_dataset(spec);
  const auto b = generate_dataset(spec);
  EXPECT_TRUE(a.data == b.data);
  EXPECT_TRUE(a.true_subspace == b.true_subspace);
  const auto c = generate_dataset(small_spec(mix({{0.3, 0.5}, {0.7, 2.0}}), 43));
  EXPECT_FALSE(a.data == c.data);
}

TEST(GenerateDataset, NoiseVarianceMatchesLevel) {
  // theta tiny: the entries are essentially pure noise. 1e6 entries.
  DatasetSpec spec{.dimension = 100, .num_samples = 10000, .mixture = mix({{1.0, 3.24}}), .amplitude = 1e-12,
                   .seed = 9};
  const auto data = generate_dataset(spec);
  const double var = data.data.squaredNorm() / static_cast<double>(data.data.size());
  EXPECT_NEAR(var, 3.24, 0.05 * 3.24);
}

TEST(GenerateDataset, SubspaceEntriesHaveVarianceOneOverD) {
  for (auto dist : {Distribution::gaussian, Distribution::rademacher, Distribution::uniform}) {
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      DatasetSpec spec{.dimension = 200, .num_samples = 201, .mixture = mix({{1.0, 1.0}}), .amplitude = 1.0,
                       .distributions = {dist, Distribution::gaussian, Distribution::gaussian}, .seed = seed};
      const auto data = generate_dataset(spec);
      sum_sq += data.true_subspace.squaredNorm();
      count += data.true_subspace.size();
    }
    EXPECT_NEAR(sum_sq / static_cast<double>(count) * 200.0, 1.0, 0.05) << to_string(dist);
  }
}

TEST(GenerateDataset, DistributionsHaveUnitVariance) {
  for (auto dist : {Distribution::gaussian, Distribution::rademacher, Distribution::uniform}) {
    DatasetSpec spec{.dimension = 200, .num_samples = 2000, .mixture = mix({{1.0, 1.0}}), .amplitude = 1e-12,
                     .distributions = {dist, dist, dist}, .seed = 17};
    const auto data = generate_dataset(spec);
    const double var = data.data.squaredNorm() / static_cast<double>(data.data.size());
    EXPECT_NEAR(var, 1.0, 0.02) << to_string(dist);
    EXPECT_NEAR(data.data.mean(), 0.0, 0.01) << to_string(dist);
    EXPECT_NEAR(data.true_subspace.squaredNorm(), 1.0, 0.35) << to_string(dist);
    if (dist == Distribution::rademacher) {
      EXPECT_NEAR(std::abs(data.true_subspace(0)), 1.0 / std::sqrt(200.0), 1e-15);
    }
  }
}

TEST(GenerateDataset, RejectsInvalidSpec) {
  DatasetSpec spec{.dimension = 10, .num_samples = 10, .mixture = mix({{1.0, 1.0}}), .amplitude = 1.0};
  EXPECT_THROW(generate_dataset(spec), Error);
  spec.num_samples = 11;
  spec.amplitude = 0.0;
  EXPECT_THROW(generate_dataset(spec), Error);
}

TEST(TopSingularVector, RankOne) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(3, 4);
  y.row(0) << 1.0, 1.0, 1.0, 0.0;
  const auto r = top_left_singular_vector(y);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.vector(0), 1.0, 1e-15);
  EXPECT_NEAR(r.vector.tail(2).norm(), 0.0, 1e-15);
  EXPECT_NEAR(r.singular_value, std::sqrt(3.0), 1e-14);
}

TEST(TopSingularVector, Diagonal) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(3, 4);
  y(0, 0) = 3.0;
  y(1, 1) = 2.0;
  y(2, 2) = 1.0;
  const auto r = top_left_singular_vector(y);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.vector(0), 1.0, 1e-10);
  EXPECT_NEAR(r.singular_value, 3.0, 1e-12);
}

TEST(TopSingularVector, SignConvention) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(2, 3);
  y.row(0) << -1.0, 2.0, 0.5;
  y.row(1) << -2.0, 4.0, 1.0;
  const auto r = top_left_singular_vector(y);
  EXPECT_GT(r.vector(0), 0.0);
}

TEST(TopSingularVector, MatchesJacobiOracle) {
  for (unsigned seed = 0; seed < 40; ++seed) {
    const Eigen::MatrixXd y = oracle::random_gaussian_matrix(5, 8, seed);
    const auto r = top_left_singular_vector(y);
    const auto [oracle, eigenvalue] = oracle::jacobi_top_eigenpair(y * y.transpose());
    const double overlap = r.vector.dot(oracle);
    EXPECT_GT(overlap * overlap, 1 - 1e-10) << "seed " << seed;
    EXPECT_NEAR(r.singular_value * r.singular_value, eigenvalue, 1e-9 * eigenvalue);
    EXPECT_NEAR(r.vector.norm(), 1.0, 1e-14);
  }
}

TEST(TopSingularVector, RejectsZeroMatrix) {
  EXPECT_THROW(top_left_singular_vector(Eigen::MatrixXd::Zero(3, 4)), Error);
}

TEST(RecoveryMetric, Examples) {
  Eigen::VectorXd u(2);
  u << std::sqrt(1.1), 0.0;
  Eigen::VectorXd aligned = u.normalized();
  auto m = recovery_metric(u, aligned);
  EXPECT_NEAR(m.raw_sq_inner, 1.1, 1e-15);
  EXPECT_NEAR(m.normalized_sq_inner, 1.0, 1e-15);

  Eigen::VectorXd orth(2);
  orth << 0.0, 1.0;
  m = recovery_metric(u, orth);
  EXPECT_EQ(m.raw_sq_inner, 0.0);
  EXPECT_EQ(m.normalized_sq_inner, 0.0);

  Eigen::VectorXd e1(2), diag(2);
  e1 << 1.0, 0.0;
  diag << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  m = recovery_metric(e1, diag);
  EXPECT_NEAR(m.raw_sq_inner, 0.5, 1e-15);
  EXPECT_NEAR(m.normalized_sq_inner, 0.5, 1e-15);
}

TEST(RecoveryMetric, Errors) {
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd e1(2);
  e1 << 1.0, 0.0;
  try {
    recovery_metric(zero, e1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroTrueSubspace);
  }
  EXPECT_THROW(recovery_metric(e1, 2.0 * e1), Error);
}

TEST(Quantiles, LinearInterpolation) {
  const std::vector<double> data{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(quantile_sorted(data, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile_sorted(data, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted(data, 0.75), 3.25);
  EXPECT_DOUBLE_EQ(quantile_sorted({5.0}, 0.75), 5.0);
}

TEST(DeriveSeed, StreamsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(MonteCarlo, DeterministicAcrossRunsAndThreads) {
  const auto spec = small_spec(mix({{0.4, 0.3}, {0.6, 1.5}}), 123);
  const auto a = run_monte_carlo(spec, 17, 1);
  const auto b = run_monte_carlo(spec, 17, 1);
  const auto c = run_monte_carlo(spec, 17, 4);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.trials.size(), 17u);
  EXPECT_LE(a.q25, a.median);
  EXPECT_LE(a.median, a.q75);
}

TEST(MonteCarlo, TrialUsesDerivedSeed) {
  auto spec = small_spec(mix({{1.0, 0.5}}), 8);
  const auto summary = run_monte_carlo(spec, 3, 1);
  spec.seed = derive_seed(8, 2);
  EXPECT_EQ(run_trial(spec), summary.trials[2]);
}

TEST(MonteCarlo, NoiselessRecoversExactly) {
  const auto summary = run_monte_carlo(small_spec(mix({{1.0, 0.0}}), 5), 10, 1);
  for (const auto& t : summary.trials) {
    EXPECT_NEAR(t.normalized_sq_inner, 1.0, 1e-8);
    EXPECT_TRUE(t.converged);
  }
}

TEST(MonteCarlo, TrialSummaryInvariants) {
  const auto spec = small_spec(mix({{0.5, 0.2}, {0.5, 2.0}}), 77);
  const auto summary = run_monte_carlo(spec, 8, 1);
  for (std::size_t t = 0; t < summary.trials.size(); ++t) {
    auto trial_spec = spec;
    trial_spec.seed = derive_seed(spec.seed, t);
    const auto data = generate_dataset(trial_spec);
    const auto& s = summary.trials[t];
    EXPECT_GE(s.normalized_sq_inner, 0.0);
    EXPECT_LE(s.normalized_sq_inner, 1.0 + 1e-12);
    EXPECT_NEAR(s.raw_sq_inner, s.normalized_sq_inner * data.true_subspace.squaredNorm(), 1e-12);
  }
}

TEST(MonteCarlo, HomoscedasticLowNoiseAgreesWithPrediction) {
  // d = 100, n = 1000, sigma = 0.2 (stddev), theta = 1.
  DatasetSpec spec{.dimension = 100, .num_samples = 1000, .mixture = mix({{1.0, 0.04}}), .amplitude = 1.0,
                   .seed = 2025};
  const auto summary = run_monte_carlo(spec, 200);
  const double prediction = predict(spec.mixture, ModelParams(10.0, 1.0)).value;
  EXPECT_NEAR(summary.mean, prediction, 0.025);
  EXPECT_EQ(summary.convergence_failures, 0u);
}

TEST(MonteCarlo, HighNoiseEndpointExceedsPrediction) {
  // p2 = 0 endpoint: every sample has stddev 1.8, below the phase transition.
  DatasetSpec spec{.dimension = 100, .num_samples = 1000, .mixture = mix({{1.0, 1.8 * 1.8}}), .amplitude = 1.0,
                   .seed = 2026};
  const auto summary = run_monte_carlo(spec, 200);
  const double prediction = predict(spec.mixture, ModelParams(10.0, 1.0)).value;
  EXPECT_GE(summary.mean, prediction);
  EXPECT_LE(summary.mean - prediction, 0.2);
}
