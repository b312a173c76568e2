#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "tvwalk/diagnostics.hpp"

using namespace tvwalk;

TEST(Statistics, ValuesOnKnownMatrices) {
  const BitMatrix id = BitMatrix::identity(5);
  EXPECT_EQ(statistic_value(id, Statistic::Weight), 5u);
  EXPECT_EQ(statistic_value(id, Statistic::Trace), 1u);
  EXPECT_EQ(statistic_value(id, Statistic::LeadingRank), 3u);
  const BitMatrix m = BitMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(statistic_value(m, Statistic::Weight), 5u);
  EXPECT_EQ(statistic_value(m, Statistic::Trace), 1u);
  EXPECT_EQ(statistic_value(m, Statistic::LeadingRank), 1u);
  EXPECT_EQ(statistic_bins(5, Statistic::Weight), 26u);
  for (Statistic s : {Statistic::Weight, Statistic::Trace, Statistic::LeadingRank})
    EXPECT_EQ(parse_statistic(statistic_name(s)), s);
  EXPECT_FALSE(parse_statistic("det").has_value());
}

TEST(Histograms, TotalVariation) {
  Histogram a(3), b(3);
  a.counts = {2, 2, 0};
  b.counts = {0, 1, 1};
  EXPECT_DOUBLE_EQ(histogram_tv(a, b), 0.5);
  EXPECT_DOUBLE_EQ(histogram_tv(a, a), 0.0);
  EXPECT_THROW(histogram_tv(a, Histogram(4)), std::invalid_argument);
  EXPECT_THROW(histogram_tv(a, Histogram(3)), std::invalid_argument);
}

TEST(StatisticTv, NeverExceedsTheExactDistance) {
  const GroupTable gt = enumerate_group(3);
  const TransitionStructure ts = build_transition(gt);
  for (std::uint64_t t : {0, 1, 2, 3, 5, 8}) {
    const DistVector d = distribution_at(ts, t, false);
    const double full = tv_distance(d, gt);
    for (Statistic s : {Statistic::Weight, Statistic::Trace, Statistic::LeadingRank})
      EXPECT_LE(exact_statistic_tv(d, gt, s), full + 1e-15);
  }
}

TEST(StatisticTv, MonteCarloMatchesExactPushforward) {
  const GroupTable gt = enumerate_group(3);
  const TransitionStructure ts = build_transition(gt);
  for (std::uint64_t t : {1, 3, 6}) {
    const double exact = exact_statistic_tv(distribution_at(ts, t, false), gt, Statistic::Weight);
    const TvEstimate e = statistic_tv(3, t, Statistic::Weight, 40000, 7, false, 4);
    EXPECT_EQ(e.chain_samples, 40000u);
    // plug-in bias is positive and of the order of the noise floor
    EXPECT_NEAR(e.estimate, exact, 0.02 + e.noise_floor) << t;
  }
}

TEST(StatisticTv, IndependentOfThreadCount) {
  const TvEstimate a = statistic_tv(20, 60, Statistic::LeadingRank, 3000, 11, true, 1);
  const TvEstimate b = statistic_tv(20, 60, Statistic::LeadingRank, 3000, 11, true, 6);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.noise_floor, b.noise_floor);
  EXPECT_THROW(statistic_tv(4, 1, Statistic::Weight, 999, 1, false), std::invalid_argument);
}

TEST(StatisticTv, NoiseFloorShrinksLikeOneOverRootTrials) {
  // Averaged over seeds, quadrupling the sample halves the floor.
  double small = 0, large = 0;
  const int seeds = 24;
  for (int s = 0; s < seeds; ++s) {
    small += statistic_tv(12, 0, Statistic::Weight, 2000, 100 + s, false, 4).noise_floor;
    large += statistic_tv(12, 0, Statistic::Weight, 8000, 100 + s, false, 4).noise_floor;
  }
  const double ratio = small / large;
  EXPECT_GT(ratio, 1.7);
  EXPECT_LT(ratio, 2.3);
}

TEST(Cutoff, GridHelpers) {
  const double nlogn = 64 * std::log(64.0);
  const std::vector<double> factors = {0.5, 1.0, 3.0};
  const auto g = grid_from_factors(64, factors);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[1], static_cast<std::uint64_t>(std::llround(nlogn)));
  const auto c = cutoff_grid(64, 5);
  EXPECT_EQ(c.front(), static_cast<std::uint64_t>(std::llround(0.75 * nlogn)));
  EXPECT_EQ(c.back(), static_cast<std::uint64_t>(std::llround(4.5 * nlogn)));
  EXPECT_THROW(cutoff_grid(64, 1), std::invalid_argument);
}

TEST(Cutoff, DecaysAndIsThreadIndependent) {
  const std::vector<std::uint64_t> grid = {0, 20, 60, 400};
  const auto a = cutoff_experiment(16, 1, grid, 2000, 3, 1);
  const auto b = cutoff_experiment(16, 1, grid, 2000, 3, 5);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].tv.estimate, b[i].tv.estimate);
  // at t = 0 the column has weight 1, which a uniform nonzero vector rarely has
  EXPECT_GT(a[0].tv.estimate, 0.99);
  EXPECT_LT(a[3].tv.estimate, a[3].tv.noise_floor + 0.05);
  const std::vector<std::uint64_t> unsorted = {5, 1};
  EXPECT_THROW(cutoff_experiment(16, 1, unsorted, 2000, 3), std::invalid_argument);
}

TEST(Crossover, MonotoneFit) {
  const std::vector<double> v = {1, 3, 2};
  const auto fit = monotone_decreasing_fit(v);
  EXPECT_EQ(fit, (std::vector<double>{2, 2, 2}));
  const std::vector<double> noisy = {0.9, 0.95, 0.7, 0.72, 0.3, 0.1, 0.12};
  const auto f2 = monotone_decreasing_fit(noisy);
  for (std::size_t i = 1; i < f2.size(); ++i) EXPECT_LE(f2[i], f2[i - 1]);
  EXPECT_NEAR(std::accumulate(f2.begin(), f2.end(), 0.0), std::accumulate(noisy.begin(), noisy.end(), 0.0), 1e-12);
}

TEST(Crossover, StepCurve) {
  const std::vector<double> t = {0, 1, 2, 3};
  const std::vector<double> step = {1, 1, 0, 0};
  EXPECT_DOUBLE_EQ(*crossover_locator(t, step, 0.5), 1.5);
  const std::vector<double> high = {1, 0.9, 0.8, 0.7};
  EXPECT_FALSE(crossover_locator(t, high, 0.5).has_value());
  const std::vector<double> low = {0.2, 0.1, 0.0, 0.0};
  EXPECT_FALSE(crossover_locator(t, low, 0.5).has_value());
}
