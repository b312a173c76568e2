#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "oracles.hpp"
#include "tvwalk/funineq.hpp"

using namespace tvwalk;

namespace {

struct Model {
  GroupTable gt;
  TransitionStructure ts;
};

const Model& model(std::size_t n) {
  static std::vector<std::unique_ptr<Model>> cache(5);
  if (!cache[n]) {
    GroupTable gt = enumerate_group(n);
    TransitionStructure ts = build_transition(gt);
    cache[n] = std::make_unique<Model>(Model{std::move(gt), std::move(ts)});
  }
  return *cache[n];
}

FunctionOnGroup random_function(std::size_t n, std::uint64_t seed) {
  return FunctionOnGroup(random_test_function(model(n).gt.size(), seed, 7));
}

}  // namespace

TEST(Forms, IndicatorOfIdentityOnTheSixCycle) {
  const Model& m = model(2);
  const FunctionOnGroup f = FunctionOnGroup::indicator(m.gt, 0);
  EXPECT_NEAR(dirichlet_form(f, m.ts, m.gt), 1.0 / 6, 1e-15);
  EXPECT_NEAR(entropy_sq(f, m.gt), std::log(6.0) / 6, 1e-15);
  EXPECT_NEAR(variance(f, m.gt), 5.0 / 36, 1e-15);
  EXPECT_NEAR(expectation(f, m.gt), 1.0 / 6, 1e-15);
  const BoundReport key = check_key_inequality(f, m.ts, m.gt);
  EXPECT_NEAR(key.rhs, 11.0 / 18, 1e-15);
  EXPECT_NEAR(key.lhs, std::log(6.0) / 6, 1e-15);
  EXPECT_TRUE(key.satisfied);
  EXPECT_NEAR(lsi_ratio(f, m.ts, m.gt), std::log(6.0), 1e-13);
}

TEST(Forms, EntropyBasics) {
  const Model& m = model(3);
  EXPECT_EQ(entropy_sq(FunctionOnGroup::constant(m.gt, 2.5), m.gt), 0.0);
  EXPECT_EQ(dirichlet_form(FunctionOnGroup::constant(m.gt, 2.5), m.ts, m.gt), 0.0);
  const FunctionOnGroup f = random_function(3, 4);
  std::vector<double> scaled(f.values().begin(), f.values().end());
  for (double& v : scaled) v *= 3;
  const double ent = entropy_sq(f, m.gt);
  EXPECT_GT(ent, 0);
  EXPECT_NEAR(entropy_sq(FunctionOnGroup(scaled), m.gt), 9 * ent, 1e-12 * ent);
  std::vector<double> raw(f.values().begin(), f.values().end());
  EXPECT_NEAR(ent, oracle::plain_entropy_sq(raw), 1e-12);
  // the variational form is minimized at u = E f^2
  double ef2 = 0;
  for (double v : raw) ef2 += v * v / static_cast<double>(raw.size());
  EXPECT_NEAR(variational_entropy(raw, ef2), ent, 1e-12);
  for (double u : {0.5 * ef2, 0.9 * ef2, 1.1 * ef2, 3 * ef2}) EXPECT_GT(variational_entropy(raw, u), ent);
  EXPECT_THROW(FunctionOnGroup({1.0, std::nan("")}), std::invalid_argument);
}

TEST(Forms, DirichletMatchesDenseOracle) {
  for (int n : {2, 3}) {
    const oracle::DenseChain c = oracle::dense_chain(n);
    const Model& m = model(static_cast<std::size_t>(n));
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const FunctionOnGroup f = random_function(static_cast<std::size_t>(n), seed);
      std::vector<double> reordered(c.states.size());
      for (std::size_t s = 0; s < c.states.size(); ++s) reordered[s] = f[m.gt.index_of(c.states[s])];
      EXPECT_NEAR(dirichlet_form(f, m.ts, m.gt), oracle::dense_dirichlet(c, reordered), 1e-12);
    }
  }
}

TEST(Forms, VarianceIsBoundedByDirichletOverGap) {
  // Poincare: var <= E / gap
  const Model& m = model(3);
  const double gap = (3 - std::sqrt(2.0)) / 6;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const FunctionOnGroup f = random_function(3, seed);
    EXPECT_LE(variance(f, m.gt), dirichlet_form(f, m.ts, m.gt) / gap * (1 + 1e-12));
  }
}

TEST(Inequalities, KeyExtensionRowsKassabovOnRandomFunctions) {
  for (std::size_t n : {2, 3}) {
    const Model& m = model(n);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const FunctionOnGroup f(random_test_function(m.gt.size(), seed, seed));
      EXPECT_TRUE(check_key_inequality(f, m.ts, m.gt).satisfied);
      EXPECT_TRUE(check_extension_inequality(f, m.gt).satisfied);
      EXPECT_TRUE(kassabov_check(f, m.ts, m.gt).satisfied);
      const RowDecompositionReport r = check_row_decomposition(f, m.gt);
      EXPECT_TRUE(r.satisfied()) << n << " " << seed;
      EXPECT_LT(r.transfer_identity_error, 1e-10);
      EXPECT_EQ(r.conditional_violations, 0u);
    }
  }
}

TEST(Inequalities, RowTransferMatchesTheKeyInequality) {
  const Model& m = model(3);
  const FunctionOnGroup f = random_function(3, 12);
  const RowDecompositionReport r = check_row_decomposition(f, m.gt);
  const BoundReport key = check_key_inequality(f, m.ts, m.gt);
  EXPECT_NEAR(r.transfer.rhs, key.rhs, 1e-10 * key.rhs);
  EXPECT_NEAR(r.transfer.lhs, key.lhs, 1e-10 * std::max(1.0, key.lhs));
}

TEST(Inequalities, ExtensionIsAnEqualityForCenteredMass) {
  // g is constant off the group, so ent_mu(g^2) only sees the group part
  const Model& m = model(2);
  const ExtensionFunction g = ExtensionFunction::build(FunctionOnGroup::constant(m.gt, 1.0), m.gt);
  EXPECT_EQ(g.values.size(), 16u);
  for (double v : g.values) EXPECT_DOUBLE_EQ(v, 1.0);
  const FunctionOnGroup f = random_function(2, 3);
  const ExtensionFunction h = ExtensionFunction::build(f, m.gt);
  EXPECT_DOUBLE_EQ(h.fill, expectation(f, m.gt));
  EXPECT_DOUBLE_EQ(h.values[0], h.fill);  // the zero matrix is singular
}

TEST(Hypercube, OneDimensionalIndicator) {
  const std::vector<double> f = {1.0, 0.0};
  const BoundReport r = hypercube_lsi_check(1, f);
  EXPECT_NEAR(r.lhs, std::log(2.0) / 2, 1e-15);
  EXPECT_NEAR(r.rhs, 0.5, 1e-15);
  EXPECT_TRUE(r.satisfied);
}

TEST(Hypercube, HoldsForRandomFunctions) {
  for (std::size_t d = 1; d <= 10; ++d) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto f = random_test_function(std::size_t{1} << d, seed, seed);
      EXPECT_TRUE(hypercube_lsi_check(d, f).satisfied) << d << " " << seed;
    }
  }
  EXPECT_THROW(hypercube_lsi_check(2, std::vector<double>(3, 1.0)), std::invalid_argument);
}

TEST(Kassabov, ConstantAndSpectralForm) {
  EXPECT_DOUBLE_EQ(kassabov_constant(4), 4.0 * 762 * 762);
  EXPECT_NEAR(kassabov_constant(2), 4 * std::pow(31 * std::sqrt(2.0) + 700, 2), 1e-6);
  for (std::size_t n = 2; n <= 3; ++n) {
    const BoundReport r = kassabov_spectral_check(spectral_report(model(n).ts), n);
    EXPECT_TRUE(r.satisfied);
    EXPECT_NEAR(r.lhs, 1.0 / kassabov_constant(n), 1e-18);
  }
}

TEST(Lsi, SixCycleReachesTheSpectralBound) {
  const Model& m = model(2);
  const LsiEstimate e = estimate_lsi_constant(m.ts, m.gt, {});
  EXPECT_GE(e.lower_bound, std::max(std::log(6.0), 4.0));
  EXPECT_NEAR(e.two_over_gap, 4.0, 1e-10);
  EXPECT_GE(e.witness_ratio, std::log(6.0));
  EXPECT_LE(e.witness_ratio, 4.0 + 1e-9);  // 2/gap is approached only in the limit
  EXPECT_NEAR(lsi_ratio(e.argmax, m.ts, m.gt), e.witness_ratio, 1e-12);
}

TEST(Lsi, NEqualsThreeBeatsTwoOverGapAndIsDeterministic) {
  const Model& m = model(3);
  LsiOptions opt;
  opt.restarts = 8;
  opt.iterations = 300;
  opt.seed = 5;
  const LsiEstimate a = estimate_lsi_constant(m.ts, m.gt, opt);
  opt.threads = 4;
  const LsiEstimate b = estimate_lsi_constant(m.ts, m.gt, opt);
  EXPECT_EQ(a.witness_ratio, b.witness_ratio);
  EXPECT_EQ(a.best_start, b.best_start);
  EXPECT_NEAR(a.two_over_gap, 12 / (3 - std::sqrt(2.0)), 1e-9);
  EXPECT_GE(a.lower_bound, a.two_over_gap);
  EXPECT_THROW(estimate_lsi_constant(model(4).ts, model(4).gt, opt), std::invalid_argument);
}

TEST(Bounds, CountingLowerBoundAgainstIntegerSearch) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (double eps : {0.01, 0.25, 0.5, 0.9}) {
      const long double target = (1.0L - eps) * static_cast<long double>(group_order(n));
      std::uint64_t t = 0;
      long double reach = 1;
      while (reach < target) reach *= static_cast<long double>(n * (n - 1)), ++t;
      EXPECT_EQ(counting_lower_bound(n, eps), t) << n << " " << eps;
    }
  }
  EXPECT_EQ(counting_lower_bound(3, 0.25), 3u);
}

TEST(Bounds, MixingBoundFormula) {
  EXPECT_NEAR(log_log_inverse_pi_star(2), std::log(std::log(6.0)), 1e-15);
  const double e2 = std::exp(2.0);
  const double expected = 8.0 / 4 * std::log(std::log(168.0)) + 4.0 * std::log(std::sqrt(1 + 2 * e2) / 0.25) + 1;
  EXPECT_NEAR(mixing_bound(3, 0.25, 8.0, 4.0), expected, 1e-12);
  EXPECT_THROW(mixing_bound(3, 0.0, 1, 1), std::invalid_argument);
  EXPECT_THROW(mixing_bound(3, 0.25, -1, 1), std::invalid_argument);
}

TEST(Suites, ZeroViolationsAndThreadIndependence) {
  for (InequalitySuite s : all_suites()) {
    SuiteConfig c;
    c.n = 2;
    c.hypercube_dim = 6;
    c.trials = 200;
    c.seed = 3;
    const SuiteResult a = run_inequality_suite(s, c);
    c.threads = 4;
    const SuiteResult b = run_inequality_suite(s, c);
    EXPECT_EQ(a.violations, 0u) << a.check_name;
    EXPECT_EQ(a.min_slack, b.min_slack) << a.check_name;
    EXPECT_EQ(parse_suite(suite_name(s)), s);
  }
  EXPECT_FALSE(parse_suite("nope").has_value());
  SuiteConfig big;
  big.n = 4;
  EXPECT_THROW(run_inequality_suite(InequalitySuite::RowDecomposition, big), std::invalid_argument);
}

TEST(Suites, RandomFunctionsAreReproducible) {
  EXPECT_EQ(random_test_function(50, 9, 3), random_test_function(50, 9, 3));
  EXPECT_NE(random_test_function(50, 9, 5), random_test_function(50, 9, 13));
}
