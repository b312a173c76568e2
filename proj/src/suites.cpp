#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tvwalk/funineq.hpp"
#include "tvwalk/parallel.hpp"
#include "tvwalk/random.hpp"

namespace tvwalk {

std::string suite_name(InequalitySuite suite) {
  switch (suite) {
    case InequalitySuite::Key: return "key";
    case InequalitySuite::Extension: return "extension";
    case InequalitySuite::RowDecomposition: return "rows";
    case InequalitySuite::Hypercube: return "hypercube";
    case InequalitySuite::Kassabov: return "kassabov";
    case InequalitySuite::KassabovSpectral: return "kassabov_spectral";
  }
  return "unknown";
}

std::vector<InequalitySuite> all_suites() {
  return {InequalitySuite::Key,       InequalitySuite::Extension, InequalitySuite::RowDecomposition,
          InequalitySuite::Hypercube, InequalitySuite::Kassabov,  InequalitySuite::KassabovSpectral};
}

std::optional<InequalitySuite> parse_suite(const std::string& name) {
  for (InequalitySuite s : all_suites()) {
    if (suite_name(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<double> random_test_function(std::size_t size, std::uint64_t seed, std::size_t trial) {
  Rng rng = make_rng(seed, trial);
  std::normal_distribution<double> normal;
  std::vector<double> f(size, 0.0);
  switch (trial % 8) {
    case 0:
      f[uniform_below(rng, size)] = 1.0;
      break;
    case 1: {
      const std::uint64_t a = uniform_below(rng, size);
      std::uint64_t b = uniform_below(rng, size - 1);
      if (b >= a) ++b;
      f[a] = 1.0;
      f[b] = -1.0;
      break;
    }
    case 2:
      for (double& v : f) v = 1.0 + 1e-3 * normal(rng);
      break;
    case 3:
      for (double& v : f) v = std::exp(2.0 * normal(rng));
      break;
    default:
      for (double& v : f) v = normal(rng);
      break;
  }
  return f;
}

namespace {

struct Tally {
  std::size_t violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();

  void add(const BoundReport& r) {
    if (!r.satisfied) ++violations;
    min_slack = std::min(min_slack, r.slack);
  }
  void merge(const Tally& other) {
    violations += other.violations;
    min_slack = std::min(min_slack, other.min_slack);
  }
};

// Row-decomposition trials count a violation if any of the checked
// inequalities or identities fails; the slack tracked is the consolidated one.
BoundReport row_trial(const FunctionOnGroup& f, const GroupTable& gt) {
  const RowDecompositionReport r = check_row_decomposition(f, gt);
  BoundReport summary = r.consolidated;
  summary.slack = std::min({r.subadditivity.slack, r.conditional_lsi.slack, r.consolidated.slack, r.transfer.slack});
  summary.satisfied = r.satisfied();
  return summary;
}

}  // namespace

SuiteResult run_inequality_suite(InequalitySuite suite, const SuiteConfig& config) {
  SuiteResult result;
  result.check_name = suite_name(suite);
  result.n = suite == InequalitySuite::Hypercube ? config.hypercube_dim : config.n;

  if (suite == InequalitySuite::Hypercube) {
    if (config.hypercube_dim < 1 || config.hypercube_dim > kMaxHypercubeDim) {
      throw std::invalid_argument("hypercube dimension must be in [1, 12]");
    }
  } else if (config.n < 2) {
    throw std::invalid_argument("group suites need n >= 2");
  }
  if (suite == InequalitySuite::Extension && config.n > kMaxExtensionDim) {
    throw std::invalid_argument("extension suite needs n <= 4");
  }
  if (suite == InequalitySuite::RowDecomposition && config.n > kMaxRowDecompositionDim) {
    throw std::invalid_argument("row decomposition suite needs n <= 3");
  }

  std::optional<GroupTable> gt;
  std::optional<TransitionStructure> ts;
  if (suite != InequalitySuite::Hypercube) {
    gt = enumerate_group(config.n);
    ts = build_transition(*gt);
  }

  if (suite == InequalitySuite::KassabovSpectral) {
    Tally tally;
    tally.add(kassabov_spectral_check(spectral_report(*ts), config.n));
    result.trials = 1;
    result.violations = tally.violations;
    result.min_slack = tally.min_slack;
    return result;
  }

  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (config.trials + kBlock - 1) / kBlock;
  std::vector<Tally> tallies(blocks);
  parallel_for_blocks(blocks, config.threads, [&](std::size_t b) {
    const std::size_t end = std::min(config.trials, (b + 1) * kBlock);
    for (std::size_t trial = b * kBlock; trial < end; ++trial) {
      if (suite == InequalitySuite::Hypercube) {
        const auto f = random_test_function(std::size_t{1} << config.hypercube_dim, config.seed, trial);
        tallies[b].add(hypercube_lsi_check(config.hypercube_dim, f));
        continue;
      }
      const FunctionOnGroup f(random_test_function(gt->size(), config.seed, trial));
      switch (suite) {
        case InequalitySuite::Key: tallies[b].add(check_key_inequality(f, *ts, *gt)); break;
        case InequalitySuite::Extension: tallies[b].add(check_extension_inequality(f, *gt)); break;
        case InequalitySuite::RowDecomposition: tallies[b].add(row_trial(f, *gt)); break;
        case InequalitySuite::Kassabov: tallies[b].add(kassabov_check(f, *ts, *gt)); break;
        default: break;
      }
    }
  });

  Tally total;
  for (const Tally& t : tallies) total.merge(t);
  result.trials = config.trials;
  result.violations = total.violations;
  result.min_slack = config.trials == 0 ? 0.0 : total.min_slack;
  return result;
}

}  // namespace tvwalk
