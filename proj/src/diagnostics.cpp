#include "tvwalk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tvwalk/chain.hpp"
#include "tvwalk/parallel.hpp"
#include "tvwalk/random.hpp"

namespace tvwalk {

namespace {

constexpr std::size_t kTrialBlock = 256;
constexpr std::uint64_t kChainStreams = 1;
constexpr std::uint64_t kReferenceStreams = 2;

}  // namespace

std::string statistic_name(Statistic s) {
  switch (s) {
    case Statistic::Weight: return "weight";
    case Statistic::Trace: return "trace";
    case Statistic::LeadingRank: return "leading_rank";
  }
  return "unknown";
}

std::optional<Statistic> parse_statistic(const std::string& name) {
  for (Statistic s : {Statistic::Weight, Statistic::Trace, Statistic::LeadingRank}) {
    if (statistic_name(s) == name) return s;
  }
  return std::nullopt;
}

std::size_t statistic_value(const BitMatrix& x, Statistic s) {
  switch (s) {
    case Statistic::Weight:
      return x.popcount();
    case Statistic::Trace: {
      bool parity = false;
      for (std::size_t i = 0; i < std::min(x.rows(), x.cols()); ++i) parity ^= x.get(i, i);
      return parity ? 1 : 0;
    }
    case Statistic::LeadingRank: {
      const std::size_t h = (x.n() + 1) / 2;
      BitMatrix block(h, h);
      for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < h; ++j) block.set(i, j, x.get(i, j));
      }
      return rank(block);
    }
  }
  return 0;
}

std::size_t statistic_bins(std::size_t n, Statistic s) {
  switch (s) {
    case Statistic::Weight: return n * n + 1;
    case Statistic::Trace: return 2;
    case Statistic::LeadingRank: return (n + 1) / 2 + 1;
  }
  return 0;
}

void Histogram::merge(const Histogram& other) {
  if (counts.size() != other.counts.size()) throw std::invalid_argument("histogram bin mismatch");
  for (std::size_t b = 0; b < counts.size(); ++b) counts[b] += other.counts[b];
}

std::uint64_t Histogram::total() const {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

double histogram_tv(const Histogram& a, const Histogram& b) {
  if (a.counts.size() != b.counts.size()) throw std::invalid_argument("histogram bin mismatch");
  const double ta = static_cast<double>(a.total());
  const double tb = static_cast<double>(b.total());
  if (ta == 0 || tb == 0) throw std::invalid_argument("empty histogram");
  double total = 0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    total += std::abs(static_cast<double>(a.counts[i]) / ta - static_cast<double>(b.counts[i]) / tb);
  }
  return 0.5 * total;
}

TvEstimate statistic_tv(std::size_t n, std::uint64_t t, Statistic s, std::size_t trials, std::uint64_t seed,
                        bool lazy, std::size_t threads) {
  if (trials < kMinDiagnosticTrials) throw std::invalid_argument("statistic_tv needs at least 1000 trials");
  const std::size_t bins = statistic_bins(n, s);
  const std::size_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  const std::size_t half = trials / 2;

  struct BlockResult {
    Histogram chain, reference, first_half, second_half;
  };
  std::vector<BlockResult> per_block(blocks, {Histogram(bins), Histogram(bins), Histogram(bins), Histogram(bins)});
  parallel_for_blocks(blocks, threads, [&](std::size_t b) {
    Rng chain_rng = make_rng(derive_seed(seed, kChainStreams), b);
    Rng ref_rng = make_rng(derive_seed(seed, kReferenceStreams), b);
    const std::size_t end = std::min(trials, (b + 1) * kTrialBlock);
    for (std::size_t k = b * kTrialBlock; k < end; ++k) {
      BitMatrix x = BitMatrix::identity(n);
      advance(x, t, lazy, chain_rng);
      per_block[b].chain.add(statistic_value(x, s));

      const std::size_t v = statistic_value(sample_uniform_invertible(n, ref_rng), s);
      per_block[b].reference.add(v);
      (k < half ? per_block[b].first_half : per_block[b].second_half).add(v);
    }
  });

  BlockResult merged{Histogram(bins), Histogram(bins), Histogram(bins), Histogram(bins)};
  for (const auto& r : per_block) {
    merged.chain.merge(r.chain);
    merged.reference.merge(r.reference);
    merged.first_half.merge(r.first_half);
    merged.second_half.merge(r.second_half);
  }
  return {histogram_tv(merged.chain, merged.reference), histogram_tv(merged.first_half, merged.second_half),
          merged.chain.total(), merged.reference.total()};
}

double exact_statistic_tv(const DistVector& d, const GroupTable& gt, Statistic s) {
  if (d.p.size() != gt.size()) throw std::invalid_argument("distribution does not match the table");
  const std::size_t bins = statistic_bins(gt.n(), s);
  std::vector<double> mass(bins, 0.0);
  std::vector<double> uniform(bins, 0.0);
  for (std::size_t x = 0; x < gt.size(); ++x) {
    const std::size_t v = statistic_value(decode_key(gt.key(x), gt.n()), s);
    mass[v] += d.p[x];
    uniform[v] += gt.pi();
  }
  double total = 0;
  for (std::size_t b = 0; b < bins; ++b) total += std::abs(mass[b] - uniform[b]);
  return 0.5 * total;
}

// ------------------------------------------------------------------ cutoff

std::vector<std::uint64_t> grid_from_factors(std::size_t n, std::span<const double> factors) {
  const double nlogn = static_cast<double>(n) * std::log(static_cast<double>(n));
  std::vector<std::uint64_t> grid;
  grid.reserve(factors.size());
  for (double f : factors) {
    if (f < 0) throw std::invalid_argument("grid factors must be nonnegative");
    grid.push_back(static_cast<std::uint64_t>(std::llround(f * nlogn)));
  }
  return grid;
}

std::vector<std::uint64_t> cutoff_grid(std::size_t n, std::size_t points, double lo, double hi) {
  if (points < 2) throw std::invalid_argument("cutoff grid needs at least two points");
  std::vector<double> factors(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double u = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    factors[i] = 1.5 * u;
  }
  return grid_from_factors(n, factors);
}

namespace {

BitMatrix sample_full_rank_slice(std::size_t n, std::size_t k, Rng& rng) {
  for (std::uint64_t attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
    BitMatrix m = random_matrix(n, k, rng);
    if (rank(m) == k) return m;
  }
  throw std::runtime_error("rejection sampler exceeded its attempt cap");
}

}  // namespace

std::vector<CutoffPoint> cutoff_experiment(std::size_t n, std::size_t k, std::span<const std::uint64_t> grid,
                                           std::size_t trials, std::uint64_t seed, std::size_t threads) {
  if (trials < kMinDiagnosticTrials) throw std::invalid_argument("cutoff experiment needs at least 1000 trials");
  if (grid.empty()) throw std::invalid_argument("empty time grid");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("time grid must be sorted");
  const std::size_t bins = n * k + 1;
  const std::size_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  const std::size_t half = trials / 2;

  struct BlockResult {
    std::vector<Histogram> chain;
    Histogram reference, first_half, second_half;
  };
  std::vector<BlockResult> per_block(
      blocks, {std::vector<Histogram>(grid.size(), Histogram(bins)), Histogram(bins), Histogram(bins), Histogram(bins)});
  parallel_for_blocks(blocks, threads, [&](std::size_t b) {
    Rng chain_rng = make_rng(derive_seed(seed, kChainStreams), b);
    Rng ref_rng = make_rng(derive_seed(seed, kReferenceStreams), b);
    const std::size_t end = std::min(trials, (b + 1) * kTrialBlock);
    for (std::size_t trial = b * kTrialBlock; trial < end; ++trial) {
      ProjectionState state = projection_start(n, k);
      std::uint64_t now = 0;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        advance_projection(state, grid[g] - now, chain_rng);
        now = grid[g];
        per_block[b].chain[g].add(state.cols.popcount());
      }
      const std::size_t w = sample_full_rank_slice(n, k, ref_rng).popcount();
      per_block[b].reference.add(w);
      (trial < half ? per_block[b].first_half : per_block[b].second_half).add(w);
    }
  });

  BlockResult merged{std::vector<Histogram>(grid.size(), Histogram(bins)), Histogram(bins), Histogram(bins),
                     Histogram(bins)};
  for (const auto& r : per_block) {
    for (std::size_t g = 0; g < grid.size(); ++g) merged.chain[g].merge(r.chain[g]);
    merged.reference.merge(r.reference);
    merged.first_half.merge(r.first_half);
    merged.second_half.merge(r.second_half);
  }

  const double nlogn = static_cast<double>(n) * std::log(static_cast<double>(n));
  const double floor = histogram_tv(merged.first_half, merged.second_half);
  std::vector<CutoffPoint> curve;
  curve.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    curve.push_back({grid[g], static_cast<double>(grid[g]) / nlogn,
                     {histogram_tv(merged.chain[g], merged.reference), floor, merged.chain[g].total(),
                      merged.reference.total()}});
  }
  return curve;
}

// --------------------------------------------------------------- crossover

std::vector<double> monotone_decreasing_fit(std::span<const double> values) {
  struct Pool {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Pool> pools;
  for (double v : values) {
    pools.push_back({v, 1});
    while (pools.size() >= 2 && pools[pools.size() - 2].mean() < pools.back().mean()) {
      pools[pools.size() - 2].sum += pools.back().sum;
      pools[pools.size() - 2].count += pools.back().count;
      pools.pop_back();
    }
  }
  std::vector<double> fit;
  fit.reserve(values.size());
  for (const Pool& p : pools) fit.insert(fit.end(), p.count, p.mean());
  return fit;
}

std::optional<double> crossover_locator(std::span<const double> times, std::span<const double> values, double level) {
  if (times.size() != values.size()) throw std::invalid_argument("times and values differ in length");
  const std::vector<double> fit = monotone_decreasing_fit(values);
  for (std::size_t i = 0; i < fit.size(); ++i) {
    if (fit[i] <= level) {
      if (i == 0) return std::nullopt;
      const double frac = (fit[i - 1] - level) / (fit[i - 1] - fit[i]);
      return times[i - 1] + frac * (times[i] - times[i - 1]);
    }
  }
  return std::nullopt;
}

std::optional<double> crossover_locator(std::span<const CutoffPoint> curve, double level) {
  std::vector<double> times;
  std::vector<double> values;
  for (const CutoffPoint& p : curve) {
    times.push_back(static_cast<double>(p.t));
    values.push_back(p.tv.estimate);
  }
  return crossover_locator(times, values, level);
}

}  // namespace tvwalk
