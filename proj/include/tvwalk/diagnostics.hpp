#pragma once

// Monte-Carlo mixing diagnostics for sizes beyond exact enumeration.
//
// Total variation between the laws of a statistic S(X) lower-bounds the total
// variation between the laws of X, so histogram distances of cheap
// statistics give (noisy) lower bounds on the distance to stationarity.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tvwalk/exact_group.hpp"
#include "tvwalk/gf2.hpp"

namespace tvwalk {

enum class Statistic {
  Weight,       // number of ones
  Trace,        // parity of the diagonal
  LeadingRank,  // rank of the leading ceil(n/2) x ceil(n/2) block
};

std::string statistic_name(Statistic s);
std::optional<Statistic> parse_statistic(const std::string& name);

std::size_t statistic_value(const BitMatrix& x, Statistic s);
// Number of histogram bins the statistic can hit for an n x n matrix.
std::size_t statistic_bins(std::size_t n, Statistic s);

struct Histogram {
  std::vector<std::uint64_t> counts;

  explicit Histogram(std::size_t bins = 0) : counts(bins, 0) {}
  void add(std::size_t value) { ++counts.at(value); }
  void merge(const Histogram& other);
  std::uint64_t total() const;
};

// Half the l1 distance between the normalized histograms.
double histogram_tv(const Histogram& a, const Histogram& b);

struct TvEstimate {
  double estimate = 0;
  double noise_floor = 0;  // same estimator between two halves of the reference sample
  std::uint64_t chain_samples = 0;
  std::uint64_t reference_samples = 0;
};

inline constexpr std::size_t kMinDiagnosticTrials = 1000;

// `trials` chains run from the identity to time t, against `trials` exact
// uniform samples. Trial k draws from stream (seed, k / block), so results do
// not depend on the thread count.
TvEstimate statistic_tv(std::size_t n, std::uint64_t t, Statistic s, std::size_t trials,
                        std::uint64_t seed, bool lazy, std::size_t threads = 1);

// Exact total variation of the statistic's pushforward, for enumerated groups.
double exact_statistic_tv(const DistVector& d, const GroupTable& gt, Statistic s);

struct CutoffPoint {
  std::uint64_t t = 0;
  double t_over_nlogn = 0;
  TvEstimate tv;
};

// Times round(f * n log n) for factors evenly spaced over [lo, hi] * 1.5.
std::vector<std::uint64_t> cutoff_grid(std::size_t n, std::size_t points, double lo = 0.5, double hi = 3.0);
// Times round(f * n log n) for explicit factors f.
std::vector<std::uint64_t> grid_from_factors(std::size_t n, std::span<const double> factors);

// The chain on the first k columns, tracked through the weight of the n x k
// slice, against the exact stationary law (uniform on full-rank n x k
// slices, sampled directly by rejection). Each trial runs one chain through
// the whole (sorted) grid.
std::vector<CutoffPoint> cutoff_experiment(std::size_t n, std::size_t k, std::span<const std::uint64_t> grid,
                                           std::size_t trials, std::uint64_t seed, std::size_t threads = 1);

// Decreasing isotonic fit (pool-adjacent-violators).
std::vector<double> monotone_decreasing_fit(std::span<const double> values);

// Time at which the monotone fit of the curve first drops to `level`,
// linearly interpolated; nullopt when the curve does not bracket it.
std::optional<double> crossover_locator(std::span<const double> times, std::span<const double> values,
                                        double level = 0.5);
std::optional<double> crossover_locator(std::span<const CutoffPoint> curve, double level = 0.5);

}  // namespace tvwalk
