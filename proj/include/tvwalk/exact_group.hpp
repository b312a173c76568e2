#pragma once

// Exhaustive analysis of the walk for small n: the whole group is enumerated,
// states are indexed in BFS order from the identity, and distributions are
// propagated exactly.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tvwalk/gf2.hpp"

namespace tvwalk {

inline constexpr std::size_t kDefaultEnumerationCap = 4;
inline constexpr std::size_t kHardEnumerationCap = 5;

// prod_{k=0}^{n-1} (2^n - 2^k); exact for n <= 8.
std::uint64_t group_order(std::size_t n);
// prod_{k=1}^{n} (1 - 2^{-k}) = |GL_n(F_2)| / 2^{n^2}.
double invertible_fraction(std::size_t n);
// log |GL_n(F_2)|, valid for any n.
long double log_group_order(std::size_t n);

// Adds row `source` to row `target` of a matrix stored as a row-major key.
inline std::uint64_t apply_transvection_key(std::uint64_t key, std::size_t n, Transvection t) {
  const std::uint64_t row_mask = (std::uint64_t{1} << n) - 1;
  return key ^ (((key >> (t.source * n)) & row_mask) << (t.target * n));
}

class GroupTable {
 public:
  static constexpr std::uint32_t kAbsent = 0xFFFFFFFFU;

  // BFS from the identity over transvection moves. Throws above `cap`
  // (which itself may not exceed kHardEnumerationCap).
  static GroupTable enumerate(std::size_t n, std::size_t cap = kDefaultEnumerationCap);

  std::size_t n() const { return n_; }
  std::size_t size() const { return keys_.size(); }
  std::uint64_t key(std::size_t index) const { return keys_[index]; }
  std::span<const std::uint64_t> keys() const { return keys_; }

  // Position of `key` in BFS order, or kAbsent if the matrix is singular.
  std::uint32_t index_of(std::uint64_t key) const { return lookup_[key]; }
  bool contains(std::uint64_t key) const { return lookup_[key] != kAbsent; }

  double pi() const { return 1.0 / static_cast<double>(size()); }
  double pi_star() const { return pi(); }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> lookup_;  // dense over all 2^{n^2} keys
};

inline GroupTable enumerate_group(std::size_t n, std::size_t cap = kDefaultEnumerationCap) {
  return GroupTable::enumerate(n, cap);
}

// Neighbor lists of the Cayley graph; P(x, y) = 1/degree on each edge.
struct TransitionStructure {
  std::size_t n = 0;
  std::size_t degree = 0;
  std::vector<std::uint32_t> neighbors;  // size() * degree, sorted per state

  std::size_t size() const { return degree == 0 ? 0 : neighbors.size() / degree; }
  std::span<const std::uint32_t> neighbors_of(std::size_t x) const {
    return {neighbors.data() + x * degree, degree};
  }
  double step_probability() const { return 1.0 / static_cast<double>(degree); }
};

TransitionStructure build_transition(const GroupTable& gt);

bool is_symmetric(const TransitionStructure& ts);
bool is_connected(const TransitionStructure& ts);
// 2 if the graph is bipartite (found by BFS 2-coloring), else 1.
int detect_period(const TransitionStructure& ts);

struct DistVector {
  std::vector<double> p;
  std::uint64_t t = 0;
};

// One application of P (or (P + I)/2 when lazy). Work is split over fixed
// state blocks, each output entry summed in neighbor order, so the result is
// bit-identical for any thread count.
void propagate(const TransitionStructure& ts, std::span<const double> in, std::span<double> out,
               bool lazy, std::size_t threads = 1);

DistVector distribution_at(const TransitionStructure& ts, std::uint64_t t, bool lazy,
                           std::uint32_t start = 0, std::size_t threads = 1);

// Half the l1 distance to uniform, and the pi-weighted l2 norm of the
// density minus one.
double tv_distance(const DistVector& d, const GroupTable& gt);
double l2_distance(const DistVector& d, const GroupTable& gt);

struct CurvePoint {
  std::uint64_t t = 0;
  double tv = 0;
  double l2 = 0;
};

// Distances from the identity start for t = 0..t_max.
std::vector<CurvePoint> mixing_curve(const TransitionStructure& ts, const GroupTable& gt,
                                     std::uint64_t t_max, bool lazy, std::size_t threads = 1);

struct MixingTimes {
  bool converged = false;  // false: periodic non-lazy kernel, or t_limit hit
  bool periodic = false;
  bool lazy = false;
  std::optional<std::uint64_t> t_tv;
  std::optional<std::uint64_t> t_l2;
};

// First t at which the distance from the identity start drops to <= eps.
// By right-translation invariance that equals the max over starts.
MixingTimes mixing_times(const TransitionStructure& ts, const GroupTable& gt, double eps,
                         bool lazy, std::uint64_t t_limit = 1'000'000, std::size_t threads = 1);

struct SpectralOptions {
  std::size_t dense_threshold = 5000;
  std::size_t max_iterations = 600;
  double tolerance = 1e-10;
  std::uint64_t seed = 0x5eed;
};

struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending; only {min, second, 1} when !full_spectrum
  bool full_spectrum = false;
  double gap = 0;           // 1 - lambda_2
  double absolute_gap = 0;  // 1 - max(|lambda_2|, |lambda_min|)
  double lambda_min = 0;
  double lambda_second = 0;
  int period = 1;
};

// Dense symmetric eigensolve up to dense_threshold states; above that, a
// Lanczos run with the constant vector deflated for the extremal
// eigenvalues. The period from 2-coloring is cross-checked against
// lambda_min == -1; a mismatch throws.
SpectralReport spectral_report(const TransitionStructure& ts, const SpectralOptions& options = {});

// Extremal eigenvalues of P restricted to the orthogonal complement of the
// constant vector. Exposed so the iterative path can be checked against the
// dense one.
struct ExtremalPair {
  double lambda_min = 0;
  double lambda_max = 0;
  std::size_t iterations = 0;
};
ExtremalPair lanczos_extremal(const TransitionStructure& ts, const SpectralOptions& options);

}  // namespace tvwalk
