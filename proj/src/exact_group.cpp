#include "tvwalk/exact_group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "tvwalk/parallel.hpp"

namespace tvwalk {

std::uint64_t group_order(std::size_t n) {
  if (n > 8) throw std::invalid_argument("group order overflows 64 bits for n > 8");
  std::uint64_t order = 1;
  for (std::size_t k = 0; k < n; ++k) order *= (std::uint64_t{1} << n) - (std::uint64_t{1} << k);
  return order;
}

double invertible_fraction(std::size_t n) {
  long double product = 1.0L;
  for (std::size_t k = 1; k <= n; ++k) product *= 1.0L - std::ldexp(1.0L, -static_cast<int>(k));
  return static_cast<double>(product);
}

long double log_group_order(std::size_t n) {
  long double log_fraction = 0.0L;
  for (std::size_t k = 1; k <= n; ++k) {
    log_fraction += std::log1p(-std::ldexp(1.0L, -static_cast<int>(k)));
  }
  return static_cast<long double>(n) * static_cast<long double>(n) * std::log(2.0L) + log_fraction;
}

// --------------------------------------------------------------- GroupTable

GroupTable GroupTable::enumerate(std::size_t n, std::size_t cap) {
  if (cap > kHardEnumerationCap) throw std::invalid_argument("enumeration cap above 5");
  if (n < 1 || n > cap) throw std::invalid_argument("enumeration dimension out of range");
  GroupTable gt;
  gt.n_ = n;
  gt.lookup_.assign(std::size_t{1} << (n * n), kAbsent);
  gt.keys_.reserve(group_order(n));

  std::vector<Transvection> moves;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) moves.push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)});
    }
  }

  const std::uint64_t identity = encode_key(BitMatrix::identity(n));
  gt.lookup_[identity] = 0;
  gt.keys_.push_back(identity);
  for (std::size_t head = 0; head < gt.keys_.size(); ++head) {
    const std::uint64_t key = gt.keys_[head];
    for (const Transvection& t : moves) {
      const std::uint64_t next = apply_transvection_key(key, n, t);
      if (gt.lookup_[next] == kAbsent) {
        gt.lookup_[next] = static_cast<std::uint32_t>(gt.keys_.size());
        gt.keys_.push_back(next);
      }
    }
  }
  return gt;
}

// ----------------------------------------------------- TransitionStructure

TransitionStructure build_transition(const GroupTable& gt) {
  const std::size_t n = gt.n();
  TransitionStructure ts;
  ts.n = n;
  ts.degree = n * (n - 1);
  if (ts.degree == 0) throw std::invalid_argument("the walk needs n >= 2");
  ts.neighbors.resize(gt.size() * ts.degree);
  for (std::size_t x = 0; x < gt.size(); ++x) {
    std::uint32_t* out = ts.neighbors.data() + x * ts.degree;
    std::size_t d = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Transvection t{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)};
        const std::uint32_t y = gt.index_of(apply_transvection_key(gt.key(x), n, t));
        if (y == GroupTable::kAbsent) throw std::logic_error("transvection left the group");
        out[d++] = y;
      }
    }
    std::sort(out, out + ts.degree);
  }
  return ts;
}

bool is_symmetric(const TransitionStructure& ts) {
  for (std::size_t x = 0; x < ts.size(); ++x) {
    for (std::uint32_t y : ts.neighbors_of(x)) {
      auto back = ts.neighbors_of(y);
      if (!std::binary_search(back.begin(), back.end(), static_cast<std::uint32_t>(x))) return false;
    }
  }
  return true;
}

namespace {

// BFS 2-coloring; returns the number of states reached and whether an odd
// cycle was seen.
std::pair<std::size_t, bool> color_bfs(const TransitionStructure& ts) {
  std::vector<std::int8_t> color(ts.size(), -1);
  std::deque<std::uint32_t> queue{0};
  color[0] = 0;
  std::size_t reached = 1;
  bool odd_cycle = false;
  while (!queue.empty()) {
    const std::uint32_t x = queue.front();
    queue.pop_front();
    for (std::uint32_t y : ts.neighbors_of(x)) {
      if (color[y] < 0) {
        color[y] = static_cast<std::int8_t>(1 - color[x]);
        ++reached;
        queue.push_back(y);
      } else if (color[y] == color[x]) {
        odd_cycle = true;
      }
    }
  }
  return {reached, odd_cycle};
}

}  // namespace

bool is_connected(const TransitionStructure& ts) {
  return ts.size() > 0 && color_bfs(ts).first == ts.size();
}

int detect_period(const TransitionStructure& ts) { return color_bfs(ts).second ? 1 : 2; }

// ------------------------------------------------------------ distributions

void propagate(const TransitionStructure& ts, std::span<const double> in, std::span<double> out,
               bool lazy, std::size_t threads) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t size = ts.size();
  const std::size_t blocks = (size + kBlock - 1) / kBlock;
  const double p = ts.step_probability();
  parallel_for_blocks(blocks, threads, [&](std::size_t b) {
    const std::size_t end = std::min(size, (b + 1) * kBlock);
    for (std::size_t y = b * kBlock; y < end; ++y) {
      // P is symmetric, so pulling from neighbors equals pushing to them.
      double acc = 0;
      for (std::uint32_t x : ts.neighbors_of(y)) acc += in[x];
      acc *= p;
      out[y] = lazy ? 0.5 * in[y] + 0.5 * acc : acc;
    }
  });
}

namespace {

constexpr std::uint64_t kRenormalizeEvery = 64;

void renormalize(std::vector<double>& p) {
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
}

}  // namespace

DistVector distribution_at(const TransitionStructure& ts, std::uint64_t t, bool lazy,
                           std::uint32_t start, std::size_t threads) {
  if (start >= ts.size()) throw std::invalid_argument("start state out of range");
  DistVector d{std::vector<double>(ts.size(), 0.0), 0};
  d.p[start] = 1.0;
  std::vector<double> scratch(ts.size());
  for (std::uint64_t s = 1; s <= t; ++s) {
    propagate(ts, d.p, scratch, lazy, threads);
    d.p.swap(scratch);
    if (s % kRenormalizeEvery == 0) renormalize(d.p);
  }
  d.t = t;
  return d;
}

double tv_distance(const DistVector& d, const GroupTable& gt) {
  if (d.p.size() != gt.size()) throw std::invalid_argument("distribution does not match the table");
  const double u = gt.pi();
  double total = 0;
  for (double v : d.p) total += std::abs(v - u);
  return 0.5 * total;
}

double l2_distance(const DistVector& d, const GroupTable& gt) {
  if (d.p.size() != gt.size()) throw std::invalid_argument("distribution does not match the table");
  const double size = static_cast<double>(gt.size());
  double total = 0;
  for (double v : d.p) {
    const double density = v * size - 1.0;
    total += density * density;
  }
  return std::sqrt(total / size);
}

std::vector<CurvePoint> mixing_curve(const TransitionStructure& ts, const GroupTable& gt,
                                     std::uint64_t t_max, bool lazy, std::size_t threads) {
  std::vector<CurvePoint> curve;
  curve.reserve(t_max + 1);
  DistVector d = distribution_at(ts, 0, lazy, 0, threads);
  std::vector<double> scratch(ts.size());
  for (std::uint64_t t = 0;; ++t) {
    d.t = t;
    curve.push_back({t, tv_distance(d, gt), l2_distance(d, gt)});
    if (t == t_max) break;
    propagate(ts, d.p, scratch, lazy, threads);
    d.p.swap(scratch);
    if ((t + 1) % kRenormalizeEvery == 0) renormalize(d.p);
  }
  return curve;
}

MixingTimes mixing_times(const TransitionStructure& ts, const GroupTable& gt, double eps, bool lazy,
                         std::uint64_t t_limit, std::size_t threads) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
  MixingTimes result;
  result.lazy = lazy;
  result.periodic = detect_period(ts) == 2;
  if (result.periodic && !lazy) return result;

  DistVector d = distribution_at(ts, 0, lazy, 0, threads);
  std::vector<double> scratch(ts.size());
  for (std::uint64_t t = 0; t <= t_limit; ++t) {
    if (!result.t_tv && tv_distance(d, gt) <= eps) result.t_tv = t;
    if (!result.t_l2 && l2_distance(d, gt) <= eps) result.t_l2 = t;
    if (result.t_tv && result.t_l2) {
      result.converged = true;
      break;
    }
    propagate(ts, d.p, scratch, lazy, threads);
    d.p.swap(scratch);
    if ((t + 1) % kRenormalizeEvery == 0) renormalize(d.p);
  }
  return result;
}

}  // namespace tvwalk
