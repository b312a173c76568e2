#pragma once

// The transvection walk: pick an ordered pair of distinct rows uniformly and
// add the source row to the target row, mod 2.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "tvwalk/gf2.hpp"
#include "tvwalk/random.hpp"

namespace tvwalk {

// Marker recorded for a lazy step that held in place.
inline constexpr Transvection kHeldStep{0xFFFF, 0xFFFF};
inline bool is_held(const Transvection& t) { return t == kHeldStep; }

inline constexpr std::size_t kMaxChainDim = 0xFFFF;

// Uniform ordered pair (target, source), target != source, from one uniform
// integer u in [0, n(n-1)): target = u / (n-1), source skips over target.
Transvection sample_transvection(std::size_t n, Rng& rng);

struct Step {
  BitMatrix state;
  Transvection move;
};

Step step(const BitMatrix& x, Rng& rng);

struct Trajectory {
  std::uint32_t n = 0;
  std::uint64_t seed = 0;
  bool lazy = false;
  std::vector<Transvection> moves;  // one entry per step, kHeldStep when held

  std::uint64_t steps() const { return moves.size(); }
  std::uint64_t active_moves() const;
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct RunResult {
  Trajectory trajectory;
  BitMatrix final_state;
};

// Starts at the identity and takes t steps. With lazy set, each step holds
// with probability 1/2 (a fair coin drawn before the move).
RunResult run(std::size_t n, std::uint64_t t, std::uint64_t seed, bool lazy);

// Same dynamics as run() without recording, drawing from the caller's stream.
void advance(BitMatrix& x, std::uint64_t t, bool lazy, Rng& rng);

BitMatrix replay(const Trajectory& trajectory);

// The chain restricted to the first k columns.
struct ProjectionState {
  std::size_t n = 0;
  std::size_t k = 0;
  BitMatrix cols;  // n x k
};

ProjectionState projection_start(std::size_t n, std::size_t k);
ProjectionState step_projection(const ProjectionState& s, Rng& rng);
void advance_projection(ProjectionState& s, std::uint64_t t, Rng& rng);

// "TVWK" file format: magic, version 0x01, n (u32 LE), t (u64 LE), lazy
// flag (u8), then t records of (target u16 LE, source u16 LE). The seed is
// not part of the format and reads back as 0.
void write_trajectory(std::ostream& out, const Trajectory& trajectory);
Trajectory read_trajectory(std::istream& in);
void save_trajectory(const std::filesystem::path& path, const Trajectory& trajectory);
Trajectory load_trajectory(const std::filesystem::path& path);

}  // namespace tvwalk
