#include "tvwalk/chain.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "binary_io.hpp"

namespace tvwalk {

Transvection sample_transvection(std::size_t n, Rng& rng) {
  const std::uint64_t u = uniform_below(rng, static_cast<std::uint64_t>(n) * (n - 1));
  const auto target = static_cast<std::uint16_t>(u / (n - 1));
  auto source = static_cast<std::uint16_t>(u % (n - 1));
  if (source >= target) ++source;
  return {target, source};
}

Step step(const BitMatrix& x, Rng& rng) {
  if (!x.is_square()) throw std::invalid_argument("walk state must be square");
  if (x.n() < 2) throw std::invalid_argument("the walk needs n >= 2");
  const Transvection move = sample_transvection(x.n(), rng);
  return {apply_transvection(x, move), move};
}

std::uint64_t Trajectory::active_moves() const {
  return static_cast<std::uint64_t>(
      std::count_if(moves.begin(), moves.end(), [](const Transvection& t) { return !is_held(t); }));
}

namespace {

void check_dim(std::size_t n) {
  if (n < 2) throw std::invalid_argument("the walk needs n >= 2");
  if (n > kMaxChainDim) throw std::invalid_argument("n exceeds the 16-bit move encoding");
}

}  // namespace

RunResult run(std::size_t n, std::uint64_t t, std::uint64_t seed, bool lazy) {
  check_dim(n);
  Rng rng = make_rng(seed);
  RunResult result{{static_cast<std::uint32_t>(n), seed, lazy, {}}, BitMatrix::identity(n)};
  result.trajectory.moves.reserve(t);
  for (std::uint64_t s = 0; s < t; ++s) {
    if (lazy && fair_coin(rng)) {
      result.trajectory.moves.push_back(kHeldStep);
      continue;
    }
    const Transvection move = sample_transvection(n, rng);
    result.final_state.xor_row_into(move.target, move.source);
    result.trajectory.moves.push_back(move);
  }
  return result;
}

void advance(BitMatrix& x, std::uint64_t t, bool lazy, Rng& rng) {
  check_dim(x.n());
  for (std::uint64_t s = 0; s < t; ++s) {
    if (lazy && fair_coin(rng)) continue;
    const Transvection move = sample_transvection(x.n(), rng);
    x.xor_row_into(move.target, move.source);
  }
}

BitMatrix replay(const Trajectory& trajectory) {
  BitMatrix x = BitMatrix::identity(trajectory.n);
  for (const Transvection& move : trajectory.moves) {
    if (is_held(move)) continue;
    apply_transvection_inplace(x, move);
  }
  return x;
}

ProjectionState projection_start(std::size_t n, std::size_t k) {
  check_dim(n);
  if (k < 1 || k > n) throw std::invalid_argument("projection needs 1 <= k <= n");
  ProjectionState s{n, k, BitMatrix(n, k)};
  for (std::size_t c = 0; c < k; ++c) s.cols.set(c, c, true);
  return s;
}

ProjectionState step_projection(const ProjectionState& s, Rng& rng) {
  ProjectionState next = s;
  advance_projection(next, 1, rng);
  return next;
}

void advance_projection(ProjectionState& s, std::uint64_t t, Rng& rng) {
  if (s.k < 1) throw std::invalid_argument("projection needs k >= 1");
  for (std::uint64_t step_index = 0; step_index < t; ++step_index) {
    const Transvection move = sample_transvection(s.n, rng);
    s.cols.xor_row_into(move.target, move.source);
  }
}

// --------------------------------------------------------------------- I/O

void write_trajectory(std::ostream& out, const Trajectory& trajectory) {
  out.write("TVWK", 4);
  detail::write_le<std::uint8_t>(out, 0x01);
  detail::write_le<std::uint32_t>(out, trajectory.n);
  detail::write_le<std::uint64_t>(out, trajectory.moves.size());
  detail::write_le<std::uint8_t>(out, trajectory.lazy ? 1 : 0);
  for (const Transvection& move : trajectory.moves) {
    detail::write_le<std::uint16_t>(out, move.target);
    detail::write_le<std::uint16_t>(out, move.source);
  }
  if (!out) throw std::runtime_error("failed writing trajectory");
}

Trajectory read_trajectory(std::istream& in) {
  detail::expect_magic(in, "TVWK", 0x01);
  Trajectory trajectory;
  trajectory.n = detail::read_le<std::uint32_t>(in);
  const auto t = detail::read_le<std::uint64_t>(in);
  const auto lazy = detail::read_le<std::uint8_t>(in);
  if (lazy > 1) throw std::runtime_error("bad laziness flag");
  trajectory.lazy = lazy == 1;
  for (std::uint64_t s = 0; s < t; ++s) {
    Transvection move{detail::read_le<std::uint16_t>(in), detail::read_le<std::uint16_t>(in)};
    if (is_held(move)) {
      if (!trajectory.lazy) throw std::runtime_error("held step in a non-lazy trajectory");
    } else {
      check_transvection(move, trajectory.n);
    }
    trajectory.moves.push_back(move);
  }
  return trajectory;
}

void save_trajectory(const std::filesystem::path& path, const Trajectory& trajectory) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_trajectory(out, trajectory);
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_trajectory(in);
}

}  // namespace tvwalk
