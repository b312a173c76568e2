#include "tvwalk/protocol.hpp"

#include <limits>
#include <stdexcept>

#include "tvwalk/parallel.hpp"

namespace tvwalk {

KeyPair keygen(std::size_t n, std::uint64_t t, std::uint64_t seed, bool lazy) {
  RunResult r = run(n, t, seed, lazy);
  return {std::move(r.final_state), std::move(r.trajectory), t};
}

std::vector<KeyPair> keygen_batch(std::size_t n, std::uint64_t t, std::span<const std::uint64_t> seeds,
                                  std::size_t threads) {
  std::vector<KeyPair> keys(seeds.size());
  parallel_for_blocks(seeds.size(), threads, [&](std::size_t i) { keys[i] = keygen(n, t, seeds[i]); });
  return keys;
}

Challenge random_challenge(std::size_t n, Rng& rng) { return {random_vector(n, rng)}; }

Response respond_honest(const Trajectory& secret, const Challenge& c) {
  if (c.x.size() != secret.n) throw std::invalid_argument("challenge length does not match the key");
  Response r{c.x, {}, Role::Honest};
  for (const Transvection& move : secret.moves) {
    if (is_held(move)) continue;
    if (r.y.get(move.source)) r.y.flip(move.target);
    ++r.ops.bit_ops;
    ++r.ops.word_ops;
  }
  return r;
}

Response respond_dishonest(const BitMatrix& public_key, const Challenge& c) {
  if (c.x.size() != public_key.cols()) throw std::invalid_argument("challenge length does not match the key");
  MatVecResult mv = matvec(public_key, c.x);
  return {std::move(mv.y), mv.ops, Role::Dishonest};
}

Verdict verify(const BitMatrix& public_key, const Challenge& c, const Response& r, std::uint64_t deadline_ops) {
  if (c.x.size() != public_key.cols() || r.y.size() != public_key.rows()) return Verdict::Reject;
  const bool correct = matvec(public_key, c.x).y == r.y;
  const bool in_time = r.ops.bit_ops <= deadline_ops;
  return correct && in_time ? Verdict::Accept : Verdict::Reject;
}

SeparationRow separation_report(std::size_t n, std::uint64_t t, std::size_t word_bits) {
  if (word_bits == 0) throw std::invalid_argument("word width must be positive");
  SeparationRow row;
  row.n = n;
  row.honest_bit_ops = t;
  row.dishonest_bit_ops = static_cast<std::uint64_t>(n) * n;
  row.dishonest_word_ops = static_cast<std::uint64_t>(n) * ((n + word_bits - 1) / word_bits);
  row.ratio = t == 0 ? std::numeric_limits<double>::infinity()
                     : static_cast<double>(row.dishonest_bit_ops) / static_cast<double>(t);
  return row;
}

}  // namespace tvwalk
