#pragma once

// Time-based authentication on top of the walk. The prover's public key is
// A_t, the state after t steps from the identity; the secret is the list of
// moves. The honest prover answers a challenge x with A_t x by replaying the
// moves on x (one bit update per move); a party holding only A_t falls back
// to a matrix-vector product. "Fast enough" is an operation-count deadline.

#include <cstdint>
#include <span>
#include <vector>

#include "tvwalk/chain.hpp"
#include "tvwalk/gf2.hpp"

namespace tvwalk {

struct KeyPair {
  BitMatrix public_key;
  Trajectory secret;
  std::uint64_t t = 0;
};

struct Challenge {
  BitVector x;
};

enum class Role { Honest, Dishonest };

struct Response {
  BitVector y;
  OpCount ops;
  Role role = Role::Honest;
};

enum class Verdict { Accept, Reject };

KeyPair keygen(std::size_t n, std::uint64_t t, std::uint64_t seed, bool lazy = false);

// One key per seed; each key depends only on its own seed.
std::vector<KeyPair> keygen_batch(std::size_t n, std::uint64_t t, std::span<const std::uint64_t> seeds,
                                  std::size_t threads);

Challenge random_challenge(std::size_t n, Rng& rng);

// Replays the secret moves on x. Held lazy steps cost nothing.
Response respond_honest(const Trajectory& secret, const Challenge& c);
inline Response respond_honest(const KeyPair& kp, const Challenge& c) { return respond_honest(kp.secret, c); }

Response respond_dishonest(const BitMatrix& public_key, const Challenge& c);

// Accept iff r.y == A_t x and r.ops.bit_ops <= deadline_ops.
Verdict verify(const BitMatrix& public_key, const Challenge& c, const Response& r, std::uint64_t deadline_ops);

struct SeparationRow {
  std::size_t n = 0;
  std::uint64_t honest_bit_ops = 0;
  std::uint64_t dishonest_bit_ops = 0;
  std::uint64_t dishonest_word_ops = 0;
  double ratio = 0;  // dishonest / honest bit-ops; infinite when t = 0
};

SeparationRow separation_report(std::size_t n, std::uint64_t t, std::size_t word_bits = kWordBits);

}  // namespace tvwalk
