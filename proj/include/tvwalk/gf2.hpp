#pragma once

// Word-packed vectors and matrices over GF(2).
//
// Bit b of a vector lives in word b / kWordBits at position b % kWordBits.
// Padding bits above the logical size are always zero, so equality and
// popcount can work on whole words.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tvwalk/random.hpp"

namespace tvwalk {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Operation counts for the protocol cost model. bit_ops counts GF(2)
// multiply-adds, word_ops the packed word operations actually issued.
struct OpCount {
  std::uint64_t bit_ops = 0;
  std::uint64_t word_ops = 0;
  friend bool operator==(const OpCount&, const OpCount&) = default;
};

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n);

  // Parses a string of '0'/'1' characters; character b is bit b.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const { return n_; }
  bool get(std::size_t b) const;
  void set(std::size_t b, bool value);
  void flip(std::size_t b);

  std::size_t popcount() const;
  bool none() const;

  BitVector& operator^=(const BitVector& other);

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Word> words_;
};

BitVector random_vector(std::size_t n, Rng& rng);

// Row-major bit matrix. The walk only ever uses square matrices; the
// rectangular form exists for the column-projection chain.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  explicit BitMatrix(std::size_t n) : BitMatrix(n, n) {}

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t n() const { return rows_; }
  bool is_square() const { return rows_ == cols_; }
  std::size_t words_per_row() const { return words_per_row_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);

  std::span<const Word> row(std::size_t r) const {
    return {data_.data() + r * words_per_row_, words_per_row_};
  }
  std::span<Word> row(std::size_t r) {
    return {data_.data() + r * words_per_row_, words_per_row_};
  }
  BitVector row_vector(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);

  // row[target] ^= row[source]
  void xor_row_into(std::size_t target, std::size_t source) {
    Word* dst = data_.data() + target * words_per_row_;
    const Word* src = data_.data() + source * words_per_row_;
    for (std::size_t w = 0; w < words_per_row_; ++w) dst[w] ^= src[w];
  }

  std::size_t popcount() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<Word> data_;
};

BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

// Left multiplication by I + E_{target,source}: adds row `source` to row
// `target`. Indices are 0-based and 16-bit, which caps n at 65535.
struct Transvection {
  std::uint16_t target = 0;
  std::uint16_t source = 0;
  friend bool operator==(const Transvection&, const Transvection&) = default;
};

// Throws std::invalid_argument on target == source or an index >= n.
void check_transvection(const Transvection& t, std::size_t n);

BitMatrix apply_transvection(const BitMatrix& x, Transvection t);
void apply_transvection_inplace(BitMatrix& x, Transvection t);
BitVector apply_transvection(const BitVector& v, Transvection t);
void apply_transvection_inplace(BitVector& v, Transvection t);

// Row rank by Gaussian elimination on a scratch copy.
std::size_t rank(const BitMatrix& x);
bool is_invertible(const BitMatrix& x);

struct InvertibleSample {
  BitMatrix matrix;
  std::uint64_t attempts = 0;
};

// Whole-matrix rejection sampling: exactly uniform on GL_n(F_2).
inline constexpr std::uint64_t kMaxRejectionAttempts = 1'000'000;
InvertibleSample sample_uniform_invertible_counted(std::size_t n, Rng& rng);
BitMatrix sample_uniform_invertible(std::size_t n, Rng& rng);

struct MatVecResult {
  BitVector y;
  OpCount ops;
};

// y_i = <row_i, v> mod 2. ops.word_ops = rows * words_per_row,
// ops.bit_ops = rows * cols.
MatVecResult matvec(const BitMatrix& x, const BitVector& v);

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

// Row-major packing: bit (i*n + j) of the key is entry (i, j).
inline constexpr std::size_t kMaxKeyDim = 8;
std::uint64_t encode_key(const BitMatrix& x);
BitMatrix decode_key(std::uint64_t key, std::size_t n);

// "GF2M" file format: magic, version 0x01, n as u32 LE, then ceil(n/8)
// bytes per row, LSB-first.
void write_matrix(std::ostream& out, const BitMatrix& x);
BitMatrix read_matrix(std::istream& in);
void save_matrix(const std::filesystem::path& path, const BitMatrix& x);
BitMatrix load_matrix(const std::filesystem::path& path);

}  // namespace tvwalk
