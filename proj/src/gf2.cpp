#include "tvwalk/gf2.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "binary_io.hpp"

namespace tvwalk {

namespace {

constexpr Word tail_mask(std::size_t bits) {
  const std::size_t r = bits % kWordBits;
  return r == 0 ? ~Word{0} : (Word{1} << r) - 1;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t n) : n_(n), words_(words_for(n), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t b = 0; b < bits.size(); ++b) {
    if (bits[b] == '1') {
      v.set(b, true);
    } else if (bits[b] != '0') {
      throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
  }
  return v;
}

bool BitVector::get(std::size_t b) const {
  return (words_[b / kWordBits] >> (b % kWordBits)) & 1U;
}

void BitVector::set(std::size_t b, bool value) {
  const Word mask = Word{1} << (b % kWordBits);
  if (value) {
    words_[b / kWordBits] |= mask;
  } else {
    words_[b / kWordBits] &= ~mask;
  }
}

void BitVector::flip(std::size_t b) { words_[b / kWordBits] ^= Word{1} << (b % kWordBits); }

std::size_t BitVector::popcount() const {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::none() const {
  for (Word w : words_) {
    if (w != 0) return false;
  }
  return true;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require(other.n_ == n_, "vector dimension mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t b = 0; b < n_; ++b) {
    if (get(b)) s[b] = '1';
  }
  return s;
}

BitVector random_vector(std::size_t n, Rng& rng) {
  BitVector v(n);
  auto words = v.words();
  for (Word& w : words) w = rng();
  if (!words.empty()) words.back() &= tail_mask(n);
  return v;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  BitMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    require(row.size() == c, "ragged matrix literal");
    std::size_t j = 0;
    for (int v : row) m.set(i, j++, v != 0);
    ++i;
  }
  return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  return (data_[r * words_per_row_ + c / kWordBits] >> (c % kWordBits)) & 1U;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  Word& w = data_[r * words_per_row_ + c / kWordBits];
  const Word mask = Word{1} << (c % kWordBits);
  w = value ? (w | mask) : (w & ~mask);
}

BitVector BitMatrix::row_vector(std::size_t r) const {
  BitVector v(cols_);
  auto src = row(r);
  std::copy(src.begin(), src.end(), v.words().begin());
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  require(v.size() == cols_, "row length mismatch");
  auto src = v.words();
  std::copy(src.begin(), src.end(), row(r).begin());
}

std::size_t BitMatrix::popcount() const {
  std::size_t total = 0;
  for (Word w : data_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m(rows, cols);
  const Word mask = tail_mask(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto words = m.row(r);
    for (Word& w : words) w = rng();
    if (!words.empty()) words.back() &= mask;
  }
  return m;
}

// ------------------------------------------------------------- transvections

void check_transvection(const Transvection& t, std::size_t n) {
  if (t.target == t.source) throw std::invalid_argument("transvection needs distinct rows");
  if (t.target >= n || t.source >= n) throw std::invalid_argument("transvection index out of range");
}

BitMatrix apply_transvection(const BitMatrix& x, Transvection t) {
  BitMatrix y = x;
  apply_transvection_inplace(y, t);
  return y;
}

void apply_transvection_inplace(BitMatrix& x, Transvection t) {
  check_transvection(t, x.rows());
  x.xor_row_into(t.target, t.source);
}

BitVector apply_transvection(const BitVector& v, Transvection t) {
  BitVector y = v;
  apply_transvection_inplace(y, t);
  return y;
}

void apply_transvection_inplace(BitVector& v, Transvection t) {
  check_transvection(t, v.size());
  if (v.get(t.source)) v.flip(t.target);
}

// --------------------------------------------------------------------- rank

std::size_t rank(const BitMatrix& x) {
  BitMatrix m = x;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const std::size_t word = c / kWordBits;
    const Word bit = Word{1} << (c % kWordBits);
    std::size_t pivot = r;
    while (pivot < m.rows() && (m.row(pivot)[word] & bit) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r) {
      auto a = m.row(pivot);
      auto b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m.row(i)[word] & bit) m.xor_row_into(i, r);
    }
    ++r;
  }
  return r;
}

bool is_invertible(const BitMatrix& x) { return x.is_square() && rank(x) == x.rows(); }

InvertibleSample sample_uniform_invertible_counted(std::size_t n, Rng& rng) {
  require(n >= 1, "dimension must be at least 1");
  for (std::uint64_t attempt = 1; attempt <= kMaxRejectionAttempts; ++attempt) {
    BitMatrix m = random_matrix(n, n, rng);
    if (is_invertible(m)) return {std::move(m), attempt};
  }
  throw std::runtime_error("rejection sampler exceeded its attempt cap");
}

BitMatrix sample_uniform_invertible(std::size_t n, Rng& rng) {
  return sample_uniform_invertible_counted(n, rng).matrix;
}

// ------------------------------------------------------------------ products

MatVecResult matvec(const BitMatrix& x, const BitVector& v) {
  require(x.cols() == v.size(), "matvec dimension mismatch");
  MatVecResult result{BitVector(x.rows()), {}};
  auto vw = v.words();
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto rw = x.row(i);
    Word acc = 0;
    for (std::size_t w = 0; w < rw.size(); ++w) acc ^= rw[w] & vw[w];
    if (std::popcount(acc) & 1) result.y.set(i, true);
  }
  result.ops.word_ops = static_cast<std::uint64_t>(x.rows()) * x.words_per_row();
  result.ops.bit_ops = static_cast<std::uint64_t>(x.rows()) * x.cols();
  return result;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  require(a.cols() == b.rows(), "multiply dimension mismatch");
  BitMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!a.get(i, k)) continue;
      auto in = b.row(k);
      for (std::size_t w = 0; w < out.size(); ++w) out[w] ^= in[w];
    }
  }
  return c;
}

// --------------------------------------------------------------------- keys

std::uint64_t encode_key(const BitMatrix& x) {
  require(x.is_square(), "key encoding needs a square matrix");
  const std::size_t n = x.n();
  if (n > kMaxKeyDim) throw std::invalid_argument("matrix too large for a 64-bit key");
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < n; ++i) {
    key |= static_cast<std::uint64_t>(x.row(i)[0]) << (i * n);
  }
  return key;
}

BitMatrix decode_key(std::uint64_t key, std::size_t n) {
  if (n > kMaxKeyDim) throw std::invalid_argument("matrix too large for a 64-bit key");
  BitMatrix x(n);
  const std::uint64_t mask = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
  for (std::size_t i = 0; i < n; ++i) x.row(i)[0] = (key >> (i * n)) & mask;
  if (n * n < 64 && (key >> (n * n)) != 0) throw std::invalid_argument("key has bits beyond n*n");
  return x;
}

// ----------------------------------------------------------------- file I/O

void write_matrix(std::ostream& out, const BitMatrix& x) {
  require(x.is_square(), "GF2M stores square matrices");
  const std::size_t n = x.n();
  out.write("GF2M", 4);
  detail::write_le<std::uint8_t>(out, 0x01);
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(n));
  const std::size_t bytes_per_row = (n + 7) / 8;
  std::string buf(bytes_per_row, '\0');
  for (std::size_t i = 0; i < n; ++i) {
    auto words = x.row(i);
    for (std::size_t b = 0; b < bytes_per_row; ++b) {
      buf[b] = static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xFF);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw std::runtime_error("failed writing matrix");
}

BitMatrix read_matrix(std::istream& in) {
  detail::expect_magic(in, "GF2M", 0x01);
  const auto n = detail::read_le<std::uint32_t>(in);
  const std::size_t bytes_per_row = (n + 7) / 8;
  BitMatrix x(n);
  std::string buf(bytes_per_row, '\0');
  const Word mask = tail_mask(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!in) throw std::runtime_error("truncated matrix file");
    auto words = x.row(i);
    for (std::size_t b = 0; b < bytes_per_row; ++b) {
      words[b / 8] |= static_cast<Word>(static_cast<unsigned char>(buf[b])) << (8 * (b % 8));
    }
    if (!words.empty() && (words.back() & ~mask) != 0) throw std::runtime_error("nonzero padding bits in matrix file");
  }
  return x;
}

void save_matrix(const std::filesystem::path& path, const BitMatrix& x) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_matrix(out, x);
}

BitMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_matrix(in);
}

}  // namespace tvwalk
