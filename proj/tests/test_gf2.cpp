#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "tvwalk/exact_group.hpp"
#include "tvwalk/gf2.hpp"
#include "tvwalk/random.hpp"

using namespace tvwalk;

namespace {

oracle::IntMatrix to_ints(const BitMatrix& x) {
  oracle::IntMatrix m(x.rows(), std::vector<int>(x.cols(), 0));
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) m[i][j] = x.get(i, j) ? 1 : 0;
  return m;
}

}  // namespace

TEST(BitVector, StringRoundTripAcrossWordBoundary) {
  std::string s(130, '0');
  s[0] = s[63] = s[64] = s[129] = '1';
  const BitVector v = BitVector::from_string(s);
  EXPECT_EQ(v.size(), 130u);
  EXPECT_EQ(v.popcount(), 4u);
  EXPECT_TRUE(v.get(64));
  EXPECT_FALSE(v.get(65));
  EXPECT_EQ(v.to_string(), s);
  EXPECT_THROW(BitVector::from_string("01x"), std::invalid_argument);
}

TEST(BitVector, XorAndFlip) {
  BitVector a = BitVector::from_string("1100");
  a ^= BitVector::from_string("1010");
  EXPECT_EQ(a.to_string(), "0110");
  a.flip(1);
  a.flip(2);
  EXPECT_TRUE(a.none());
}

TEST(Rank, MatchesNaiveEliminator) {
  Rng rng = make_rng(11);
  for (std::size_t rows : {1, 2, 5, 63, 64, 65, 70}) {
    for (std::size_t cols : {1, 3, 64, 65}) {
      for (int rep = 0; rep < 3; ++rep) {
        BitMatrix m = random_matrix(rows, cols, rng);
        // force some dependence
        if (rows > 2) m.set_row(rows - 1, m.row_vector(0));
        EXPECT_EQ(rank(m), static_cast<std::size_t>(oracle::naive_rank(to_ints(m)))) << rows << "x" << cols;
      }
    }
  }
  EXPECT_EQ(rank(BitMatrix(5, 5)), 0u);
  EXPECT_TRUE(is_invertible(BitMatrix::identity(200)));
  EXPECT_FALSE(is_invertible(BitMatrix(3, 4)));
}

TEST(Transvection, AddsSourceRowAndIsSelfInverse) {
  Rng rng = make_rng(3);
  const BitMatrix x = random_matrix(70, 70, rng);
  const Transvection t{5, 66};
  const BitMatrix y = apply_transvection(x, t);
  for (std::size_t j = 0; j < 70; ++j) {
    EXPECT_EQ(y.get(5, j), x.get(5, j) != x.get(66, j));
    EXPECT_EQ(y.get(6, j), x.get(6, j));
  }
  EXPECT_EQ(apply_transvection(y, t), x);

  BitVector v = random_vector(70, rng);
  const BitVector w = apply_transvection(v, t);
  EXPECT_EQ(w.get(5), v.get(5) != v.get(66));
  EXPECT_THROW(check_transvection({3, 3}, 4), std::invalid_argument);
  EXPECT_THROW(check_transvection({0, 4}, 4), std::invalid_argument);
  EXPECT_THROW(apply_transvection(x, Transvection{70, 0}), std::invalid_argument);
}

TEST(MatVec, MatchesNaiveProductAndCountsOps) {
  Rng rng = make_rng(5);
  const BitMatrix a = random_matrix(100, 100, rng);
  const BitVector x = random_vector(100, rng);
  const auto r = matvec(a, x);
  for (std::size_t i = 0; i < 100; ++i) {
    int s = 0;
    for (std::size_t j = 0; j < 100; ++j) s ^= (a.get(i, j) && x.get(j)) ? 1 : 0;
    EXPECT_EQ(r.y.get(i), s == 1);
  }
  EXPECT_EQ(r.ops.bit_ops, 100u * 100u);
  EXPECT_EQ(r.ops.word_ops, 100u * 2u);

  const BitMatrix big(1024, 1024);
  EXPECT_EQ(matvec(big, BitVector(1024)).ops.word_ops, 16384u);
}

TEST(Multiply, MatchesNaiveAndComposesWithMatVec) {
  Rng rng = make_rng(6);
  const BitMatrix a = random_matrix(33, 70, rng);
  const BitMatrix b = random_matrix(70, 12, rng);
  const BitMatrix c = multiply(a, b);
  EXPECT_EQ(to_ints(c), oracle::naive_multiply(to_ints(a), to_ints(b)));
  const BitVector x = random_vector(12, rng);
  EXPECT_EQ(matvec(c, x).y, matvec(a, matvec(b, x).y).y);
}

TEST(Keys, RowMajorLayoutAndRoundTrip) {
  const BitMatrix m = BitMatrix::from_rows({{0, 1, 0}, {0, 0, 0}, {1, 0, 0}});
  EXPECT_EQ(encode_key(m), (std::uint64_t{1} << 1) | (std::uint64_t{1} << 6));
  Rng rng = make_rng(8);
  for (std::size_t n = 1; n <= kMaxKeyDim; ++n) {
    const BitMatrix x = random_matrix(n, n, rng);
    EXPECT_EQ(decode_key(encode_key(x), n), x);
  }
  EXPECT_THROW(encode_key(BitMatrix(9, 9)), std::invalid_argument);
}

TEST(MatrixFile, ByteLayout) {
  const BitMatrix m = BitMatrix::from_rows({{1, 0, 1}, {0, 1, 0}, {0, 0, 1}});
  std::ostringstream out;
  write_matrix(out, m);
  const std::string bytes = out.str();
  const std::string expected = std::string("GF2M") + '\x01' + std::string("\x03\x00\x00\x00", 4) + '\x05' + '\x02' +
                               '\x04';
  EXPECT_EQ(bytes, expected);
}

TEST(MatrixFile, RoundTripAndRejectsCorruption) {
  Rng rng = make_rng(9);
  for (std::size_t n : {1, 7, 8, 9, 64, 65, 130}) {
    const BitMatrix x = random_matrix(n, n, rng);
    std::stringstream s;
    write_matrix(s, x);
    EXPECT_EQ(read_matrix(s), x);
  }
  std::stringstream bad("GF2X\x01");
  EXPECT_THROW(read_matrix(bad), std::runtime_error);

  std::stringstream full;
  write_matrix(full, BitMatrix::identity(16));
  std::string cut = full.str();
  cut.pop_back();
  std::stringstream truncated(cut);
  EXPECT_THROW(read_matrix(truncated), std::runtime_error);

  // stray bits beyond column n in the last byte of a row
  std::string stray = std::string("GF2M") + '\x01' + std::string("\x03\x00\x00\x00", 4) + '\x09' + '\x02' + '\x04';
  std::stringstream strays(stray);
  EXPECT_THROW(read_matrix(strays), std::runtime_error);
}

TEST(Sampler, UniformOverGL2) {
  // 6 elements, 60000 draws, chi-square with 5 degrees of freedom
  const GroupTable gt = enumerate_group(2);
  Rng rng = make_rng(21);
  std::vector<std::uint64_t> counts(gt.size(), 0);
  for (int i = 0; i < 60000; ++i) counts[gt.index_of(encode_key(sample_uniform_invertible(2, rng)))]++;
  const std::vector<double> probs(gt.size(), 1.0 / 6.0);
  EXPECT_LT(oracle::chi_square(counts, probs), oracle::chi_square_critical_001(5));
}

TEST(Sampler, AttemptsAreGeometricWithTheInvertibleFraction) {
  Rng rng = make_rng(22);
  double attempts = 0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const auto s = sample_uniform_invertible_counted(8, rng);
    EXPECT_TRUE(is_invertible(s.matrix));
    attempts += static_cast<double>(s.attempts);
  }
  const double p = invertible_fraction(8);
  const double mean = attempts / draws;
  const double sd = std::sqrt((1 - p) / (p * p) / draws);
  EXPECT_NEAR(mean, 1.0 / p, 4 * sd);
}

TEST(Random, UniformBelowIsUnbiased) {
  Rng rng = make_rng(1);
  std::vector<std::uint64_t> counts(6, 0);
  for (int i = 0; i < 60000; ++i) counts[uniform_below(rng, 6)]++;
  EXPECT_LT(oracle::chi_square(counts, std::vector<double>(6, 1.0 / 6)), oracle::chi_square_critical_001(5));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(make_rng(4, 2)(), make_rng(4, 2)());
}
