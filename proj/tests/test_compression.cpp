#include <gtest/gtest.h>

#include "ccmm/compression.hpp"
#include "ccmm/linalg.hpp"

using namespace ccmm;

namespace {

const FieldSpec BIG;

FieldMatrix product(std::size_t m, std::size_t n, std::size_t p, std::uint64_t seed, const FieldSpec& f = BIG) {
  return mat_mul(random_matrix(f, m, n, seed, 1), random_matrix(f, n, p, seed, 2));
}

}  // namespace

TEST(FLen, Examples) {
  EXPECT_EQ(f_len({3, 1, 3}), 5u);
  EXPECT_EQ(f_len({2, 4, 2}), 4u);
  EXPECT_EQ(f_len({4, 2, 4}), 12u);
  EXPECT_EQ(f_len({2, 1, 2}), 3u);
}

TEST(FLen, SymmetricAndBoundedByBothRepresentations) {
  for (std::size_t m = 1; m <= 16; ++m) {
    for (std::size_t n = 1; n <= 16; ++n) {
      for (std::size_t p = 1; p <= 16; ++p) {
        EXPECT_EQ(f_len({m, n, p}), f_len({p, n, m}));
        EXPECT_LE(f_len({m, n, p}), m * p);
        EXPECT_LE(f_len({m, n, p}), (m + p) * n);
      }
    }
  }
}

TEST(GRatio, Examples) {
  EXPECT_EQ(g_ratio(1, 1), Rational(1));
  EXPECT_EQ(g_ratio(Rational(1, 2), Rational(1, 2)), Rational(1, 4));
  EXPECT_EQ(g_ratio(2, 2), Rational(3));
}

TEST(GRatio, MatchesFLenPerSquareUnit) {
  // f(a s, s, b s) = s^2 g(a, b) for integral a s, b s.
  for (std::size_t s : {2u, 4u, 12u}) {
    for (std::size_t ra = 1; ra <= 3 * s; ++ra) {
      for (std::size_t rb = 1; rb <= 3 * s; ++rb) {
        const Rational a(static_cast<long long>(ra), static_cast<long long>(s));
        const Rational b(static_cast<long long>(rb), static_cast<long long>(s));
        EXPECT_EQ(Rational(static_cast<long long>(f_len({ra, s, rb}))),
                  g_ratio(a, b) * Rational(static_cast<long long>(s * s)));
      }
    }
  }
}

TEST(GRatio, ProductEntropyAtMostTwiceFactor) {
  for (int num = 1; num <= 60; ++num) {
    for (int den = 1; den <= 12; ++den) {
      const Rational a(num, den);
      EXPECT_LE(g_ratio(a, a) / a, Rational(2));
    }
  }
}

TEST(Compress, ZeroProduct) {
  const FieldMatrix zero(BIG, 3, 4);
  const auto cp = compress_product(zero, 2);
  EXPECT_EQ(cp.rank, 0u);
  EXPECT_TRUE(cp.payload.empty());
  EXPECT_EQ(cp.padded_length, f_len({3, 2, 4}));
  EXPECT_EQ(packet_symbols(cp), std::vector<Symbol>(f_len({3, 2, 4}), 0));
  EXPECT_EQ(decompress_product(cp), zero);
}

TEST(Compress, RankOneTwoByTwoSendsThreeSymbols) {
  const FieldSpec f(7);
  const auto p = mat_mul(FieldMatrix::from_rows(f, {{2}, {3}}), FieldMatrix::from_rows(f, {{1, 5}}));
  const auto cp = compress_product(p, 1);
  EXPECT_EQ(cp.rank, 1u);
  EXPECT_EQ(cp.payload.size(), 3u);
  EXPECT_EQ(cp.basis_row_indices, (std::vector<std::size_t>{0}));
  EXPECT_EQ(decompress_product(cp), p);
}

TEST(Compress, FullRankSquareIsUnpadded) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto cp = compress_product(product(5, 5, 5, seed), 5);
    EXPECT_EQ(cp.payload.size(), 25u);
    EXPECT_EQ(packet_symbols(cp), cp.payload);
  }
}

TEST(Compress, PayloadLayoutAndHeader) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t m = 2 + seed % 6, n = 1 + seed % 3, p = 3 + seed % 5;
    const auto cp = compress_product(product(m, n, p, seed), n);
    EXPECT_LE(cp.rank, std::min({n, m, p}));
    EXPECT_EQ(cp.payload.size(), cp.rank * p + (m - cp.rank) * cp.rank);
    EXPECT_EQ(cp.basis_row_indices.size(), cp.rank);
    EXPECT_TRUE(std::is_sorted(cp.basis_row_indices.begin(), cp.basis_row_indices.end()));
    const auto h = cp.header();
    EXPECT_EQ(h.rank, cp.rank);
    EXPECT_EQ(h.byte_size(), 4 * (1 + cp.rank));
  }
}

TEST(Compress, RoundTripAndDeterminism) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const std::size_t m = 1 + seed % 9, n = 1 + (seed / 3) % 7, p = 1 + (seed / 7) % 9;
    const auto prod = product(m, n, p, seed);
    const auto cp = compress_product(prod, n);
    EXPECT_EQ(decompress_product(cp), prod);
    EXPECT_EQ(product_packet(prod, n), packet_symbols(compress_product(prod, n)));
  }
}

TEST(Compress, SmallFieldRankDeficiencyStillRoundTrips) {
  const FieldSpec f2(2);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto prod = product(4, 3, 5, seed, f2);
    const auto cp = compress_product(prod, 3);
    EXPECT_LE(cp.payload.size(), f_len({4, 3, 5}));
    EXPECT_EQ(decompress_product(cp), prod);
  }
}

TEST(Compress, RejectsInnerDimensionViolation) {
  EXPECT_THROW(compress_product(FieldMatrix::identity(BIG, 3), 2), std::logic_error);
}

TEST(Packet, PaddingIsIgnored) {
  const auto prod = product(4, 2, 4, 11);
  const auto cp = compress_product(prod, 2);
  auto symbols = packet_symbols(cp);
  symbols.push_back(0);
  symbols.push_back(0);
  EXPECT_EQ(decompress_product(from_packet(BIG, {4, 2, 4}, cp.header(), symbols)), prod);
  symbols.resize(cp.payload.size() - 1);
  EXPECT_THROW(decompress_product(from_packet(BIG, {4, 2, 4}, cp.header(), symbols)), std::exception);
}

TEST(Packet, SumOfTwoPacketsSeparatesBySubtraction) {
  const auto x = product(4, 2, 4, 21);
  const auto y = product(4, 2, 4, 22);
  const auto px = product_packet(x, 2);
  const auto py = product_packet(y, 2);
  std::vector<Symbol> sum(px.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = BIG.add(px[i], py[i]);
  // A receiver knowing y regenerates its packet bit-exactly and cancels it.
  const auto regenerated = product_packet(y, 2);
  std::vector<Symbol> recovered(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) recovered[i] = BIG.sub(sum[i], regenerated[i]);
  EXPECT_EQ(decompress_product(from_packet(BIG, {4, 2, 4}, compress_product(x, 2).header(), recovered)), x);
}
