#include <gtest/gtest.h>

#include "ccmm/analysis.hpp"
#include "ccmm/compression.hpp"
#include "ccmm/subsets.hpp"

using namespace ccmm;
using namespace ccmm::analysis;

namespace {

Rational Q(long long n, long long d = 1) { return Rational(n, d); }

struct Cell {
  int K;
  int N;
  Rational a;
};

std::vector<Cell> matrix() {
  std::vector<Cell> out;
  for (int K : {2, 3, 4}) {
    for (int N : {4, 8, 20}) {
      for (const Rational& a : {Q(1, 10), Q(1, 2), Q(1), Q(2), Q(10)}) out.push_back({K, N, a});
    }
  }
  return out;
}

std::vector<Rational> grid(int N) {
  std::vector<Rational> out;
  for (int j = 0; j <= 40; ++j) out.push_back(Q(j) * N / 40);
  return out;
}

// Sum over block pairs (T1, T2) with T1 n T2 = V of width(T1) width(T2), widths in units of s.
// Valid for a <= 1, where every block product is stored uncompressed.
Rational enumerated_group_length(int K, int t, const Rational& alpha, const Rational& a, const UserSet& V) {
  std::vector<std::pair<UserSet, Rational>> blocks;
  if (binom(K, t) > 0 && alpha > 0) {
    for (const auto& T : combinations(K, t)) blocks.push_back({T, alpha * a / Rational(binom(K, t))});
  }
  if (binom(K, t + 1) > 0 && alpha < 1) {
    for (const auto& T : combinations(K, t + 1)) blocks.push_back({T, (1 - alpha) * a / Rational(binom(K, t + 1))});
  }
  Rational total = 0;
  for (const auto& [T1, w1] : blocks) {
    for (const auto& [T2, w2] : blocks) {
      if (intersect(T1, T2) == V) total += w1 * w2;
    }
  }
  return total;
}

}  // namespace

TEST(Envelope, Primitives) {
  const auto seg = lower_convex_envelope({{0, 4}, {2, 0}});
  EXPECT_EQ(seg.points.size(), 2u);
  EXPECT_EQ(seg.evaluate(1), Q(2));
  const auto collinear = lower_convex_envelope({{0, 2}, {1, 1}, {2, 0}});
  EXPECT_EQ(collinear.points.size(), 2u);
  const auto dent = lower_convex_envelope({{0, 4}, {1, 3}, {2, 0}});
  EXPECT_EQ(dent.points.size(), 2u);
  EXPECT_EQ(dent.evaluate(1), Q(2));
  EXPECT_THROW(seg.evaluate(3), std::out_of_range);
  EXPECT_THROW(seg.evaluate(-1), std::out_of_range);
}

TEST(Envelope, AgnosticCorners) {
  EXPECT_EQ(load_sa(2, 4, Q(1), 2), Q(7, 5));
  EXPECT_EQ(load_sa(4, 20, Q(1, 2), 10), Q(64, 21));
  const auto corners = load_sa_corners(3, 6, Q(1));
  EXPECT_EQ(corners.back().R, Q(0));
}

TEST(Partition, Values) {
  EXPECT_EQ(partition_for(4, 20, 10).t, 2);
  EXPECT_EQ(partition_for(4, 20, 10).alpha, Q(1));
  EXPECT_EQ(partition_for(3, 6, 3).t, 1);
  EXPECT_EQ(partition_for(3, 6, 3).alpha, Q(1, 2));
}

TEST(Loads, FixturesAtMemoryTen) {
  EXPECT_EQ(load_R1(4, 20, Q(1, 2), 10), Q(3));
  EXPECT_EQ(load_R1(4, 20, Q(1, 2), 20), Q(0));
  EXPECT_EQ(load_R1(4, 20, Q(1), 0), Q(4));
  EXPECT_EQ(load_R2(4, 20, Q(1, 2), 10), Q(8, 3));
  EXPECT_EQ(load_R2_corners(4, 20, Q(1)).front().R, Q(8));
  EXPECT_EQ(load_R2_corners(4, 20, Q(1)).back().R, Q(0));
  const auto row = load_Rrow(4, 20, Q(1, 2), 10);
  EXPECT_EQ(row.value, Q(2));
  EXPECT_EQ(row.ell, 2);
  EXPECT_EQ(row.per_ell, (std::vector<Rational>{4, 2, Q(40, 9), Q(20, 9)}));
  EXPECT_EQ(load_Rrow(4, 20, Q(1, 2), 20).value, Q(0));
  EXPECT_EQ(load_Rcol(4, 20, Q(1, 2), 10), Q(16, 9));
  EXPECT_EQ(load_Rcol(2, 4, Q(2), 2), Q(3, 4));
  EXPECT_EQ(load_Rcol(4, 20, Q(2), 20), Q(0));
}

TEST(GroupLength, Fixtures) {
  EXPECT_EQ(f_group_length(0, 4, 2, Q(1), Q(1, 2)), Q(1, 24));
  EXPECT_EQ(f_group_length(2, 4, 2, Q(1), Q(1, 2)), Q(1, 144));
}

TEST(GroupLength, MatchesEnumeration) {
  for (int K = 1; K <= 6; ++K) {
    for (int t = 0; t <= K; ++t) {
      for (const Rational& alpha : {Q(1), Q(1, 2), Q(1, 3)}) {
        for (const Rational& a : {Q(1), Q(1, 2), Q(1, 5)}) {
          for (int i = 0; i <= std::min(K - 1, t + 1); ++i) {
            UserSet V;
            for (int u = 2; u <= i + 1; ++u) V.push_back(u);  // knowers exclude user 1
            EXPECT_EQ(f_group_length(i, K, t, alpha, a), enumerated_group_length(K, t, alpha, a, V))
                << "K=" << K << " t=" << t << " alpha=" << alpha << " a=" << a << " i=" << i;
          }
        }
      }
    }
  }
}

TEST(Bounds, CutsetExamples) {
  EXPECT_EQ(cutset_bound(4, 20, Q(1), 1), Q(12, 5));
  EXPECT_EQ(cutset_bound(4, 20, Q(1), 20), Q(0));
  // N = 5 caps b at 2: 2 - 4 M / 2 at M = 1/4 beats b = 1.
  EXPECT_EQ(cutset_bound(4, 5, Q(1), Q(1, 4)), Q(3, 2));
  EXPECT_EQ(cutset_bound(4, 5, Q(1), 0), Q(2));
}

TEST(Bounds, GenieCorners) {
  const auto c = genie_converse_corners(4, 20, Q(1));
  const std::vector<LoadPoint> expect{{0, 4}, {5, Q(3, 2)}, {10, Q(2, 3)}, {15, Q(1, 4)}, {20, 0}};
  EXPECT_EQ(c, expect);
  EXPECT_THROW(genie_converse_corners(4, 20, Q(1, 2)), std::domain_error);
  EXPECT_THROW(genie_converse_corners(4, 6, Q(1)), std::domain_error);
  EXPECT_FALSE(genie_bound(4, 6, Q(2), 1).has_value());
}

TEST(Bounds, Trivial) {
  const auto b = trivial_bounds(2, 4, Q(1));
  EXPECT_EQ(b.M_zero, Q(4));
  EXPECT_EQ(b.R_cap, Q(2));
  // a < 2/(N+1): caching all products is cheaper than caching the library.
  EXPECT_EQ(trivial_bounds(2, 4, Q(1, 10)).M_zero, Q(10) * Q(1, 100) / Q(1, 10));
  EXPECT_EQ(trivial_bounds(100, 4, Q(2)).R_cap, Q(8, 3));
}

TEST(Orderings, RowBelowR2AndColBelowR1) {
  for (const auto& [K, N, a] : matrix()) {
    for (const Rational& M : grid(N)) {
      EXPECT_LE(load_Rrow(K, N, a, M).value, load_R2(K, N, a, M)) << K << " " << N << " " << a << " " << M;
      EXPECT_LE(load_Rcol(K, N, a, M), load_R1(K, N, a, M)) << K << " " << N << " " << a << " " << M;
    }
  }
}

TEST(Orderings, CutsetBelowEveryScheme) {
  for (const auto& [K, N, a] : matrix()) {
    for (const Rational& M : grid(N)) {
      const Rational c = cutset_bound(K, N, a, M);
      EXPECT_LE(c, load_sa(K, N, a, M));
      EXPECT_LE(c, load_R1(K, N, a, M));
      EXPECT_LE(c, load_R2(K, N, a, M));
      EXPECT_LE(c, load_Rrow(K, N, a, M).value);
      EXPECT_LE(c, load_Rcol(K, N, a, M));
    }
  }
}

TEST(Orderings, GenieSandwich) {
  for (const auto& [K, N, a] : matrix()) {
    if (!genie_applies(K, N, a)) continue;
    const auto r2 = load_R2_corners(K, N, a);
    const auto gc = genie_converse_corners(K, N, a);
    for (std::size_t t = 0; t < r2.size(); ++t) EXPECT_EQ(r2[t].R, 2 * gc[t].R);
    for (const Rational& M : grid(N)) {
      const Rational g = *genie_bound(K, N, a, M);
      const Rational row = load_Rrow(K, N, a, M).value;
      for (const Rational& achievable :
           {load_sa(K, N, a, M), load_R1(K, N, a, M), load_R2(K, N, a, M), row, load_Rcol(K, N, a, M)}) {
        EXPECT_LE(g, achievable);
      }
      EXPECT_LE(row, 2 * g);
      EXPECT_LE(load_R2(K, N, a, M), 2 * g);
    }
  }
}

TEST(Orderings, LargeRatioUncodedBaselineIsWorse) {
  // At a = 10 and small M the multi-request baseline beats the uncoded one.
  for (int j = 1; j <= 10; ++j) {
    const Rational M = Q(j, 2);
    EXPECT_LT(load_R2(4, 20, Q(10), M), load_R1(4, 20, Q(10), M)) << M;
  }
}
