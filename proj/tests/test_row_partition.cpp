#include <gtest/gtest.h>

#include "ccmm/analysis.hpp"
#include "ccmm/schemes/row_partition.hpp"

using namespace ccmm;

namespace {

ProblemInstance k4_n20() { return {4, 20, 12, 6, FieldSpec(), 10}; }

}  // namespace

TEST(RowLayout, FourGroupsOfSixBlocks) {
  const auto lay = row_layout(k4_n20(), 4);
  EXPECT_EQ(lay.t, 2);
  EXPECT_EQ(lay.alpha, Rational(1));
  EXPECT_EQ(lay.tier1_sets.size(), 6u);
  EXPECT_EQ(lay.tier1_block_rows, 2u);
  std::size_t covered = 0;
  for (const auto& T : lay.tier1_sets) {
    const auto [first, count] = lay.rows_of(T);
    EXPECT_EQ(first, covered);
    covered += count;
  }
  EXPECT_EQ(covered, 12u);
}

TEST(RowLayout, TwoGroupsCacheByPosition) {
  const auto p = k4_n20();
  const auto lay = row_layout(p, 2);
  EXPECT_EQ(lay.t, 1);
  EXPECT_EQ(lay.tier1_sets, (std::vector<UserSet>{{1}, {2}}));
  EXPECT_EQ(lay.tier1_block_rows, 6u);
  EXPECT_EQ(mod_position(1, 2), 1);
  EXPECT_EQ(mod_position(3, 2), 1);
  EXPECT_EQ(mod_position(4, 2), 2);

  const auto caches = RowScheme(2).place(p, build_library(p, 1));
  const SegmentLabel block1{SegmentKind::raw_rows, 7, 0, {1}};
  const SegmentLabel block2{SegmentKind::raw_rows, 7, 0, {2}};
  EXPECT_TRUE(caches.user(1).has(block1));
  EXPECT_TRUE(caches.user(3).has(block1));
  EXPECT_FALSE(caches.user(1).has(block2));
  EXPECT_TRUE(caches.user(4).has(block2));
}

TEST(RowLayout, SingleGroupFullMemoryCachesEverything) {
  const ProblemInstance p{2, 4, 2, 2, FieldSpec(), 4};
  const auto res = run_scheme(RowScheme(1), p, 1, worst_case_demands(p).demands);
  for (const auto& uc : res.caches.users) EXPECT_EQ(uc.symbol_count(), 16u);
  EXPECT_TRUE(res.transcript.messages.empty());
}

TEST(RowLayout, RejectsIndivisibleRows) {
  const ProblemInstance p{4, 20, 8, 4, FieldSpec(), 10};
  EXPECT_THROW(row_layout(p, 4), ValidationError);  // s/6 is not an integer
  EXPECT_THROW(row_layout(k4_n20(), 5), ValidationError);
}

TEST(RowScheme, LoadsPerEllAtK4N20) {
  const auto p = k4_n20();
  const auto d = worst_case_demands(p).demands;
  const std::vector<Rational> expected{4, 2, Rational(40, 9), Rational(20, 9)};
  for (int ell = 1; ell <= 4; ++ell) {
    const auto res = run_scheme(RowScheme(ell), p, 3, d);
    EXPECT_TRUE(verify_retrieval(p, res.library, d, res.decoded)) << ell;
    EXPECT_EQ(res.load.load, expected[static_cast<std::size_t>(ell - 1)]) << ell;
    EXPECT_EQ(RowScheme(ell).closed_form_load(p), expected[static_cast<std::size_t>(ell - 1)]);
  }
  EXPECT_EQ(best_ell(p), std::make_pair(2, Rational(2)));
}

TEST(RowScheme, MessageShapesAtK4N20) {
  const auto p = k4_n20();
  const auto d = worst_case_demands(p).demands;

  const auto two = run_scheme(RowScheme(2), p, 1, d);
  ASSERT_EQ(two.transcript.messages.size(), 2u);
  EXPECT_EQ(two.transcript.messages[0].tag.users, (UserSet{1, 2}));
  EXPECT_EQ(two.transcript.payload_symbols(), 2 * f_len({6, 6, 6}));

  const auto four = run_scheme(RowScheme(4), p, 1, d);
  ASSERT_EQ(four.transcript.messages.size(), 4u);
  EXPECT_EQ(four.transcript.payload_symbols(), 80u);  // 5 s^2 / 9
  const Message& m123 = four.transcript.find({"row", 1, 1, {1, 2, 3}});
  EXPECT_EQ(m123.headers.size(), 3u);
  EXPECT_EQ(m123.payload.size(), f_len({6, 2, 6}));
}

TEST(RowScheme, TwoUserRankOnePacketIsThreeSymbols) {
  const ProblemInstance p{2, 4, 2, 2, FieldSpec(), 2};
  const auto d = worst_case_demands(p).demands;
  const auto res = run_scheme(RowScheme(2), p, 1, d);
  ASSERT_EQ(res.transcript.messages.size(), 1u);
  EXPECT_EQ(res.transcript.messages[0].payload.size(), 3u);
  EXPECT_TRUE(verify_retrieval(p, res.library, d, res.decoded));
}

TEST(RowScheme, SingleUserUnicast) {
  const ProblemInstance p{1, 2, 3, 2, FieldSpec(), 0};
  const auto d = worst_case_demands(p).demands;
  const auto res = run_scheme(RowScheme(1), p, 1, d);
  EXPECT_EQ(res.transcript.payload_symbols(), p.B());
  EXPECT_TRUE(verify_retrieval(p, res.library, d, res.decoded));
}

TEST(RowScheme, PartialLastGroup) {
  // K = 3 users in groups of 2: the second group has an absent slot.
  const ProblemInstance p{3, 6, 4, 4, FieldSpec(), 3};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto d = random_demands(p, seed);
    const auto res = run_scheme(RowScheme(2), p, seed, d);
    EXPECT_TRUE(verify_retrieval(p, res.library, d, res.decoded));
    EXPECT_EQ(res.load.load, RowScheme(2).closed_form_load(p));
  }
}

TEST(RowScheme, TransposedDemandsAndRepeats) {
  const auto p = k4_n20();
  DemandVector d{normalize_demand(2, 1), normalize_demand(2, 1), normalize_demand(5, 5), normalize_demand(20, 3)};
  for (int ell = 1; ell <= 4; ++ell) {
    const auto res = run_scheme(RowScheme(ell), p, 9, d);
    EXPECT_TRUE(verify_retrieval(p, res.library, d, res.decoded)) << ell;
  }
}

TEST(RowScheme, PacketsAreRegeneratedBitExactly) {
  const auto p = k4_n20();
  const auto lib = build_library(p, 4);
  const auto a = row_partial_product(lib(1).block(0, 6, 0, 6), lib(2).block(0, 6, 0, 6));
  const auto b = row_partial_product(lib(1).block(0, 6, 0, 6), lib(2).block(0, 6, 0, 6));
  EXPECT_EQ(packet_symbols(a), packet_symbols(b));
  EXPECT_EQ(a.header(), b.header());
}

TEST(BestEll, Extremes) {
  const ProblemInstance full{4, 20, 12, 6, FieldSpec(), 20};
  EXPECT_EQ(best_ell(full).second, Rational(0));
  const auto zero = analysis::load_Rrow(4, 20, Rational(1, 2), 0);
  EXPECT_EQ(zero.per_ell[0], Rational(4));
}
