#include <gtest/gtest.h>

#include <stdexcept>

#include "ccmm/field.hpp"
#include "ccmm/rational.hpp"

using namespace ccmm;

TEST(Field, RejectsCompositeAndTinyModuli) {
  EXPECT_THROW(FieldSpec(1), std::invalid_argument);
  EXPECT_THROW(FieldSpec(15), std::invalid_argument);
  EXPECT_THROW(FieldSpec(2147483647ULL * 3), std::invalid_argument);
  EXPECT_NO_THROW(FieldSpec(2));
  EXPECT_NO_THROW(FieldSpec(7));
}

TEST(Field, PrimalityAgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool expect = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && expect; ++d) expect = n % d != 0;
    EXPECT_EQ(is_prime(n), expect) << n;
  }
  EXPECT_TRUE(is_prime(2147483647ULL));
  EXPECT_TRUE(is_prime(2305843009213693951ULL));  // 2^61 - 1
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Field, ArithmeticModSeven) {
  const FieldSpec f(7);
  EXPECT_EQ(f.add(5, 4), 2u);
  EXPECT_EQ(f.sub(2, 5), 4u);
  EXPECT_EQ(f.neg(3), 4u);
  EXPECT_EQ(f.neg(0), 0u);
  EXPECT_EQ(f.mul(4, 2), 1u);
  EXPECT_EQ(f.inv(3), 5u);
  EXPECT_EQ(f.from_signed(-1), 6u);
  EXPECT_THROW(f.inv(0), std::domain_error);
}

TEST(Field, InverseRoundTripsAtLargeModulus) {
  const FieldSpec f;
  for (Symbol x : {Symbol{1}, Symbol{2}, Symbol{12345}, Symbol{2147483646}}) {
    EXPECT_EQ(f.mul(x, f.inv(x)), 1u);
  }
  const FieldSpec big(2305843009213693951ULL);
  const Symbol x = 2305843009213693950ULL;
  EXPECT_EQ(big.mul(x, x), 1u);
  EXPECT_EQ(big.mul(x, big.inv(x)), 1u);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(to_string(Rational(2)), "2/1");
  EXPECT_EQ(to_string(Rational(16, 9)), "16/9");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_EQ(floor_of(Rational(-1, 2)), -1);
  EXPECT_EQ(ceil_of(Rational(7, 2)), 4);
}

TEST(Rational, BinomialConvention) {
  EXPECT_EQ(binom(4, 2), 6);
  EXPECT_EQ(binom(4, 5), 0);
  EXPECT_EQ(binom(4, -1), 0);
  EXPECT_EQ(binom(0, 0), 1);
  EXPECT_EQ(binom_u64(20, 10), 184756u);
}
