#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace ccmm {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Parses "n", "-n" or "n/d".
Rational parse_rational(std::string_view text);

/// Always "num/den", e.g. "2/1".
std::string to_string(const Rational& x);

double to_double(const Rational& x);

bool is_integer(const Rational& x);

BigInt floor_of(const Rational& x);
BigInt ceil_of(const Rational& x);

/// Exact conversion; throws std::domain_error if x is not an integer or out of range.
std::int64_t to_int64(const Rational& x);

/// Binomial coefficient with C(x, y) = 0 whenever y < 0, x < 0 or x < y.
BigInt binom(std::int64_t n, std::int64_t k);

/// Same convention, as a machine integer; throws on overflow.
std::uint64_t binom_u64(std::int64_t n, std::int64_t k);

}  // namespace ccmm
