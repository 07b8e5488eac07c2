#include "ccmm/rational.hpp"

#include <stdexcept>

namespace ccmm {

namespace mp = boost::multiprecision;

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    return BigInt(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& x) {
  return mp::numerator(x).str() + "/" + mp::denominator(x).str();
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

bool is_integer(const Rational& x) { return mp::denominator(x) == 1; }

BigInt floor_of(const Rational& x) {
  BigInt n = mp::numerator(x), d = mp::denominator(x);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& x) { return -floor_of(-x); }

std::int64_t to_int64(const Rational& x) {
  if (!is_integer(x)) throw std::domain_error("value " + to_string(x) + " is not an integer");
  const BigInt n = mp::numerator(x);
  if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN)) throw std::domain_error("integer out of range");
  return n.convert_to<std::int64_t>();
}

BigInt binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || n < k) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

std::uint64_t binom_u64(std::int64_t n, std::int64_t k) {
  const BigInt b = binom(n, k);
  if (b > BigInt(UINT64_MAX)) throw std::overflow_error("binomial overflow");
  return b.convert_to<std::uint64_t>();
}

}  // namespace ccmm
