#include "ccmm/field.hpp"

#include <stdexcept>
#include <string>

namespace ccmm {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These twelve bases are sufficient for all n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec::FieldSpec(std::uint64_t q) : q_(q) {
  if (q >= (1ULL << 63)) throw std::invalid_argument("field modulus must be below 2^63");
  if (!is_prime(q)) throw std::invalid_argument("field modulus " + std::to_string(q) + " is not prime");
}

Symbol FieldSpec::inv(Symbol a) const {
  if (a % q_ == 0) throw std::domain_error("inverse of zero");
  // Extended Euclid on signed 128-bit to avoid overflow.
  __int128 t = 0, new_t = 1;
  __int128 r = q_, new_r = a % q_;
  while (new_r != 0) {
    __int128 quotient = r / new_r;
    __int128 tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q_;
  return static_cast<Symbol>(t);
}

Symbol FieldSpec::from_signed(std::int64_t v) const noexcept {
  if (v >= 0) return static_cast<std::uint64_t>(v) % q_;
  std::uint64_t m = (static_cast<std::uint64_t>(-(v + 1)) + 1) % q_;
  return m == 0 ? 0 : q_ - m;
}

}  // namespace ccmm
