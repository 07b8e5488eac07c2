#pragma once

#include <cstdint>

namespace ccmm {

using Symbol = std::uint64_t;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Prime field GF(q). Residues are stored as uint64 in [0, q); q must be below 2^63.
class FieldSpec {
 public:
  static constexpr std::uint64_t kDefaultModulus = 2147483647ULL;

  explicit FieldSpec(std::uint64_t q = kDefaultModulus);

  std::uint64_t modulus() const noexcept { return q_; }

  Symbol reduce(std::uint64_t x) const noexcept { return x % q_; }
  Symbol add(Symbol a, Symbol b) const noexcept {
    Symbol s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Symbol sub(Symbol a, Symbol b) const noexcept { return a >= b ? a - b : a + (q_ - b); }
  Symbol neg(Symbol a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Symbol mul(Symbol a, Symbol b) const noexcept {
    return static_cast<Symbol>(static_cast<unsigned __int128>(a) * b % q_);
  }
  /// Multiplicative inverse; throws std::domain_error for zero.
  Symbol inv(Symbol a) const;
  /// Maps a signed integer to its residue.
  Symbol from_signed(std::int64_t v) const noexcept;

  bool operator==(const FieldSpec&) const = default;

 private:
  std::uint64_t q_;
};

}  // namespace ccmm
