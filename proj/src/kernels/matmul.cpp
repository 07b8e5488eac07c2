#include <vector>

#include "ccmm/kernels.hpp"

namespace ccmm::kernels {
namespace {

using u128 = unsigned __int128;

// One output row. For q < 2^32 every product fits in 64 bits, so a 128-bit accumulator can absorb
// the whole inner sum before a single reduction.
void matmul_row(const FieldSpec& field, const Symbol* a_row, std::span<const Symbol> b, Symbol* c_row,
                std::size_t n, std::size_t p, std::vector<u128>& acc) {
  const std::uint64_t q = field.modulus();
  acc.assign(p, 0);
  if (q < (1ULL << 32)) {
    for (std::size_t k = 0; k < n; ++k) {
      const u128 x = a_row[k];
      if (x == 0) continue;
      const Symbol* b_row = b.data() + k * p;
      for (std::size_t j = 0; j < p; ++j) acc[j] += x * b_row[j];
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      const u128 x = a_row[k];
      if (x == 0) continue;
      const Symbol* b_row = b.data() + k * p;
      for (std::size_t j = 0; j < p; ++j) acc[j] = (acc[j] + x * b_row[j]) % q;
    }
  }
  for (std::size_t j = 0; j < p; ++j) c_row[j] = static_cast<Symbol>(acc[j] % q);
}

}  // namespace

void matmul_serial(const FieldSpec& field, std::span<const Symbol> a, std::span<const Symbol> b,
                   std::span<Symbol> c, std::size_t m, std::size_t n, std::size_t p) {
  std::vector<u128> acc;
  for (std::size_t i = 0; i < m; ++i) matmul_row(field, a.data() + i * n, b, c.data() + i * p, n, p, acc);
}

void matmul_parallel(const FieldSpec& field, std::span<const Symbol> a, std::span<const Symbol> b,
                     std::span<Symbol> c, std::size_t m, std::size_t n, std::size_t p) {
  const auto rows = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel
  {
    std::vector<u128> acc;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      const auto row = static_cast<std::size_t>(i);
      matmul_row(field, a.data() + row * n, b, c.data() + row * p, n, p, acc);
    }
  }
}

}  // namespace ccmm::kernels
