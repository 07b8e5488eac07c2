#pragma once

#include <cstddef>
#include <span>

#include "ccmm/field.hpp"

namespace ccmm::kernels {

// C (m x p) = A (m x n) * B (n x p), all row-major, over GF(q).
// The serial version is the reference; the parallel one splits output rows across OpenMP threads
// and must produce identical results.
void matmul_serial(const FieldSpec& field, std::span<const Symbol> a, std::span<const Symbol> b,
                   std::span<Symbol> c, std::size_t m, std::size_t n, std::size_t p);
void matmul_parallel(const FieldSpec& field, std::span<const Symbol> a, std::span<const Symbol> b,
                     std::span<Symbol> c, std::size_t m, std::size_t n, std::size_t p);

// Work (m*n*p) above which mat_mul dispatches to the parallel kernel.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 18;

}  // namespace ccmm::kernels
