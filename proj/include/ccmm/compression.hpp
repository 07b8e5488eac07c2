#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ccmm/matrix.hpp"
#include "ccmm/rational.hpp"

namespace ccmm {

struct DimTriple {
  std::size_t m = 0;  // outer rows
  std::size_t n = 0;  // inner dimension
  std::size_t p = 0;  // outer cols
  bool operator==(const DimTriple&) const = default;
};

/// Row-basis header of a compressed product. Travels beside the payload and is never summed or
/// counted as load.
struct PacketHeader {
  std::uint32_t rank = 0;
  std::vector<std::uint32_t> basis_rows;

  /// Wire size: u32 rank followed by one u32 per basis index.
  std::size_t byte_size() const noexcept { return 4 * (1 + basis_rows.size()); }
  bool operator==(const PacketHeader&) const = default;
};

/// A product m x p with inner dimension n, stored as basis rows A1 followed by the coefficients A2
/// of the remaining rows (ascending index order).
struct CompressedProduct {
  FieldSpec field;
  DimTriple dims;
  std::size_t rank = 0;
  std::vector<std::size_t> basis_row_indices;
  std::vector<Symbol> payload;
  std::size_t padded_length = 0;

  PacketHeader header() const;
};

/// Symbols needed to describe an m x p product of inner dimension n.
std::uint64_t f_len(const DimTriple& dims) noexcept;

/// g(alpha, beta): alpha + beta - 1 when both are at least 1, alpha * beta otherwise.
Rational g_ratio(const Rational& alpha, const Rational& beta);

/// Throws std::logic_error("inner-dimension contract violated") if rank exceeds min(n, m, p).
CompressedProduct compress_product(const FieldMatrix& product, std::size_t inner_dim);

/// Exact reconstruction. Symbols beyond the unpadded payload length are ignored.
FieldMatrix decompress_product(const CompressedProduct& cp);

/// Payload zero-padded to f(m, n, p).
std::vector<Symbol> packet_symbols(const CompressedProduct& cp);

/// Rebuilds a CompressedProduct from a received (possibly padded) packet and its header.
CompressedProduct from_packet(const FieldSpec& field, const DimTriple& dims, const PacketHeader& header,
                              std::vector<Symbol> symbols);

/// Convenience: compress then pad.
std::vector<Symbol> product_packet(const FieldMatrix& product, std::size_t inner_dim);

}  // namespace ccmm
