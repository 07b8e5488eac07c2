#include "ccmm/compression.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ccmm/linalg.hpp"

namespace ccmm {
namespace {

std::size_t unpadded_length(const DimTriple& d, std::size_t rank) { return rank * d.p + (d.m - rank) * rank; }

}  // namespace

PacketHeader CompressedProduct::header() const {
  PacketHeader h;
  h.rank = static_cast<std::uint32_t>(rank);
  h.basis_rows.assign(basis_row_indices.begin(), basis_row_indices.end());
  return h;
}

std::uint64_t f_len(const DimTriple& d) noexcept {
  const std::uint64_t k = std::min({d.n, d.m, d.p});
  return (d.m + d.p - k) * k;
}

Rational g_ratio(const Rational& alpha, const Rational& beta) {
  if (alpha >= 1 && beta >= 1) return alpha + beta - 1;
  return alpha * beta;
}

CompressedProduct compress_product(const FieldMatrix& product, std::size_t inner_dim) {
  CompressedProduct cp;
  cp.field = product.field();
  cp.dims = {product.rows(), inner_dim, product.cols()};
  cp.padded_length = f_len(cp.dims);
  cp.basis_row_indices = row_basis(product);
  cp.rank = cp.basis_row_indices.size();
  if (cp.rank > std::min({inner_dim, product.rows(), product.cols()})) {
    throw std::logic_error("inner-dimension contract violated");
  }
  std::vector<std::size_t> others;
  for (std::size_t i = 0, b = 0; i < product.rows(); ++i) {
    if (b < cp.rank && cp.basis_row_indices[b] == i) {
      ++b;
    } else {
      others.push_back(i);
    }
  }
  const FieldMatrix a1 = product.select_rows(cp.basis_row_indices);
  cp.payload = a1.entries();
  if (cp.rank > 0 && !others.empty()) {
    const FieldMatrix a2 = solve_row_coefficients(a1, product.select_rows(others));
    cp.payload.insert(cp.payload.end(), a2.entries().begin(), a2.entries().end());
  }
  return cp;
}

FieldMatrix decompress_product(const CompressedProduct& cp) {
  const DimTriple& d = cp.dims;
  if (cp.rank > std::min(d.m, d.p) || cp.basis_row_indices.size() != cp.rank) {
    throw std::invalid_argument("malformed compressed product header");
  }
  const std::size_t need = unpadded_length(d, cp.rank);
  if (cp.payload.size() < need) {
    throw std::invalid_argument("malformed payload length: have " + std::to_string(cp.payload.size()) +
                                ", need " + std::to_string(need));
  }
  FieldMatrix out(cp.field, d.m, d.p);
  if (cp.rank == 0) return out;
  const auto a1_end = cp.payload.begin() + static_cast<std::ptrdiff_t>(cp.rank * d.p);
  const FieldMatrix a1(cp.field, cp.rank, d.p, std::vector<Symbol>(cp.payload.begin(), a1_end));
  const std::size_t others = d.m - cp.rank;
  const FieldMatrix a2(cp.field, others, cp.rank,
                       std::vector<Symbol>(a1_end, a1_end + static_cast<std::ptrdiff_t>(others * cp.rank)));
  const FieldMatrix rest = mat_mul(a2, a1);
  for (std::size_t i = 0, b = 0, o = 0; i < d.m; ++i) {
    if (b < cp.rank && cp.basis_row_indices[b] == i) {
      for (std::size_t j = 0; j < d.p; ++j) out(i, j) = a1(b, j);
      ++b;
    } else {
      if (i >= d.m || o >= others) throw std::invalid_argument("malformed basis row indices");
      for (std::size_t j = 0; j < d.p; ++j) out(i, j) = rest(o, j);
      ++o;
    }
  }
  return out;
}

std::vector<Symbol> packet_symbols(const CompressedProduct& cp) {
  std::vector<Symbol> out = cp.payload;
  out.resize(std::max(cp.padded_length, out.size()), 0);
  return out;
}

CompressedProduct from_packet(const FieldSpec& field, const DimTriple& dims, const PacketHeader& header,
                              std::vector<Symbol> symbols) {
  CompressedProduct cp;
  cp.field = field;
  cp.dims = dims;
  cp.rank = header.rank;
  cp.basis_row_indices.assign(header.basis_rows.begin(), header.basis_rows.end());
  if (cp.basis_row_indices.size() != cp.rank) throw std::invalid_argument("header rank mismatch");
  for (std::size_t b = 0; b < cp.rank; ++b) {
    if (cp.basis_row_indices[b] >= dims.m || (b > 0 && cp.basis_row_indices[b] <= cp.basis_row_indices[b - 1])) {
      throw std::invalid_argument("malformed basis row indices");
    }
  }
  cp.padded_length = f_len(dims);
  cp.payload = std::move(symbols);
  return cp;
}

std::vector<Symbol> product_packet(const FieldMatrix& product, std::size_t inner_dim) {
  return packet_symbols(compress_product(product, inner_dim));
}

}  // namespace ccmm
