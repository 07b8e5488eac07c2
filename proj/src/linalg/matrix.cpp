#include "ccmm/matrix.hpp"

#include <stdexcept>
#include <string>

namespace ccmm {
namespace {

void require_same_field(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("field mismatch");
}

}  // namespace

FieldMatrix::FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Symbol> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("matrix entry count " + std::to_string(entries_.size()) + " does not match " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (Symbol v : entries_) {
    if (v >= field_.modulus()) throw std::invalid_argument("matrix entry not reduced modulo q");
  }
}

FieldMatrix FieldMatrix::identity(FieldSpec field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FieldMatrix FieldMatrix::from_rows(FieldSpec field,
                                   std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
  std::vector<Symbol> entries;
  entries.reserve(nr * nc);
  for (const auto& row : rows) {
    if (row.size() != nc) throw std::invalid_argument("ragged row literal");
    for (std::int64_t v : row) entries.push_back(field.from_signed(v));
  }
  return FieldMatrix(field, nr, nc, std::move(entries));
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

FieldMatrix FieldMatrix::block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block exceeds matrix bounds");
  FieldMatrix b(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  }
  return b;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> indices) const {
  FieldMatrix out(field_, indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= rows_) throw std::out_of_range("row index out of range");
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(indices[i], j);
  }
  return out;
}

FieldMatrix FieldMatrix::select_columns(std::span<const std::size_t> indices) const {
  FieldMatrix out(field_, rows_, indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= cols_) throw std::out_of_range("column index out of range");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) out(i, j) = (*this)(i, indices[j]);
  }
  return out;
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch in add");
  FieldMatrix c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
  }
  return c;
}

FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch in sub");
  FieldMatrix c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
  }
  return c;
}

FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  FieldMatrix c(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  std::vector<Symbol> entries = a.entries();
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return FieldMatrix(a.field(), a.rows() + b.rows(), a.cols(), std::move(entries));
}

}  // namespace ccmm
