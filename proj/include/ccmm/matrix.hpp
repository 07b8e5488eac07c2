#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "ccmm/field.hpp"

namespace ccmm {

/// Dense row-major matrix over a prime field.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  /// Zero matrix.
  FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols);
  /// Takes ownership of row-major entries; throws if the length is wrong or an entry is not reduced.
  FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Symbol> entries);

  static FieldMatrix identity(FieldSpec field, std::size_t n);
  /// Builds from signed literals, reducing each modulo q.
  static FieldMatrix from_rows(FieldSpec field, std::initializer_list<std::initializer_list<std::int64_t>> rows);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Symbol operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }
  Symbol& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }

  std::span<const Symbol> row(std::size_t r) const noexcept { return {entries_.data() + r * cols_, cols_}; }
  const std::vector<Symbol>& entries() const noexcept { return entries_; }

  FieldMatrix transpose() const;
  /// Contiguous sub-block [r0, r0+nr) x [c0, c0+nc).
  FieldMatrix block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const;
  FieldMatrix select_rows(std::span<const std::size_t> indices) const;
  FieldMatrix select_columns(std::span<const std::size_t> indices) const;

  bool operator==(const FieldMatrix& other) const = default;

 private:
  FieldSpec field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> entries_;
};

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b);

/// [a | b]; row counts must agree.
FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b);
/// [a ; b]; column counts must agree.
FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b);

}  // namespace ccmm
