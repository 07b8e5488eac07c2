#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ccmm/matrix.hpp"

namespace ccmm {

/// Column j of W*pi is column perm[j] of W.
using ColumnPermutation = std::vector<std::size_t>;

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);

std::size_t mat_rank(const FieldMatrix& a);

/// Lexicographically smallest independent row set of size rank(a), ascending.
std::vector<std::size_t> row_basis(const FieldMatrix& a);

/// A2 with A2 * basis_rows = target_rows. basis_rows must have full row rank.
/// Throws std::domain_error("row not in span") when a target row is outside the row space.
FieldMatrix solve_row_coefficients(const FieldMatrix& basis_rows, const FieldMatrix& target_rows);

/// Q with w1 * Q = y; free variables are set to zero.
/// Throws std::domain_error("column not in span") when a column of y is outside the column space.
FieldMatrix solve_columns(const FieldMatrix& w1, const FieldMatrix& y);

/// Permutation whose first block_cols columns have rank min(rank(w), block_cols).
/// Identity when the natural leading block already qualifies.
ColumnPermutation leading_block_column_permutation(const FieldMatrix& w, std::size_t block_cols);

FieldMatrix apply_column_permutation(const FieldMatrix& w, const ColumnPermutation& perm);

/// SplitMix64 output function.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Uniform matrix from a counter-based generator: the candidate draw for entry (row, col) at attempt k
/// is a SplitMix64 chain over (seed, stream, row, col, k), rejected when it falls in the biased tail
/// above the largest multiple of q. Each entry depends only on its own coordinates.
FieldMatrix random_matrix(const FieldSpec& field, std::size_t rows, std::size_t cols, std::uint64_t seed,
                          std::uint64_t stream = 0);

}  // namespace ccmm
