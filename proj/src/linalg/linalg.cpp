#include "ccmm/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ccmm/kernels.hpp"

namespace ccmm {
namespace {

// Reduced row echelon form of an augmented system [a | b], pivoting only within the first
// a_cols columns. Pivot choice is the first nonzero entry at or below the current row.
struct Echelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

Echelon rref_in_place(const FieldSpec& f, std::vector<Symbol>& m, std::size_t rows, std::size_t width,
                      std::size_t a_cols) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a_cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m[i * width + c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != r) std::swap_ranges(m.begin() + pivot * width, m.begin() + (pivot + 1) * width, m.begin() + r * width);
    const Symbol inv = f.inv(m[r * width + c]);
    for (std::size_t j = c; j < width; ++j) m[r * width + j] = f.mul(m[r * width + j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Symbol factor = m[i * width + c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < width; ++j) {
        m[i * width + j] = f.sub(m[i * width + j], f.mul(factor, m[r * width + j]));
      }
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rank = r;
  return e;
}

// Solves a * x = b (a: m x n, b: m x k) with free variables zero; throws `error` if inconsistent.
FieldMatrix solve_linear(const FieldMatrix& a, const FieldMatrix& b, const char* error) {
  if (!(a.field() == b.field())) throw std::invalid_argument("field mismatch");
  if (a.rows() != b.rows()) throw std::invalid_argument("dimension mismatch in solve");
  const FieldSpec& f = a.field();
  const std::size_t m = a.rows(), n = a.cols(), k = b.cols(), width = n + k;
  std::vector<Symbol> aug(m * width);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy_n(a.row(i).begin(), n, aug.begin() + i * width);
    std::copy_n(b.row(i).begin(), k, aug.begin() + i * width + n);
  }
  const Echelon e = rref_in_place(f, aug, m, width, n);
  for (std::size_t i = e.rank; i < m; ++i) {
    for (std::size_t j = n; j < width; ++j) {
      if (aug[i * width + j] != 0) throw std::domain_error(error);
    }
  }
  FieldMatrix x(f, n, k);
  for (std::size_t r = 0; r < e.rank; ++r) {
    for (std::size_t j = 0; j < k; ++j) x(e.pivot_cols[r], j) = aug[r * width + n + j];
  }
  return x;
}

}  // namespace

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("field mismatch");
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in mat_mul");
  const std::size_t m = a.rows(), n = a.cols(), p = b.cols();
  std::vector<Symbol> c(m * p, 0);
  if (m * n * p >= kernels::kParallelThreshold) {
    kernels::matmul_parallel(a.field(), a.entries(), b.entries(), c, m, n, p);
  } else {
    kernels::matmul_serial(a.field(), a.entries(), b.entries(), c, m, n, p);
  }
  return FieldMatrix(a.field(), m, p, std::move(c));
}

std::size_t mat_rank(const FieldMatrix& a) { return row_basis(a).size(); }

std::vector<std::size_t> row_basis(const FieldMatrix& a) {
  const FieldSpec& f = a.field();
  const std::size_t n = a.cols();
  // Accepted rows kept reduced against earlier ones, each normalized to 1 at its pivot, so a
  // single forward pass eliminates every earlier pivot from a candidate.
  std::vector<std::vector<Symbol>> reduced;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> basis;
  std::vector<Symbol> v(n);
  for (std::size_t i = 0; i < a.rows() && basis.size() < n; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), v.begin());
    for (std::size_t b = 0; b < reduced.size(); ++b) {
      const Symbol factor = v[pivots[b]];
      if (factor == 0) continue;
      for (std::size_t j = pivots[b]; j < n; ++j) v[j] = f.sub(v[j], f.mul(factor, reduced[b][j]));
    }
    auto it = std::find_if(v.begin(), v.end(), [](Symbol x) { return x != 0; });
    if (it == v.end()) continue;
    const auto pivot = static_cast<std::size_t>(it - v.begin());
    const Symbol inv = f.inv(v[pivot]);
    for (std::size_t j = pivot; j < n; ++j) v[j] = f.mul(v[j], inv);
    reduced.push_back(v);
    pivots.push_back(pivot);
    basis.push_back(i);
  }
  return basis;
}

FieldMatrix solve_row_coefficients(const FieldMatrix& basis_rows, const FieldMatrix& target_rows) {
  if (basis_rows.cols() != target_rows.cols()) throw std::invalid_argument("dimension mismatch in solve");
  // A2 * basis = target  <=>  basis^T * A2^T = target^T.
  return solve_linear(basis_rows.transpose(), target_rows.transpose(), "row not in span").transpose();
}

FieldMatrix solve_columns(const FieldMatrix& w1, const FieldMatrix& y) {
  return solve_linear(w1, y, "column not in span");
}

ColumnPermutation leading_block_column_permutation(const FieldMatrix& w, std::size_t block_cols) {
  if (block_cols > w.cols()) throw std::invalid_argument("block_cols exceeds column count");
  ColumnPermutation identity(w.cols());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  const std::vector<std::size_t> pivots = row_basis(w.transpose());
  const std::size_t target = std::min(pivots.size(), block_cols);
  if (target == 0) return identity;
  const std::vector<std::size_t> lead(identity.begin(), identity.begin() + static_cast<std::ptrdiff_t>(block_cols));
  if (mat_rank(w.select_columns(lead)) == target) return identity;

  // Greedy: first `target` pivot columns, then the lowest remaining indices fill the block.
  ColumnPermutation perm(pivots.begin(), pivots.begin() + static_cast<std::ptrdiff_t>(target));
  std::vector<bool> used(w.cols(), false);
  for (std::size_t c : perm) used[c] = true;
  for (std::size_t c = 0; c < w.cols(); ++c) {
    if (!used[c]) perm.push_back(c);
  }
  // Keep the leading block in ascending column order.
  std::sort(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(block_cols));
  return perm;
}

FieldMatrix apply_column_permutation(const FieldMatrix& w, const ColumnPermutation& perm) {
  if (perm.size() != w.cols()) throw std::invalid_argument("permutation size mismatch");
  return w.select_columns(perm);
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

FieldMatrix random_matrix(const FieldSpec& field, std::size_t rows, std::size_t cols, std::uint64_t seed,
                          std::uint64_t stream) {
  const std::uint64_t q = field.modulus();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % q;
  const std::uint64_t key = splitmix64(splitmix64(seed) ^ stream);
  std::vector<Symbol> entries(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::uint64_t row_key = splitmix64(key ^ i);
    for (std::size_t j = 0; j < cols; ++j) {
      const std::uint64_t cell_key = splitmix64(row_key ^ j);
      std::uint64_t draw = 0;
      for (std::uint64_t attempt = 0;; ++attempt) {
        draw = splitmix64(cell_key + attempt);
        if (draw < limit) break;
      }
      entries[i * cols + j] = draw % q;
    }
  }
  return FieldMatrix(field, rows, cols, std::move(entries));
}

}  // namespace ccmm
