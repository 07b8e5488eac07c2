#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ccmm/rational.hpp"

namespace ccmm::analysis {

struct LoadPoint {
  Rational M;
  Rational R;
  bool operator==(const LoadPoint&) const = default;
};

/// Lower convex hull, M strictly increasing.
struct Envelope {
  std::vector<LoadPoint> points;
  /// Linear interpolation; throws std::out_of_range outside [first M, last M].
  Rational evaluate(const Rational& M) const;
};

Envelope lower_convex_envelope(std::vector<LoadPoint> points);

/// t = floor(x M / N) and alpha = t + 1 - x M / N for a partition over x parties.
struct Partition {
  int t = 0;
  Rational alpha = 1;
};
Partition partition_for(int x, int N, const Rational& M);

std::vector<LoadPoint> load_sa_corners(int K, int N, const Rational& a);
/// Structure-agnostic envelope; zero beyond the last corner.
Rational load_sa(int K, int N, const Rational& a, const Rational& M);

Rational load_R1(int K, int N, const Rational& a, const Rational& M);

std::vector<LoadPoint> load_R2_corners(int K, int N, const Rational& a);
Rational load_R2(int K, int N, const Rational& a, const Rational& M);

/// Per-ell term of the row-partition load.
Rational load_Rrow_ell(int K, int N, const Rational& a, const Rational& M, int ell);

struct RowLoad {
  Rational value;
  int ell = 1;
  std::vector<Rational> per_ell;  // per_ell[ell - 1]
};
/// Minimum over ell in [K]; ties go to the smaller ell.
RowLoad load_Rrow(int K, int N, const Rational& a, const Rational& M);

/// Closed-form F-group length in units of s^2 for |V| = i.
Rational f_group_length(int i, int K, int t, const Rational& alpha, const Rational& a);

/// The a-independent sum y over rounds.
Rational col_y(int K, int N, const Rational& M);
Rational load_Rcol(int K, int N, const Rational& a, const Rational& M);

Rational cutset_bound(int K, int N, const Rational& a, const Rational& M);

/// Requires a >= 1 and N >= 2K; throws std::domain_error otherwise.
std::vector<LoadPoint> genie_converse_corners(int K, int N, const Rational& a);
bool genie_applies(int K, int N, const Rational& a);
/// Genie envelope, or nullopt outside its regime.
std::optional<Rational> genie_bound(int K, int N, const Rational& a, const Rational& M);

struct TrivialBounds {
  Rational M_zero;
  Rational R_cap;
};
TrivialBounds trivial_bounds(int K, int N, const Rational& a);

}  // namespace ccmm::analysis
