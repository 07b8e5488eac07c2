#include "ccmm/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "ccmm/compression.hpp"

namespace ccmm::analysis {
namespace {

Rational R(long long v) { return Rational(v); }
Rational R(const BigInt& v) { return Rational(v); }

Rational cross(const LoadPoint& o, const LoadPoint& a, const LoadPoint& b) {
  return (a.M - o.M) * (b.R - o.R) - (a.R - o.R) * (b.M - o.M);
}

}  // namespace

Rational Envelope::evaluate(const Rational& M) const {
  if (points.empty() || M < points.front().M || M > points.back().M) {
    throw std::out_of_range("envelope evaluated outside its memory range");
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const LoadPoint& p = points[i];
    const LoadPoint& q = points[i + 1];
    if (M <= q.M) return p.R + (q.R - p.R) * (M - p.M) / (q.M - p.M);
  }
  return points.back().R;
}

Envelope lower_convex_envelope(std::vector<LoadPoint> points) {
  std::sort(points.begin(), points.end(), [](const LoadPoint& x, const LoadPoint& y) {
    return x.M < y.M || (x.M == y.M && x.R < y.R);
  });
  Envelope env;
  for (const LoadPoint& p : points) {
    if (!env.points.empty() && env.points.back().M == p.M) continue;  // keep the lowest R per M
    while (env.points.size() >= 2 && cross(env.points[env.points.size() - 2], env.points.back(), p) <= 0) {
      env.points.pop_back();
    }
    env.points.push_back(p);
  }
  return env;
}

Partition partition_for(int x, int N, const Rational& M) {
  const Rational v = R(x) * M / R(N);
  Partition p;
  p.t = floor_of(v).convert_to<int>();
  p.alpha = R(p.t) + 1 - v;
  return p;
}

std::vector<LoadPoint> load_sa_corners(int K, int N, const Rational& a) {
  std::vector<LoadPoint> out;
  const Rational files = R(static_cast<long long>(N) * (N + 1) / 2);
  for (int t = 0; t <= K; ++t) {
    out.push_back({files * g_ratio(a, a) / a * R(t) / R(K), R(K - t) / R(t + 1)});
  }
  return out;
}

Rational load_sa(int K, int N, const Rational& a, const Rational& M) {
  const Envelope env = lower_convex_envelope(load_sa_corners(K, N, a));
  if (M >= env.points.back().M) return 0;
  return env.evaluate(M);
}

Rational load_R1(int K, int N, const Rational& a, const Rational& M) {
  return R(K) * (1 - M * M / R(static_cast<long long>(N) * N)) * a * a / g_ratio(a, a);
}

std::vector<LoadPoint> load_R2_corners(int K, int N, const Rational& a) {
  std::vector<LoadPoint> out;
  for (int t = 0; t <= K; ++t) {
    out.push_back({R(N) * R(t) / R(K), 2 * R(K - t) / R(t + 1) * a / g_ratio(a, a)});
  }
  return out;
}

Rational load_R2(int K, int N, const Rational& a, const Rational& M) {
  return lower_convex_envelope(load_R2_corners(K, N, a)).evaluate(M);
}

Rational load_Rrow_ell(int K, int N, const Rational& a, const Rational& M, int ell) {
  const Partition p = partition_for(ell, N, M);
  const Rational c1 = R(binom(ell, p.t));
  const Rational c2 = R(binom(ell, p.t + 1));
  Rational sum = 0;
  // Each tier vanishes when its row share or its multicast family is empty; this also realizes
  // the alpha = 1 and alpha = 0 conventions without dividing by zero.
  if (p.alpha > 0 && c2 > 0) {
    const Rational x = a * c1 / p.alpha;
    sum += g_ratio(x, x) * p.alpha * p.alpha / (c1 * c1) * c2;
  }
  const Rational c3 = R(binom(ell, p.t + 2));
  if (p.alpha < 1 && c3 > 0) {
    const Rational x = a * c2 / (1 - p.alpha);
    sum += g_ratio(x, x) * (1 - p.alpha) * (1 - p.alpha) / (c2 * c2) * c3;
  }
  const Rational groups = R((K + ell - 1) / ell);
  return groups * sum / g_ratio(a, a);
}

RowLoad load_Rrow(int K, int N, const Rational& a, const Rational& M) {
  RowLoad out;
  for (int ell = 1; ell <= K; ++ell) {
    out.per_ell.push_back(load_Rrow_ell(K, N, a, M, ell));
    if (ell == 1 || out.per_ell.back() < out.value) {
      out.value = out.per_ell.back();
      out.ell = ell;
    }
  }
  return out;
}

Rational f_group_length(int i, int K, int t, const Rational& alpha, const Rational& a) {
  const Rational c1 = R(binom(K, t));
  const Rational c2 = R(binom(K, t + 1));
  Rational sum = 0;
  if (c1 > 0) {
    const Rational w = alpha * a / c1;
    sum += w * w * R(binom(K - i, t - i) * binom(K - t, t - i));
  }
  if (c2 > 0) {
    const Rational w = (1 - alpha) * a / c2;
    sum += w * w * R(binom(K - i, t + 1 - i) * binom(K - t - 1, t + 1 - i));
  }
  if (c1 > 0 && c2 > 0) {
    sum += 2 * alpha * (1 - alpha) * a * a / (c1 * c2) * R(binom(K - i, t - i) * binom(K - t, t + 1 - i));
  }
  return sum;
}

Rational col_y(int K, int N, const Rational& M) {
  const Partition p = partition_for(K, N, M);
  Rational y = 0;
  for (int i = 0; i <= p.t + 1; ++i) y += R(binom(K, i + 1)) * f_group_length(i, K, p.t, p.alpha, 1);
  return y;
}

Rational load_Rcol(int K, int N, const Rational& a, const Rational& M) {
  const Rational y = col_y(K, N, M);
  if (a <= 1) return y;
  const Partition p = partition_for(K, N, M);
  const Rational extra = p.alpha * R(K - p.t) / R(p.t + 1) + (1 - p.alpha) * R(K - p.t - 1) / R(p.t + 2);
  return (y + 2 * (a - 1) * extra) / (2 * a - 1);
}

Rational cutset_bound(int K, int N, const Rational& a, const Rational& M) {
  const int half = N / 2;
  const Rational ratio = a / g_ratio(a, a);
  Rational best = 0;
  for (int b = 1; b <= std::min(half, K); ++b) {
    const Rational v = R(b) - R(b) * R(b) * M / R(half) * ratio;
    if (v > best) best = v;
  }
  return best;
}

bool genie_applies(int K, int N, const Rational& a) { return a >= 1 && N >= 2 * K; }

std::vector<LoadPoint> genie_converse_corners(int K, int N, const Rational& a) {
  if (!genie_applies(K, N, a)) throw std::domain_error("genie converse requires a >= 1 and N >= 2K");
  std::vector<LoadPoint> out;
  for (int t = 0; t <= K; ++t) {
    out.push_back({R(N) * R(t) / R(K), R(K - t) / R(t + 1) * a / (2 * a - 1)});
  }
  return out;
}

std::optional<Rational> genie_bound(int K, int N, const Rational& a, const Rational& M) {
  if (!genie_applies(K, N, a)) return std::nullopt;
  return lower_convex_envelope(genie_converse_corners(K, N, a)).evaluate(M);
}

TrivialBounds trivial_bounds(int K, int N, const Rational& a) {
  const Rational files = R(static_cast<long long>(N) * (N + 1) / 2);
  const Rational g = g_ratio(a, a);
  return {std::min(R(N), files * g / a), std::min({R(K), files, R(N) * a / g})};
}

}  // namespace ccmm::analysis
