#include "ccmm/schemes/row_partition.hpp"

#include <algorithm>

#include "ccmm/analysis.hpp"

namespace ccmm {
namespace {

std::size_t share_rows(const Rational& share, std::size_t s, std::uint64_t blocks, const char* what) {
  const Rational rows = share * Rational(static_cast<long long>(s));
  if (!is_integer(rows)) throw ValidationError(std::string(what) + " row count " + to_string(rows) + " is not an integer");
  const auto n = static_cast<std::uint64_t>(to_int64(rows));
  if (n == 0) return 0;
  if (blocks == 0 || n % blocks != 0) {
    throw ValidationError(std::string(what) + " row count " + std::to_string(n) + " is not divisible by " +
                          std::to_string(blocks) + " blocks");
  }
  return n / blocks;
}

SegmentLabel row_label(std::size_t matrix, const UserSet& T) { return {SegmentKind::raw_rows, matrix, 0, T}; }

FieldMatrix rows_block(const FieldMatrix& w, const RowLayout& lay, const UserSet& T) {
  const auto [first, count] = lay.rows_of(T);
  return w.block(first, count, 0, w.cols());
}

// Placement subsets with a nonzero number of rows, tier 1 before tier 2.
std::vector<std::pair<int, const std::vector<UserSet>*>> active_tiers(const RowLayout& lay) {
  std::vector<std::pair<int, const std::vector<UserSet>*>> out;
  if (lay.tier1_block_rows > 0) out.emplace_back(1, &lay.tier1_sets);
  if (lay.tier2_block_rows > 0) out.emplace_back(2, &lay.tier2_sets);
  return out;
}

int group_of(int k, int ell) { return (k - 1) / ell + 1; }
int user_at(int group, int position, int ell) { return (group - 1) * ell + position; }

}  // namespace

std::pair<std::size_t, std::size_t> RowLayout::rows_of(const UserSet& T) const {
  if (static_cast<int>(T.size()) == t) {
    return {subset_rank(tier1_sets, T) * tier1_block_rows, tier1_block_rows};
  }
  const std::size_t base = tier1_sets.size() * tier1_block_rows;
  return {base + subset_rank(tier2_sets, T) * tier2_block_rows, tier2_block_rows};
}

RowLayout row_layout(const ProblemInstance& inst, int ell) {
  if (ell < 1 || ell > inst.K) throw ValidationError("ell must lie in [1, K]");
  const analysis::Partition p = analysis::partition_for(ell, inst.N, inst.M);
  RowLayout lay;
  lay.ell = ell;
  lay.t = p.t;
  lay.alpha = p.alpha;
  lay.tier1_sets = combinations(ell, p.t);
  lay.tier2_sets = combinations(ell, p.t + 1);
  lay.tier1_block_rows = share_rows(p.alpha, inst.s, lay.tier1_sets.size(), "alpha*s");
  lay.tier2_block_rows = share_rows(1 - p.alpha, inst.s, lay.tier2_sets.size(), "(1-alpha)*s");
  return lay;
}

int mod_position(int k, int ell) { return (k - 1) % ell + 1; }

CompressedProduct row_partial_product(const FieldMatrix& w1_block, const FieldMatrix& w2_block) {
  return compress_product(mat_mul(w1_block.transpose(), w2_block), w1_block.rows());
}

void RowScheme::validate(const ProblemInstance& inst) const { (void)row_layout(inst, ell_); }

CacheContents RowScheme::place(const ProblemInstance& inst, const Library& lib) const {
  const RowLayout lay = row_layout(inst, ell_);
  CacheContents cc;
  cc.users.resize(static_cast<std::size_t>(inst.K));
  for (int k = 1; k <= inst.K; ++k) {
    const int j = mod_position(k, ell_);
    UserCache& uc = cc.users[static_cast<std::size_t>(k - 1)];
    for (const auto& [tier, sets] : active_tiers(lay)) {
      for (const UserSet& T : *sets) {
        if (!contains(T, j)) continue;
        for (std::size_t i = 1; i <= lib.size(); ++i) uc.put(row_label(i, T), rows_block(lib(i), lay, T));
      }
    }
  }
  return cc;
}

DeliveryTranscript RowScheme::deliver(const ProblemInstance& inst, const Library& lib,
                                      const DemandVector& demands) const {
  const RowLayout lay = row_layout(inst, ell_);
  const int groups = (inst.K + ell_ - 1) / ell_;
  DeliveryTranscript tr;
  for (int g = 1; g <= groups; ++g) {
    for (const auto& [tier, sets] : active_tiers(lay)) {
      const std::size_t rows = tier == 1 ? lay.tier1_block_rows : lay.tier2_block_rows;
      const std::size_t len = f_len({inst.r, rows, inst.r});
      for (const UserSet& S : combinations(ell_, lay.t + tier)) {
        Message msg{{"row", g, tier, S}, std::vector<Symbol>(len, 0), {}};
        for (int j : S) {
          const int u = user_at(g, j, ell_);
          if (u > inst.K) {
            msg.headers.push_back({});  // absent user: zero packet
            continue;
          }
          const UserDemand& d = demands[static_cast<std::size_t>(u - 1)];
          const UserSet T = without(S, j);
          const CompressedProduct cp = row_partial_product(rows_block(lib(d.d1), lay, T), rows_block(lib(d.d2), lay, T));
          add_into(inst.field, msg.payload, packet_symbols(cp));
          msg.headers.push_back(cp.header());
        }
        tr.messages.push_back(std::move(msg));
      }
    }
  }
  return tr;
}

FieldMatrix RowScheme::decode(const ProblemInstance& inst, int k, const UserCache& cache,
                              const DeliveryTranscript& transcript, const DemandVector& demands) const {
  const RowLayout lay = row_layout(inst, ell_);
  const int g = group_of(k, ell_);
  const int j = mod_position(k, ell_);
  const UserDemand& mine = demands[static_cast<std::size_t>(k - 1)];
  FieldMatrix acc(inst.field, inst.r, inst.r);
  for (const auto& [tier, sets] : active_tiers(lay)) {
    const std::size_t rows = tier == 1 ? lay.tier1_block_rows : lay.tier2_block_rows;
    for (const UserSet& T : *sets) {
      if (contains(T, j)) {
        acc = acc + mat_mul(cache.matrix(row_label(mine.d1, T), inst.field).transpose(),
                            cache.matrix(row_label(mine.d2, T), inst.field));
        continue;
      }
      const UserSet S = with(T, j);
      const Message& msg = transcript.find({"row", g, tier, S});
      std::vector<Symbol> own = msg.payload;
      std::size_t own_pos = 0;
      for (std::size_t x = 0; x < S.size(); ++x) {
        const int jp = S[x];
        if (jp == j) {
          own_pos = x;
          continue;
        }
        const int u = user_at(g, jp, ell_);
        if (u > inst.K) continue;
        const UserDemand& d = demands[static_cast<std::size_t>(u - 1)];
        const UserSet Tp = without(S, jp);
        const CompressedProduct peer = row_partial_product(cache.matrix(row_label(d.d1, Tp), inst.field),
                                                           cache.matrix(row_label(d.d2, Tp), inst.field));
        subtract_from(inst.field, own, packet_symbols(peer));
      }
      if (msg.headers.size() != S.size()) throw ProtocolError("row message header count mismatch");
      acc = acc + decompress_product(from_packet(inst.field, {inst.r, rows, inst.r}, msg.headers[own_pos], std::move(own)));
    }
  }
  return acc;
}

Rational RowScheme::closed_form_load(const ProblemInstance& inst) const {
  return analysis::load_Rrow_ell(inst.K, inst.N, inst.a(), inst.M, ell_);
}

std::pair<int, Rational> best_ell(const ProblemInstance& inst) {
  const analysis::RowLoad r = analysis::load_Rrow(inst.K, inst.N, inst.a(), inst.M);
  return {r.ell, r.value};
}

}  // namespace ccmm
