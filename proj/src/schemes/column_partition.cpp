#include "ccmm/schemes/column_partition.hpp"

#include <algorithm>

#include "ccmm/analysis.hpp"

namespace ccmm {
namespace {

constexpr const char* kFamily = "col";
constexpr int kRoundStage = 1;
constexpr int kRightQStage = 2;  // F' pieces: Q of the second factor
constexpr int kLeftQStage = 3;   // F'' pieces: Q of the first factor

std::size_t share_cols(const Rational& share, std::size_t w, std::uint64_t blocks, const char* what) {
  const Rational cols = share * Rational(static_cast<long long>(w));
  if (!is_integer(cols)) throw ValidationError(std::string(what) + " column count " + to_string(cols) + " is not an integer");
  const auto n = static_cast<std::uint64_t>(to_int64(cols));
  if (n == 0) return 0;
  if (blocks == 0 || n % blocks != 0) {
    throw ValidationError(std::string(what) + " column count " + std::to_string(n) + " is not divisible by " +
                          std::to_string(blocks) + " blocks");
  }
  return n / blocks;
}

ColBlockLayout block_layout(int K, int t, const Rational& alpha, std::size_t width, const char* what) {
  ColBlockLayout lay;
  lay.K = K;
  lay.t = t;
  lay.tier1_sets = combinations(K, t);
  lay.tier2_sets = combinations(K, t + 1);
  lay.tier1_width = share_cols(alpha, width, lay.tier1_sets.size(), (std::string("alpha*") + what).c_str());
  lay.tier2_width = share_cols(1 - alpha, width, lay.tier2_sets.size(), (std::string("(1-alpha)*") + what).c_str());
  if (lay.tier1_width > 0) lay.sets.insert(lay.sets.end(), lay.tier1_sets.begin(), lay.tier1_sets.end());
  if (lay.tier2_width > 0) lay.sets.insert(lay.sets.end(), lay.tier2_sets.begin(), lay.tier2_sets.end());
  std::sort(lay.sets.begin(), lay.sets.end());
  return lay;
}

SegmentLabel lead_label(std::size_t i, const UserSet& T) { return {SegmentKind::raw_cols, i, 0, T}; }
SegmentLabel q_label(std::size_t i, const UserSet& T) { return {SegmentKind::coded_q, i, 0, T}; }

FieldMatrix column_block(const FieldMatrix& w, const ColBlockLayout& lay, const UserSet& T) {
  const auto [first, count] = lay.cols_of(T);
  return w.block(0, w.rows(), first, count);
}

const UserDemand& demand_of(const DemandVector& demands, int k) { return demands.at(static_cast<std::size_t>(k - 1)); }

// Leading block and coded remainder of one library matrix after its column permutation.
struct SplitMatrix {
  ColumnPermutation perm;
  FieldMatrix lead;
  FieldMatrix rest;
};

SplitMatrix split_matrix(const FieldMatrix& w, std::size_t s) {
  SplitMatrix out;
  out.perm = leading_block_column_permutation(w, s);
  const FieldMatrix permuted = apply_column_permutation(w, out.perm);
  out.lead = permuted.block(0, w.rows(), 0, s);
  out.rest = permuted.block(0, w.rows(), s, w.cols() - s);
  return out;
}

std::vector<SplitMatrix> split_library(const ProblemInstance& inst, const Library& lib) {
  std::vector<SplitMatrix> out;
  for (std::size_t i = 1; i <= lib.size(); ++i) out.push_back(split_matrix(lib(i), inst.s));
  return out;
}

// Library-side source for the leading column blocks.
ColumnBlockSource server_lead_source(const ColLayout& lay, const Library& lib, const std::vector<SplitMatrix>& split) {
  if (!lay.split) {
    return [&lay, &lib](std::size_t i, const UserSet& T) { return column_block(lib(i), lay.lead, T); };
  }
  return [&lay, &split](std::size_t i, const UserSet& T) { return column_block(split[i - 1].lead, lay.lead, T); };
}

ColumnBlockSource cache_lead_source(const UserCache& cache, const FieldSpec& field) {
  return [&cache, field](std::size_t i, const UserSet& T) { return cache.matrix(lead_label(i, T), field); };
}

// Rounds 0..t+1 of F-group multicasts over the leading layout.
void deliver_rounds(const ProblemInstance& inst, const ColBlockLayout& lay, const DemandVector& demands,
                    const ColumnBlockSource& source, DeliveryTranscript& tr) {
  for (int i = 0; i <= lay.t + 1; ++i) {
    for (const UserSet& S : combinations(inst.K, i + 1)) {
      Message msg{{kFamily, kRoundStage, i, S}, {}, {}};
      bool first = true;
      for (int k : S) {
        const FGroup grp = build_f_group(lay, k, without(S, k), demand_of(demands, k), source);
        const std::vector<Symbol> sym = grp.symbols();
        if (first) {
          msg.payload.assign(sym.size(), 0);
          first = false;
        }
        add_into(inst.field, msg.payload, sym);
        for (const auto& cp : grp.products) msg.headers.push_back(cp.header());
      }
      if (!msg.payload.empty()) tr.messages.push_back(std::move(msg));
    }
  }
}

// Inverse of deliver_rounds for user k: the full product grid over the leading layout.
FieldMatrix decode_rounds(const ProblemInstance& inst, const ColBlockLayout& lay, int k, const UserCache& cache,
                          const DeliveryTranscript& tr, const DemandVector& demands) {
  const UserDemand& mine = demand_of(demands, k);
  const ColumnBlockSource source = cache_lead_source(cache, inst.field);
  const std::size_t w = lay.total_width();
  FieldMatrix out(inst.field, w, w);
  auto place = [&](const BlockPair& bp, const FieldMatrix& block) {
    const std::size_t r0 = lay.cols_of(bp.first).first;
    const std::size_t c0 = lay.cols_of(bp.second).first;
    for (std::size_t x = 0; x < block.rows(); ++x) {
      for (std::size_t y = 0; y < block.cols(); ++y) out(r0 + x, c0 + y) = block(x, y);
    }
  };
  std::map<UserSet, bool> knower_sets;
  for (const UserSet& T1 : lay.sets) {
    for (const UserSet& T2 : lay.sets) {
      const UserSet V = intersect(T1, T2);
      if (contains(V, k)) {
        place({T1, T2}, mat_mul(source(mine.d1, T1).transpose(), source(mine.d2, T2)));
      } else {
        knower_sets[V] = true;
      }
    }
  }
  for (const auto& [V, unused] : knower_sets) {
    const UserSet S = with(V, k);
    const Message& msg = tr.find({kFamily, kRoundStage, static_cast<int>(V.size()), S});
    std::vector<Symbol> own = msg.payload;
    const std::vector<BlockPair> pairs = f_group_pairs(lay, V);
    std::size_t own_pos = 0;
    for (std::size_t x = 0; x < S.size(); ++x) {
      const int j = S[x];
      if (j == k) {
        own_pos = x;
        continue;
      }
      subtract_from(inst.field, own, build_f_group(lay, j, without(S, j), demand_of(demands, j), source).symbols());
    }
    if (msg.headers.size() != S.size() * pairs.size()) throw ProtocolError("column message header count mismatch");
    std::size_t offset = 0;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      const DimTriple dims{lay.cols_of(pairs[b].first).second, inst.s, lay.cols_of(pairs[b].second).second};
      const std::size_t len = f_len(dims);
      std::vector<Symbol> piece(own.begin() + static_cast<std::ptrdiff_t>(offset),
                                own.begin() + static_cast<std::ptrdiff_t>(offset + len));
      offset += len;
      place(pairs[b], decompress_product(from_packet(inst.field, dims, msg.headers[own_pos * pairs.size() + b], std::move(piece))));
    }
  }
  return out;
}

std::vector<Symbol> flat(const FieldMatrix& m) { return m.entries(); }

// Steps 2 and 3 of the split path: multicasts of coded-remainder blocks of one demand factor.
void deliver_q_step(const ProblemInstance& inst, const ColLayout& lay, const DemandVector& demands, int stage,
                    const std::vector<SplitMatrix>& split, DeliveryTranscript& tr) {
  const ColBlockLayout& rem = lay.remainder;
  for (int tier = 1; tier <= 2; ++tier) {
    if ((tier == 1 ? rem.tier1_width : rem.tier2_width) == 0) continue;
    for (const UserSet& S : combinations(inst.K, lay.t + tier)) {
      Message msg{{kFamily, stage, tier, S}, {}, {}};
      for (int k : S) {
        const UserDemand& d = demand_of(demands, k);
        const SplitMatrix& m = split[(stage == kRightQStage ? d.d2 : d.d1) - 1];
        const std::vector<Symbol> q = flat(solve_columns(m.lead, column_block(m.rest, rem, without(S, k))));
        if (msg.payload.empty()) msg.payload.assign(q.size(), 0);
        add_into(inst.field, msg.payload, q);
      }
      tr.messages.push_back(std::move(msg));
    }
  }
}

// Full s x (r - s) coded remainder of the chosen factor for user k.
FieldMatrix decode_q_step(const ProblemInstance& inst, const ColLayout& lay, int k, const UserCache& cache,
                          const DeliveryTranscript& tr, const DemandVector& demands, int stage) {
  const ColBlockLayout& rem = lay.remainder;
  auto factor = [stage](const UserDemand& d) { return stage == kRightQStage ? d.d2 : d.d1; };
  const std::size_t mine = factor(demand_of(demands, k));
  FieldMatrix out(inst.field, inst.s, rem.total_width());
  for (const UserSet& T : rem.sets) {
    const auto [c0, width] = rem.cols_of(T);
    FieldMatrix block;
    if (contains(T, k)) {
      block = cache.matrix(q_label(mine, T), inst.field);
    } else {
      const UserSet S = with(T, k);
      const int tier = static_cast<int>(T.size()) == lay.t ? 1 : 2;
      std::vector<Symbol> own = tr.find({kFamily, stage, tier, S}).payload;
      for (int j : S) {
        if (j != k) subtract_from(inst.field, own, cache.at(q_label(factor(demand_of(demands, j)), without(S, j))).symbols);
      }
      block = FieldMatrix(inst.field, inst.s, width, std::move(own));
    }
    for (std::size_t x = 0; x < inst.s; ++x) {
      for (std::size_t y = 0; y < width; ++y) out(x, c0 + y) = block(x, y);
    }
  }
  return out;
}

}  // namespace

std::pair<std::size_t, std::size_t> ColBlockLayout::cols_of(const UserSet& T) const {
  if (static_cast<int>(T.size()) == t) return {subset_rank(tier1_sets, T) * tier1_width, tier1_width};
  const std::size_t base = tier1_sets.size() * tier1_width;
  return {base + subset_rank(tier2_sets, T) * tier2_width, tier2_width};
}

ColLayout col_layout(const ProblemInstance& inst) {
  const analysis::Partition p = analysis::partition_for(inst.K, inst.N, inst.M);
  ColLayout lay;
  lay.t = p.t;
  lay.alpha = p.alpha;
  lay.split = inst.r > inst.s;
  if (!lay.split) {
    lay.lead = block_layout(inst.K, p.t, p.alpha, inst.r, "r");
  } else {
    lay.lead = block_layout(inst.K, p.t, p.alpha, inst.s, "s");
    lay.remainder = block_layout(inst.K, p.t, p.alpha, inst.r - inst.s, "(r-s)");
  }
  return lay;
}

std::size_t FGroup::length() const {
  std::size_t total = 0;
  for (const auto& cp : products) total += cp.padded_length;
  return total;
}

std::vector<Symbol> FGroup::symbols() const {
  std::vector<Symbol> out;
  out.reserve(length());
  for (const auto& cp : products) {
    const auto p = packet_symbols(cp);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

std::vector<BlockPair> f_group_pairs(const ColBlockLayout& lay, const UserSet& knowers) {
  std::vector<BlockPair> out;
  for (const UserSet& T1 : lay.sets) {
    for (const UserSet& T2 : lay.sets) {
      if (intersect(T1, T2) == knowers) out.emplace_back(T1, T2);
    }
  }
  return out;
}

FGroup build_f_group(const ColBlockLayout& lay, int user, const UserSet& knowers, const UserDemand& demand,
                     const ColumnBlockSource& source) {
  FGroup g;
  g.user = user;
  g.knowers = knowers;
  if (contains(knowers, user)) return g;
  g.blocks = f_group_pairs(lay, knowers);
  for (const auto& [T1, T2] : g.blocks) {
    const FieldMatrix left = source(demand.d1, T1);
    g.products.push_back(compress_product(mat_mul(left.transpose(), source(demand.d2, T2)), left.rows()));
  }
  return g;
}

std::vector<FGroup> col_build_F_groups(const ProblemInstance& inst, const Library& lib, const DemandVector& demands,
                                       int k) {
  const ColLayout lay = col_layout(inst);
  const std::vector<SplitMatrix> split = lay.split ? split_library(inst, lib) : std::vector<SplitMatrix>{};
  const ColumnBlockSource source = server_lead_source(lay, lib, split);
  std::map<UserSet, bool> knower_sets;
  for (const UserSet& T1 : lay.lead.sets) {
    for (const UserSet& T2 : lay.lead.sets) {
      const UserSet V = intersect(T1, T2);
      if (!contains(V, k)) knower_sets[V] = true;
    }
  }
  std::vector<FGroup> out;
  for (const auto& [V, unused] : knower_sets) out.push_back(build_f_group(lay.lead, k, V, demand_of(demands, k), source));
  return out;
}

void ColumnScheme::validate(const ProblemInstance& inst) const { (void)col_layout(inst); }

CacheContents ColumnScheme::place(const ProblemInstance& inst, const Library& lib) const {
  const ColLayout lay = col_layout(inst);
  const std::vector<SplitMatrix> split = lay.split ? split_library(inst, lib) : std::vector<SplitMatrix>{};
  const ColumnBlockSource source = server_lead_source(lay, lib, split);
  CacheContents cc;
  cc.users.resize(static_cast<std::size_t>(inst.K));
  for (int k = 1; k <= inst.K; ++k) {
    UserCache& uc = cc.users[static_cast<std::size_t>(k - 1)];
    for (std::size_t i = 1; i <= lib.size(); ++i) {
      for (const UserSet& T : lay.lead.sets) {
        if (contains(T, k)) uc.put(lead_label(i, T), source(i, T));
      }
      if (!lay.split) continue;
      uc.permutations[i] = split[i - 1].perm;
      for (const UserSet& T : lay.remainder.sets) {
        if (contains(T, k)) {
          uc.put(q_label(i, T), solve_columns(split[i - 1].lead, column_block(split[i - 1].rest, lay.remainder, T)));
        }
      }
    }
  }
  return cc;
}

DeliveryTranscript ColumnScheme::deliver(const ProblemInstance& inst, const Library& lib,
                                         const DemandVector& demands) const {
  const ColLayout lay = col_layout(inst);
  const std::vector<SplitMatrix> split = lay.split ? split_library(inst, lib) : std::vector<SplitMatrix>{};
  DeliveryTranscript tr;
  deliver_rounds(inst, lay.lead, demands, server_lead_source(lay, lib, split), tr);
  if (lay.split) {
    deliver_q_step(inst, lay, demands, kRightQStage, split, tr);
    deliver_q_step(inst, lay, demands, kLeftQStage, split, tr);
  }
  return tr;
}

FieldMatrix ColumnScheme::decode(const ProblemInstance& inst, int k, const UserCache& cache,
                                 const DeliveryTranscript& transcript, const DemandVector& demands) const {
  const ColLayout lay = col_layout(inst);
  const FieldMatrix p11 = decode_rounds(inst, lay.lead, k, cache, transcript, demands);
  if (!lay.split) return p11;

  const FieldMatrix q2 = decode_q_step(inst, lay, k, cache, transcript, demands, kRightQStage);
  const FieldMatrix q1 = decode_q_step(inst, lay, k, cache, transcript, demands, kLeftQStage);
  const FieldMatrix top = hstack(p11, mat_mul(p11, q2));
  const FieldMatrix permuted = vstack(top, mat_mul(q1.transpose(), top));

  const UserDemand& mine = demand_of(demands, k);
  auto perm_of = [&](std::size_t i) -> const ColumnPermutation& {
    auto it = cache.permutations.find(i);
    if (it == cache.permutations.end() || it->second.size() != inst.r) {
      throw ProtocolError("inconsistent permutation metadata for matrix " + std::to_string(i));
    }
    return it->second;
  };
  const ColumnPermutation& p1 = perm_of(mine.d1);
  const ColumnPermutation& p2 = perm_of(mine.d2);
  FieldMatrix out(inst.field, inst.r, inst.r);
  for (std::size_t x = 0; x < inst.r; ++x) {
    for (std::size_t y = 0; y < inst.r; ++y) out(p1[x], p2[y]) = permuted(x, y);
  }
  return out;
}

Rational ColumnScheme::closed_form_load(const ProblemInstance& inst) const {
  return analysis::load_Rcol(inst.K, inst.N, inst.a(), inst.M);
}

Rational f_group_length(int i, const ProblemInstance& inst) {
  const analysis::Partition p = analysis::partition_for(inst.K, inst.N, inst.M);
  const Rational a = inst.r > inst.s ? Rational(1) : inst.a();
  return analysis::f_group_length(i, inst.K, p.t, p.alpha, a);
}

}  // namespace ccmm
