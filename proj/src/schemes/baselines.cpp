#include "ccmm/schemes/baselines.hpp"

#include "ccmm/analysis.hpp"
#include "man.hpp"

namespace ccmm {
namespace {

std::size_t idx(std::size_t one_based) { return one_based - 1; }

const UserDemand& demand_of(const DemandVector& demands, int k) { return demands.at(static_cast<std::size_t>(k - 1)); }

void check_t(int t, int K) {
  if (t < 0 || t > K) throw ValidationError("t must lie in [0, K]");
}

SegmentLabel product_label(std::size_t i, std::size_t j, const UserSet& T) {
  return {SegmentKind::product_subfile, i, j, T};
}

}  // namespace

Rational agnostic_memory(int K, int N, const Rational& a, int t) {
  return Rational(static_cast<long long>(N) * (N + 1) / 2) * g_ratio(a, a) / a * Rational(t) / Rational(K);
}

// ---------------------------------------------------------------------------------------------
// Structure-agnostic

void AgnosticScheme::validate(const ProblemInstance& inst) const {
  check_t(t_, inst.K);
  const Rational Mt = agnostic_memory(inst.K, inst.N, inst.a(), t_);
  if (Mt != inst.M) {
    throw ValidationError("agnostic scheme with t=" + std::to_string(t_) + " requires M = " + to_string(Mt) +
                          ", got " + to_string(inst.M));
  }
  const std::uint64_t parts = binom_u64(inst.K, t_);
  if (inst.B() % parts != 0) {
    throw ValidationError("B = " + std::to_string(inst.B()) + " must be divisible by C(K,t) = " + std::to_string(parts));
  }
}

CacheContents AgnosticScheme::place(const ProblemInstance& inst, const Library& lib) const {
  const auto subsets = combinations(inst.K, t_);
  const std::size_t len = inst.B() / subsets.size();
  CacheContents cc;
  cc.users.resize(static_cast<std::size_t>(inst.K));
  for (std::size_t i = 1; i <= lib.size(); ++i) {
    for (std::size_t j = i; j <= lib.size(); ++j) {
      const CompressedProduct cp = compress_product(mat_mul(lib(i).transpose(), lib(j)), inst.s);
      const std::vector<Symbol> file = packet_symbols(cp);
      for (std::size_t x = 0; x < subsets.size(); ++x) {
        for (int k : subsets[x]) {
          UserCache& uc = cc.users[idx(static_cast<std::size_t>(k))];
          uc.put(product_label(i, j, subsets[x]), detail::chunk(file, x, len));
          uc.product_headers[{i, j}] = cp.header();
        }
      }
    }
  }
  return cc;
}

DeliveryTranscript AgnosticScheme::deliver(const ProblemInstance& inst, const Library& lib,
                                           const DemandVector& demands) const {
  const auto subsets = combinations(inst.K, t_);
  const std::size_t len = inst.B() / subsets.size();
  std::vector<CompressedProduct> files;
  for (const UserDemand& d : demands) files.push_back(compress_product(mat_mul(lib(d.d1).transpose(), lib(d.d2)), inst.s));
  DeliveryTranscript tr;
  for (const UserSet& S : combinations(inst.K, t_ + 1)) {
    Message msg{{"agnostic", 0, 0, S}, std::vector<Symbol>(len, 0), {}};
    for (int k : S) {
      const CompressedProduct& cp = files[idx(static_cast<std::size_t>(k))];
      add_into(inst.field, msg.payload, detail::chunk(packet_symbols(cp), subset_rank(subsets, without(S, k)), len));
      msg.headers.push_back(cp.header());
    }
    tr.messages.push_back(std::move(msg));
  }
  return tr;
}

FieldMatrix AgnosticScheme::decode(const ProblemInstance& inst, int k, const UserCache& cache,
                                   const DeliveryTranscript& transcript, const DemandVector& demands) const {
  const UserDemand& mine = demand_of(demands, k);
  const std::vector<Symbol> file = detail::man_recover(
      inst.field, inst.K, t_, k,
      [&](const UserSet& T) { return cache.at(product_label(mine.d1, mine.d2, T)).symbols; },
      [&](const UserSet& S) { return transcript.find({"agnostic", 0, 0, S}).payload; },
      [&](int j, const UserSet& T) {
        const UserDemand& d = demand_of(demands, j);
        return cache.at(product_label(d.d1, d.d2, T)).symbols;
      });
  PacketHeader header;
  if (auto it = cache.product_headers.find({mine.d1, mine.d2}); it != cache.product_headers.end()) {
    header = it->second;
  } else {
    // Empty cache: take our header from the unicast addressed to us.
    const Message& m = transcript.find({"agnostic", 0, 0, UserSet{k}});
    header = m.headers.front();
  }
  return decompress_product(from_packet(inst.field, {inst.r, inst.s, inst.r}, header, file));
}

Rational AgnosticScheme::closed_form_load(const ProblemInstance& inst) const {
  return Rational(inst.K - t_) / Rational(t_ + 1);
}

// ---------------------------------------------------------------------------------------------
// Uncoded baseline

namespace {

std::size_t uncoded_cols(const ProblemInstance& inst) {
  const Rational c = inst.M / Rational(inst.N) * Rational(static_cast<long long>(inst.r));
  if (!is_integer(c)) throw ValidationError("uncoded baseline requires (M/N) r to be an integer, got " + to_string(c));
  return static_cast<std::size_t>(to_int64(c));
}

SegmentLabel column_prefix_label(std::size_t i) { return {SegmentKind::raw_cols, i, 0, {}}; }

}  // namespace

void UncodedScheme::validate(const ProblemInstance& inst) const { (void)uncoded_cols(inst); }

CacheContents UncodedScheme::place(const ProblemInstance& inst, const Library& lib) const {
  const std::size_t c = uncoded_cols(inst);
  CacheContents cc;
  cc.users.resize(static_cast<std::size_t>(inst.K));
  for (auto& uc : cc.users) {
    for (std::size_t i = 1; i <= lib.size(); ++i) {
      if (c > 0) uc.put(column_prefix_label(i), lib(i).block(0, inst.s, 0, c));
    }
  }
  return cc;
}

DeliveryTranscript UncodedScheme::deliver(const ProblemInstance& inst, const Library& lib,
                                          const DemandVector& demands) const {
  const std::size_t c = uncoded_cols(inst);
  DeliveryTranscript tr;
  for (int k = 1; k <= inst.K; ++k) {
    const UserDemand& d = demand_of(demands, k);
    const FieldMatrix product = mat_mul(lib(d.d1).transpose(), lib(d.d2));
    Message msg{{"uncoded", 0, 0, UserSet{k}}, {}, {}};
    for (std::size_t x = 0; x < inst.r; ++x) {
      for (std::size_t y = 0; y < inst.r; ++y) {
        if (x >= c || y >= c) msg.payload.push_back(product(x, y));
      }
    }
    if (!msg.payload.empty()) tr.messages.push_back(std::move(msg));
  }
  return tr;
}

FieldMatrix UncodedScheme::decode(const ProblemInstance& inst, int k, const UserCache& cache,
                                  const DeliveryTranscript& transcript, const DemandVector& demands) const {
  const std::size_t c = uncoded_cols(inst);
  const UserDemand& d = demand_of(demands, k);
  FieldMatrix out(inst.field, inst.r, inst.r);
  if (c > 0) {
    const FieldMatrix corner =
        mat_mul(cache.matrix(column_prefix_label(d.d1), inst.field).transpose(), cache.matrix(column_prefix_label(d.d2), inst.field));
    for (std::size_t x = 0; x < c; ++x) {
      for (std::size_t y = 0; y < c; ++y) out(x, y) = corner(x, y);
    }
  }
  if (c == inst.r) return out;
  const Message& msg = transcript.find({"uncoded", 0, 0, UserSet{k}});
  std::size_t pos = 0;
  for (std::size_t x = 0; x < inst.r; ++x) {
    for (std::size_t y = 0; y < inst.r; ++y) {
      if (x >= c || y >= c) out(x, y) = msg.payload.at(pos++);
    }
  }
  return out;
}

Rational UncodedScheme::closed_form_load(const ProblemInstance& inst) const {
  return analysis::load_R1(inst.K, inst.N, inst.a(), inst.M);
}

// ---------------------------------------------------------------------------------------------
// Multi-request baseline

namespace {

SegmentLabel raw_chunk_label(std::size_t i, const UserSet& T) { return {SegmentKind::raw_rows, i, 0, T}; }

}  // namespace

void MultiRequestScheme::validate(const ProblemInstance& inst) const {
  check_t(t_, inst.K);
  const Rational Mt = Rational(inst.N) * Rational(t_) / Rational(inst.K);
  if (Mt != inst.M) {
    throw ValidationError("multi-request scheme with t=" + std::to_string(t_) + " requires M = " + to_string(Mt) +
                          ", got " + to_string(inst.M));
  }
  const std::uint64_t parts = binom_u64(inst.K, t_);
  if ((inst.s * inst.r) % parts != 0) {
    throw ValidationError("s*r must be divisible by C(K,t) = " + std::to_string(parts));
  }
}

CacheContents MultiRequestScheme::place(const ProblemInstance& inst, const Library& lib) const {
  const auto subsets = combinations(inst.K, t_);
  const std::size_t len = inst.s * inst.r / subsets.size();
  CacheContents cc;
  cc.users.resize(static_cast<std::size_t>(inst.K));
  for (std::size_t i = 1; i <= lib.size(); ++i) {
    for (std::size_t x = 0; x < subsets.size(); ++x) {
      for (int k : subsets[x]) {
        cc.users[idx(static_cast<std::size_t>(k))].put(raw_chunk_label(i, subsets[x]),
                                                      detail::chunk(lib(i).entries(), x, len));
      }
    }
  }
  return cc;
}

DeliveryTranscript MultiRequestScheme::deliver(const ProblemInstance& inst, const Library& lib,
                                               const DemandVector& demands) const {
  const auto subsets = combinations(inst.K, t_);
  const std::size_t len = inst.s * inst.r / subsets.size();
  DeliveryTranscript tr;
  for (const UserSet& S : combinations(inst.K, t_ + 1)) {
    for (int factor = 1; factor <= 2; ++factor) {
      Message msg{{"multireq", factor, 0, S}, std::vector<Symbol>(len, 0), {}};
      for (int k : S) {
        const UserDemand& d = demand_of(demands, k);
        const FieldMatrix& w = lib(factor == 1 ? d.d1 : d.d2);
        add_into(inst.field, msg.payload, detail::chunk(w.entries(), subset_rank(subsets, without(S, k)), len));
      }
      tr.messages.push_back(std::move(msg));
    }
  }
  return tr;
}

FieldMatrix MultiRequestScheme::decode(const ProblemInstance& inst, int k, const UserCache& cache,
                                       const DeliveryTranscript& transcript, const DemandVector& demands) const {
  auto recover = [&](int factor) {
    auto pick = [factor](const UserDemand& d) { return factor == 1 ? d.d1 : d.d2; };
    const std::size_t mine = pick(demand_of(demands, k));
    std::vector<Symbol> flat = detail::man_recover(
        inst.field, inst.K, t_, k, [&](const UserSet& T) { return cache.at(raw_chunk_label(mine, T)).symbols; },
        [&](const UserSet& S) { return transcript.find({"multireq", factor, 0, S}).payload; },
        [&](int j, const UserSet& T) { return cache.at(raw_chunk_label(pick(demand_of(demands, j)), T)).symbols; });
    return FieldMatrix(inst.field, inst.s, inst.r, std::move(flat));
  };
  return mat_mul(recover(1).transpose(), recover(2));
}

Rational MultiRequestScheme::closed_form_load(const ProblemInstance& inst) const {
  const Rational a = inst.a();
  return 2 * Rational(inst.K - t_) / Rational(t_ + 1) * a / g_ratio(a, a);
}

}  // namespace ccmm
