#include "ccmm/model.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace ccmm {

std::uint64_t ProblemInstance::cache_budget() const {
  const Rational total = M * Rational(static_cast<long long>(s)) * Rational(static_cast<long long>(r));
  return floor_of(total).convert_to<std::uint64_t>();
}

void ProblemInstance::validate() const {
  if (K < 1) throw ValidationError("K must be at least 1");
  if (N < 2) throw ValidationError("N must be at least 2");
  if (s < 1 || r < 1) throw ValidationError("s and r must be at least 1");
  if (M < 0 || M > N) throw ValidationError("M must lie in [0, N]");
}

UserDemand normalize_demand(std::size_t i, std::size_t j) {
  if (i <= j) return {i, j, false};
  return {j, i, true};
}

DemandAssignment worst_case_demands(const ProblemInstance& inst) {
  const auto K = static_cast<std::size_t>(inst.K);
  const auto N = static_cast<std::size_t>(inst.N);
  DemandAssignment out;
  if (N >= 2 * K) {
    for (std::size_t k = 1; k <= K; ++k) out.demands.push_back({2 * k - 1, 2 * k, false});
    return out;
  }
  out.worst_case_certified = false;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::set<std::pair<std::size_t, std::size_t>> used;
  for (std::size_t k = 1; 2 * k <= N; ++k) {
    pairs.emplace_back(2 * k - 1, 2 * k);
    used.insert(pairs.back());
  }
  for (std::size_t i = 1; i <= N; ++i) {
    for (std::size_t j = i; j <= N; ++j) {
      if (!used.count({i, j})) pairs.emplace_back(i, j);
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    const auto& [i, j] = pairs[k % pairs.size()];
    out.demands.push_back({i, j, false});
  }
  return out;
}

DemandVector random_demands(const ProblemInstance& inst, std::uint64_t seed) {
  DemandVector out;
  const auto N = static_cast<std::uint64_t>(inst.N);
  std::uint64_t state = splitmix64(seed ^ 0xD3A2B1C0FFEEULL);
  for (int k = 0; k < inst.K; ++k) {
    state = splitmix64(state);
    const std::size_t i = 1 + state % N;
    state = splitmix64(state);
    const std::size_t j = 1 + state % N;
    out.push_back(normalize_demand(i, j));
  }
  return out;
}

DemandVector parse_demands(const ProblemInstance& inst, const std::string& text) {
  DemandVector out;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    if (pair.empty()) continue;
    unsigned long i = 0, j = 0;
    char tail = 0;
    if (std::sscanf(pair.c_str(), " %lu , %lu %c", &i, &j, &tail) != 2) {
      throw std::invalid_argument("malformed demand pair '" + pair + "'");
    }
    if (i < 1 || j < 1 || i > static_cast<unsigned long>(inst.N) || j > static_cast<unsigned long>(inst.N)) {
      throw std::invalid_argument("demand index out of range in '" + pair + "'");
    }
    out.push_back(normalize_demand(i, j));
  }
  if (out.size() != static_cast<std::size_t>(inst.K)) {
    throw std::invalid_argument("expected " + std::to_string(inst.K) + " demand pairs, got " +
                                std::to_string(out.size()));
  }
  return out;
}

Library build_library(const ProblemInstance& inst, std::uint64_t seed) {
  std::vector<FieldMatrix> mats;
  mats.reserve(static_cast<std::size_t>(inst.N));
  for (int i = 1; i <= inst.N; ++i) {
    mats.push_back(random_matrix(inst.field, inst.s, inst.r, seed, static_cast<std::uint64_t>(i)));
  }
  return Library(std::move(mats));
}

void UserCache::put(const SegmentLabel& label, const FieldMatrix& m) {
  segments[label] = CacheSegment{m.rows(), m.cols(), m.entries()};
}

void UserCache::put(const SegmentLabel& label, std::vector<Symbol> symbols) {
  const std::size_t n = symbols.size();
  segments[label] = CacheSegment{1, n, std::move(symbols)};
}

const CacheSegment& UserCache::at(const SegmentLabel& label) const {
  auto it = segments.find(label);
  if (it == segments.end()) {
    throw ProtocolError("missing cache segment for matrix " + std::to_string(label.matrix) + " subset " +
                        to_string(label.subset));
  }
  return it->second;
}

FieldMatrix UserCache::matrix(const SegmentLabel& label, const FieldSpec& field) const {
  const CacheSegment& seg = at(label);
  return FieldMatrix(field, seg.rows, seg.cols, seg.symbols);
}

std::uint64_t UserCache::symbol_count() const {
  std::uint64_t total = 0;
  for (const auto& [label, seg] : segments) total += seg.symbols.size();
  return total;
}

std::string MessageTag::to_string() const {
  return "(" + family + "," + std::to_string(stage) + "," + ccmm::to_string(users) + "," + std::to_string(tier) + ")";
}

std::size_t Message::header_bytes() const {
  std::size_t total = 0;
  for (const auto& h : headers) total += h.byte_size();
  return total;
}

const Message* DeliveryTranscript::find_if_present(const MessageTag& tag) const {
  for (const auto& m : messages) {
    if (m.tag == tag) return &m;
  }
  return nullptr;
}

const Message& DeliveryTranscript::find(const MessageTag& tag) const {
  const Message* m = find_if_present(tag);
  if (m == nullptr) throw ProtocolError("missing message " + tag.to_string());
  return *m;
}

std::uint64_t DeliveryTranscript::payload_symbols() const {
  std::uint64_t total = 0;
  for (const auto& m : messages) total += m.payload.size();
  return total;
}

std::uint64_t DeliveryTranscript::header_bytes() const {
  std::uint64_t total = 0;
  for (const auto& m : messages) total += m.header_bytes();
  return total;
}

namespace {

struct Fnv1a {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  void byte(unsigned char b) {
    h ^= b;
    h *= 0x100000001B3ULL;
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) byte(static_cast<unsigned char>(v >> (8 * i)));
  }
  void str(const std::string& s) {
    u64(s.size());
    for (char c : s) byte(static_cast<unsigned char>(c));
  }
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::uint64_t DeliveryTranscript::digest() const {
  Fnv1a f;
  for (const auto& m : messages) {
    f.str(m.tag.to_string());
    f.u64(m.payload.size());
    for (Symbol s : m.payload) f.u64(s);
    for (const auto& h : m.headers) {
      f.u64(h.rank);
      for (auto b : h.basis_rows) f.u64(b);
    }
  }
  return f.h;
}

std::string DeliveryTranscript::dump() const {
  std::string out;
  for (const auto& m : messages) {
    Fnv1a f;
    for (Symbol s : m.payload) f.u64(s);
    out += m.tag.to_string() + " " + std::to_string(m.payload.size()) + " " + std::to_string(m.header_bytes()) +
           " " + hex64(f.h) + "\n";
  }
  return out;
}

LoadReport measure_load(const DeliveryTranscript& transcript, std::uint64_t B) {
  if (B == 0) throw std::invalid_argument("B must be positive");
  LoadReport rep;
  rep.total_payload_symbols = transcript.payload_symbols();
  rep.B = B;
  rep.load = Rational(BigInt(rep.total_payload_symbols), BigInt(B));
  rep.header_overhead_symbols = (transcript.header_bytes() + 7) / 8;
  return rep;
}

RunResult run_scheme(const Scheme& scheme, const ProblemInstance& inst, std::uint64_t seed,
                     const DemandVector& demands, const RunHooks& hooks) {
  inst.validate();
  scheme.validate(inst);
  if (demands.size() != static_cast<std::size_t>(inst.K)) throw std::invalid_argument("one demand per user required");
  for (const auto& d : demands) {
    if (d.d1 < 1 || d.d2 > static_cast<std::size_t>(inst.N) || d.d1 > d.d2) {
      throw std::invalid_argument("demand not normalized or out of range");
    }
  }
  RunResult res;
  res.library = build_library(inst, seed);
  res.caches = scheme.place(inst, res.library);
  const std::uint64_t budget = inst.cache_budget();
  for (std::size_t k = 0; k < res.caches.users.size(); ++k) {
    if (res.caches.users[k].symbol_count() > budget) {
      throw std::logic_error(scheme.name() + ": user " + std::to_string(k + 1) + " exceeds cache budget");
    }
  }
  res.transcript = scheme.deliver(inst, res.library, demands);
  if (hooks.corrupt_first_message && !res.transcript.messages.empty()) {
    for (Symbol& s : res.transcript.messages.front().payload) s = inst.field.add(s, 1);
  }
  res.load = measure_load(res.transcript, inst.B());
  for (int k = 1; k <= inst.K; ++k) {
    FieldMatrix product = scheme.decode(inst, k, res.caches.user(k), res.transcript, demands);
    if (demands[static_cast<std::size_t>(k - 1)].transposed) product = product.transpose();
    res.decoded.push_back(std::move(product));
  }
  return res;
}

bool verify_retrieval(const ProblemInstance& /*inst*/, const Library& lib, const DemandVector& demands,
                      const std::vector<FieldMatrix>& decoded) {
  if (decoded.size() != demands.size()) return false;
  for (std::size_t k = 0; k < demands.size(); ++k) {
    const UserDemand& d = demands[k];
    const std::size_t i = d.transposed ? d.d2 : d.d1;
    const std::size_t j = d.transposed ? d.d1 : d.d2;
    const FieldMatrix truth = mat_mul(lib(i).transpose(), lib(j));
    if (!(decoded[k] == truth)) return false;
  }
  return true;
}

void add_into(const FieldSpec& field, std::vector<Symbol>& acc, const std::vector<Symbol>& x) {
  if (acc.size() != x.size()) throw std::logic_error("summand length mismatch");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = field.add(acc[i], x[i]);
}

void subtract_from(const FieldSpec& field, std::vector<Symbol>& acc, const std::vector<Symbol>& x) {
  if (acc.size() != x.size()) throw std::logic_error("summand length mismatch");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = field.sub(acc[i], x[i]);
}

std::size_t subset_rank(const std::vector<UserSet>& ordered, const UserSet& set) {
  auto it = std::lower_bound(ordered.begin(), ordered.end(), set);
  if (it == ordered.end() || *it != set) throw std::logic_error("subset " + to_string(set) + " not enumerated");
  return static_cast<std::size_t>(it - ordered.begin());
}

}  // namespace ccmm
