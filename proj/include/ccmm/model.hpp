#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccmm/compression.hpp"
#include "ccmm/linalg.hpp"
#include "ccmm/matrix.hpp"
#include "ccmm/rational.hpp"
#include "ccmm/subsets.hpp"

namespace ccmm {

/// A parameter combination a scheme cannot run with (divisibility, non-corner memory, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decoder could not find a message or cache segment it needs.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemInstance {
  int K = 1;
  int N = 2;
  std::size_t s = 1;
  std::size_t r = 1;
  FieldSpec field{};
  Rational M = 0;

  Rational a() const { return Rational(static_cast<long long>(r), static_cast<long long>(s)); }
  /// f(r, s, r): symbols in one product.
  std::uint64_t B() const { return f_len({r, s, r}); }
  /// floor(M s r).
  std::uint64_t cache_budget() const;
  /// Throws ValidationError when an instance invariant fails.
  void validate() const;
};

/// Normalized demand of one user: d1 <= d2 (1-based), transposed when the request was (d2, d1).
struct UserDemand {
  std::size_t d1 = 1;
  std::size_t d2 = 1;
  bool transposed = false;
  bool operator==(const UserDemand&) const = default;
};

using DemandVector = std::vector<UserDemand>;

UserDemand normalize_demand(std::size_t i, std::size_t j);

struct DemandAssignment {
  DemandVector demands;
  bool worst_case_certified = true;
};

/// User k demands (2k-1, 2k). When N < 2K, falls back to distinct non-isomorphic pairs round-robin
/// and clears worst_case_certified.
DemandAssignment worst_case_demands(const ProblemInstance& inst);

DemandVector random_demands(const ProblemInstance& inst, std::uint64_t seed);

/// Parses "i,j;i,j;..." with one pair per user.
DemandVector parse_demands(const ProblemInstance& inst, const std::string& text);

class Library {
 public:
  explicit Library(std::vector<FieldMatrix> matrices) : matrices_(std::move(matrices)) {}
  /// 1-based access.
  const FieldMatrix& operator()(std::size_t index) const { return matrices_.at(index - 1); }
  std::size_t size() const noexcept { return matrices_.size(); }
  const std::vector<FieldMatrix>& matrices() const noexcept { return matrices_; }

 private:
  std::vector<FieldMatrix> matrices_;
};

/// Matrix i is random_matrix(q, s, r, seed, stream = i).
Library build_library(const ProblemInstance& inst, std::uint64_t seed);

enum class SegmentKind { raw_rows, raw_cols, coded_q, product_subfile };

struct SegmentLabel {
  SegmentKind kind = SegmentKind::raw_rows;
  std::size_t matrix = 0;   // 1-based library index
  std::size_t matrix2 = 0;  // second index for product files, else 0
  UserSet subset;
  auto operator<=>(const SegmentLabel&) const = default;
};

struct CacheSegment {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Symbol> symbols;
};

struct UserCache {
  std::map<SegmentLabel, CacheSegment> segments;
  /// Uncounted metadata.
  std::map<std::size_t, ColumnPermutation> permutations;
  std::map<std::pair<std::size_t, std::size_t>, PacketHeader> product_headers;

  void put(const SegmentLabel& label, const FieldMatrix& m);
  void put(const SegmentLabel& label, std::vector<Symbol> symbols);
  bool has(const SegmentLabel& label) const { return segments.count(label) != 0; }
  /// Throws ProtocolError when absent.
  const CacheSegment& at(const SegmentLabel& label) const;
  FieldMatrix matrix(const SegmentLabel& label, const FieldSpec& field) const;
  std::uint64_t symbol_count() const;
};

struct CacheContents {
  std::vector<UserCache> users;  // users[k-1]
  const UserCache& user(int k) const { return users.at(static_cast<std::size_t>(k - 1)); }
};

struct MessageTag {
  std::string family;
  int stage = 0;
  int tier = 0;
  UserSet users;
  auto operator<=>(const MessageTag&) const = default;
  std::string to_string() const;
};

struct Message {
  MessageTag tag;
  std::vector<Symbol> payload;
  /// Headers of the summed packets, in summand order. Not load-counted.
  std::vector<PacketHeader> headers;
  std::size_t header_bytes() const;
};

struct DeliveryTranscript {
  std::vector<Message> messages;

  /// Throws ProtocolError when no message carries the tag.
  const Message& find(const MessageTag& tag) const;
  const Message* find_if_present(const MessageTag& tag) const;
  std::uint64_t payload_symbols() const;
  std::uint64_t header_bytes() const;
  /// FNV-1a 64 over tags, payloads and headers.
  std::uint64_t digest() const;
  /// One line per message: tag, payload length, header bytes, hex payload digest.
  std::string dump() const;
};

struct LoadReport {
  std::uint64_t total_payload_symbols = 0;
  std::uint64_t B = 0;
  Rational load = 0;
  /// Header bytes expressed in 64-bit symbols, rounded up.
  std::uint64_t header_overhead_symbols = 0;
};

LoadReport measure_load(const DeliveryTranscript& transcript, std::uint64_t B);

/// Placement, delivery and decoding for one scheme configuration.
class Scheme {
 public:
  virtual ~Scheme() = default;
  virtual std::string name() const = 0;
  /// Throws ValidationError naming the violated constraint.
  virtual void validate(const ProblemInstance& inst) const = 0;
  virtual CacheContents place(const ProblemInstance& inst, const Library& lib) const = 0;
  virtual DeliveryTranscript deliver(const ProblemInstance& inst, const Library& lib,
                                     const DemandVector& demands) const = 0;
  /// Product W_{d1}^T W_{d2} of user k's normalized demand, using only its cache and the transcript.
  virtual FieldMatrix decode(const ProblemInstance& inst, int k, const UserCache& cache,
                             const DeliveryTranscript& transcript, const DemandVector& demands) const = 0;
  /// Load predicted by the scheme's closed form at this instance.
  virtual Rational closed_form_load(const ProblemInstance& inst) const = 0;
};

struct RunHooks {
  /// Adds 1 to every payload symbol of the first message before decoding.
  bool corrupt_first_message = false;
};

struct RunResult {
  Library library{{}};
  CacheContents caches;
  DeliveryTranscript transcript;
  LoadReport load;
  /// Requested products, transpose flags applied.
  std::vector<FieldMatrix> decoded;
};

RunResult run_scheme(const Scheme& scheme, const ProblemInstance& inst, std::uint64_t seed,
                     const DemandVector& demands, const RunHooks& hooks = {});

bool verify_retrieval(const ProblemInstance& inst, const Library& lib, const DemandVector& demands,
                      const std::vector<FieldMatrix>& decoded);

// Helpers shared by scheme implementations.

/// Element-wise field sum; operands must have equal length.
void add_into(const FieldSpec& field, std::vector<Symbol>& acc, const std::vector<Symbol>& x);
void subtract_from(const FieldSpec& field, std::vector<Symbol>& acc, const std::vector<Symbol>& x);

/// Index of `set` in combinations(n, |set|).
std::size_t subset_rank(const std::vector<UserSet>& ordered, const UserSet& set);

}  // namespace ccmm
