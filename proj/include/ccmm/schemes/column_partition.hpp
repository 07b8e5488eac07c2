#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "ccmm/model.hpp"

namespace ccmm {

/// Column partition of a w-column matrix into blocks indexed by t- and (t+1)-subsets of [K].
/// Tier-1 blocks occupy the leading alpha*w columns.
struct ColBlockLayout {
  int K = 1;
  int t = 0;
  std::size_t tier1_width = 0;
  std::size_t tier2_width = 0;
  std::vector<UserSet> tier1_sets;
  std::vector<UserSet> tier2_sets;
  /// Sets with nonzero width, lexicographic.
  std::vector<UserSet> sets;

  std::pair<std::size_t, std::size_t> cols_of(const UserSet& T) const;
  std::size_t total_width() const { return tier1_sets.size() * tier1_width + tier2_sets.size() * tier2_width; }
};

struct ColLayout {
  int t = 0;
  Rational alpha = 1;
  /// a > 1: W is split into an s x s leading block and an s x (r - s) coded remainder.
  bool split = false;
  ColBlockLayout lead;       // all r columns when !split, else the s leading columns
  ColBlockLayout remainder;  // the r - s trailing columns (split only)
};

/// Throws ValidationError on divisibility violations.
ColLayout col_layout(const ProblemInstance& inst);

using BlockPair = std::pair<UserSet, UserSet>;

/// Compressed sub-products desired by `user` that are known to exactly the users in `knowers`.
struct FGroup {
  int user = 0;
  UserSet knowers;
  std::vector<BlockPair> blocks;
  std::vector<CompressedProduct> products;

  std::size_t length() const;
  /// Concatenated padded packets.
  std::vector<Symbol> symbols() const;
};

/// Block pairs (T1, T2) with T1 n T2 = V, in lexicographic order.
std::vector<BlockPair> f_group_pairs(const ColBlockLayout& lay, const UserSet& knowers);

/// Returns the column block T of matrix index i.
using ColumnBlockSource = std::function<FieldMatrix(std::size_t, const UserSet&)>;

FGroup build_f_group(const ColBlockLayout& lay, int user, const UserSet& knowers, const UserDemand& demand,
                     const ColumnBlockSource& source);

/// All nonempty F-groups of user k, ordered by knower set. Uses the leading block when split.
std::vector<FGroup> col_build_F_groups(const ProblemInstance& inst, const Library& lib, const DemandVector& demands,
                                       int k);

class ColumnScheme final : public Scheme {
 public:
  std::string name() const override { return "col"; }
  void validate(const ProblemInstance& inst) const override;
  CacheContents place(const ProblemInstance& inst, const Library& lib) const override;
  DeliveryTranscript deliver(const ProblemInstance& inst, const Library& lib,
                             const DemandVector& demands) const override;
  FieldMatrix decode(const ProblemInstance& inst, int k, const UserCache& cache,
                     const DeliveryTranscript& transcript, const DemandVector& demands) const override;
  Rational closed_form_load(const ProblemInstance& inst) const override;
};

/// Closed-form F-group length (units of s^2) at this instance; uses a = 1 for the split path.
Rational f_group_length(int i, const ProblemInstance& inst);

}  // namespace ccmm
