#pragma once

#include <utility>
#include <vector>

#include "ccmm/model.hpp"

namespace ccmm {

/// Resolved row layout for a replication-group count ell.
struct RowLayout {
  int ell = 1;
  int t = 0;
  Rational alpha = 1;
  std::size_t tier1_block_rows = 0;  // rows per block indexed by a t-subset of [ell]
  std::size_t tier2_block_rows = 0;  // rows per block indexed by a (t+1)-subset
  std::vector<UserSet> tier1_sets;
  std::vector<UserSet> tier2_sets;

  /// First row and row count of the block for T (tier inferred from |T|).
  std::pair<std::size_t, std::size_t> rows_of(const UserSet& T) const;
};

/// Throws ValidationError on divisibility or range violations.
RowLayout row_layout(const ProblemInstance& inst, int ell);

/// Position of user k inside its replication group, in [1, ell].
int mod_position(int k, int ell);

/// The multicast summand for one block pair: packet of W_{d1,T}^T W_{d2,T} with inner dimension = block rows.
CompressedProduct row_partial_product(const FieldMatrix& w1_block, const FieldMatrix& w2_block);

class RowScheme final : public Scheme {
 public:
  explicit RowScheme(int ell) : ell_(ell) {}
  int ell() const noexcept { return ell_; }

  std::string name() const override { return "row"; }
  void validate(const ProblemInstance& inst) const override;
  CacheContents place(const ProblemInstance& inst, const Library& lib) const override;
  DeliveryTranscript deliver(const ProblemInstance& inst, const Library& lib,
                             const DemandVector& demands) const override;
  FieldMatrix decode(const ProblemInstance& inst, int k, const UserCache& cache,
                     const DeliveryTranscript& transcript, const DemandVector& demands) const override;
  Rational closed_form_load(const ProblemInstance& inst) const override;

 private:
  int ell_;
};

/// Minimizing ell of the analytic row-partition load; ties go to the smaller ell.
std::pair<int, Rational> best_ell(const ProblemInstance& inst);

}  // namespace ccmm
