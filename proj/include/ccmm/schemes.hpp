#pragma once

#include <memory>
#include <optional>
#include <string>

#include "ccmm/model.hpp"
#include "ccmm/schemes/baselines.hpp"
#include "ccmm/schemes/column_partition.hpp"
#include "ccmm/schemes/row_partition.hpp"

namespace ccmm {

enum class SchemeKind { agnostic, uncoded, multireq, row, col };

SchemeKind parse_scheme_kind(const std::string& text);
std::string to_string(SchemeKind kind);

struct SchemeConfig {
  SchemeKind kind = SchemeKind::row;
  /// MAN parameter for agnostic / multireq; derived from M when absent.
  std::optional<int> t;
  /// Replication groups for row; best_ell when absent.
  std::optional<int> ell;
};

/// Throws ValidationError if t cannot be derived from the instance memory.
std::unique_ptr<Scheme> make_scheme(const SchemeConfig& cfg, const ProblemInstance& inst);

}  // namespace ccmm
