#pragma once

#include <string>
#include <vector>

#include "ccmm/model.hpp"

namespace ccmm::harness {

struct AcceptanceOptions {
  std::vector<int> Ks{2, 3, 4};
  std::vector<int> Ns{4, 8, 20};
  std::vector<Rational> as{Rational(1, 2), Rational(1), Rational(2)};
  int seeds = 20;
  /// Largest s the suggester may pick for a fuzz cell.
  std::size_t s_limit = 64;
  RunHooks hooks;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the ten acceptance criteria. Matrix-driven criteria pass vacuously (with a note) on an empty matrix.
std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opts);

bool matrix_is_empty(const AcceptanceOptions& opts);

}  // namespace ccmm::harness
