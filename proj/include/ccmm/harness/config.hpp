#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "ccmm/model.hpp"
#include "ccmm/schemes.hpp"

namespace ccmm::harness {

struct ExperimentConfig {
  int K = 2;
  int N = 4;
  std::optional<std::size_t> s;
  std::optional<std::size_t> r;
  /// Column-row ratio, used when s or r is left to the suggester.
  std::optional<Rational> a;
  std::uint64_t q = FieldSpec::kDefaultModulus;
  std::optional<Rational> M;
  std::optional<int> t;
  std::optional<int> ell;
  SchemeKind scheme = SchemeKind::row;
  std::uint64_t seed = 1;
  /// "worst-case", "random", or explicit pairs "i,j;i,j;...".
  std::string demands = "worst-case";
  std::string out;
  std::string svg;
  std::string dump_transcript;
  int parallel = 1;
};

/// Applies one key=value setting; throws std::invalid_argument for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Reads key=value lines ('#' starts a comment) on top of `base`.
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

/// Canonical string identifying a simulation cell (everything except output paths and parallelism).
std::string cell_key(const ExperimentConfig& cfg);

struct ResolvedRun {
  ProblemInstance instance;
  SchemeConfig scheme;
};

/// Fills in M from t when needed and picks (s, r) with the suggester when either is absent.
/// Throws ValidationError when the combination cannot run.
ResolvedRun resolve(const ExperimentConfig& cfg);

/// Smallest s (with r = a s integral) for which the scheme validates at the given memory, searching s <= limit.
std::optional<std::pair<std::size_t, std::size_t>> suggest_dimensions(int K, int N, const Rational& a,
                                                                      const Rational& M, const SchemeConfig& scheme,
                                                                      std::uint64_t q = FieldSpec::kDefaultModulus,
                                                                      std::size_t limit = 4096);

}  // namespace ccmm::harness
