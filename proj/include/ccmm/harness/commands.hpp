#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccmm/harness/acceptance.hpp"
#include "ccmm/harness/config.hpp"

namespace ccmm::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

struct SimulationOutcome {
  bool valid = false;
  std::string error;       // violated constraint when !valid
  std::string suggestion;  // "s=.. r=.." or explanation when !valid
  ResolvedRun run;
  RunResult result;
  bool verified = false;
  bool worst_case_certified = true;
  Rational closed_form = 0;
};

SimulationOutcome simulate(const ExperimentConfig& cfg, const RunHooks& hooks = {});

/// Prints a JSON report; exit 0 iff verified, 2 on validation failure.
int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err, const RunHooks& hooks = {});

int cmd_analyze(int K, int N, const Rational& a, int grid, const std::string& out_path, const std::string& svg_path,
                std::ostream& out);

int cmd_verify(const AcceptanceOptions& opts, std::ostream& out);

/// Deduplicated cells, rows sorted by cell key; independent of parallelism.
std::string sweep_csv(const std::vector<ExperimentConfig>& cells, int parallelism);

int cmd_sweep(const std::vector<ExperimentConfig>& cells, int parallelism, const std::string& out_path,
              std::ostream& out);

}  // namespace ccmm::harness
