#include "ccmm/harness/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>

#include "ccmm/analysis.hpp"
#include "ccmm/harness/io.hpp"

namespace ccmm::harness {
namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

DemandAssignment demands_for(const ExperimentConfig& cfg, const ProblemInstance& inst) {
  if (cfg.demands == "worst-case") return worst_case_demands(inst);
  if (cfg.demands == "random") return {random_demands(inst, cfg.seed), false};
  return {parse_demands(inst, cfg.demands), false};
}

// Suggestion text for a configuration that failed validation.
std::string suggest_for(const ExperimentConfig& cfg) {
  try {
    Rational a;
    if (cfg.s && cfg.r) a = Rational(static_cast<long long>(*cfg.r), static_cast<long long>(*cfg.s));
    else if (cfg.a) a = *cfg.a;
    else return "give s and r, or a";
    Rational M;
    if (cfg.M) M = *cfg.M;
    else if (cfg.t) M = cfg.scheme == SchemeKind::agnostic ? agnostic_memory(cfg.K, cfg.N, a, *cfg.t)
                                                          : Rational(cfg.N) * Rational(*cfg.t) / Rational(cfg.K);
    else return "give M or t";
    const SchemeConfig sc{cfg.scheme, cfg.t, cfg.ell};
    if (auto dims = suggest_dimensions(cfg.K, cfg.N, a, M, sc, cfg.q)) {
      return "s=" + std::to_string(dims->first) + " r=" + std::to_string(dims->second);
    }
    std::string corners;
    for (int t = 0; t <= cfg.K; ++t) {
      const Rational Mt = cfg.scheme == SchemeKind::agnostic ? agnostic_memory(cfg.K, cfg.N, a, t)
                                                             : Rational(cfg.N) * Rational(t) / Rational(cfg.K);
      if (Mt <= cfg.N) corners += (corners.empty() ? "" : ", ") + to_string(Mt);
    }
    return "no (s, r) rescaling satisfies the constraints; corner memories: " + corners;
  } catch (const std::exception& e) {
    return std::string("no suggestion: ") + e.what();
  }
}

}  // namespace

SimulationOutcome simulate(const ExperimentConfig& cfg, const RunHooks& hooks) {
  SimulationOutcome out;
  try {
    out.run = resolve(cfg);
    auto scheme = make_scheme(out.run.scheme, out.run.instance);
    scheme->validate(out.run.instance);
    const DemandAssignment dem = demands_for(cfg, out.run.instance);
    out.worst_case_certified = dem.worst_case_certified;
    out.result = run_scheme(*scheme, out.run.instance, cfg.seed, dem.demands, hooks);
    out.verified = verify_retrieval(out.run.instance, out.result.library, dem.demands, out.result.decoded);
    out.closed_form = scheme->closed_form_load(out.run.instance);
    out.valid = true;
  } catch (const ValidationError& e) {
    out.valid = false;
    out.error = e.what();
    out.suggestion = suggest_for(cfg);
  }
  return out;
}

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err, const RunHooks& hooks) {
  const SimulationOutcome o = simulate(cfg, hooks);
  if (!o.valid) {
    err << "validation failed: " << o.error << "\n";
    err << "suggestion: " << o.suggestion << "\n";
    return kExitInvalid;
  }
  const ProblemInstance& inst = o.run.instance;
  nlohmann::ordered_json j;
  j["scheme"] = to_string(cfg.scheme);
  j["K"] = inst.K;
  j["N"] = inst.N;
  j["s"] = inst.s;
  j["r"] = inst.r;
  j["q"] = inst.field.modulus();
  j["M"] = to_string(inst.M);
  if (cfg.scheme == SchemeKind::row) j["ell"] = static_cast<const RowScheme&>(*make_scheme(o.run.scheme, inst)).ell();
  j["seed"] = cfg.seed;
  j["load"] = to_string(o.result.load.load);
  j["closed_form_load"] = to_string(o.closed_form);
  j["payload_symbols"] = o.result.load.total_payload_symbols;
  j["B"] = o.result.load.B;
  j["header_overhead_symbols"] = o.result.load.header_overhead_symbols;
  j["messages"] = o.result.transcript.messages.size();
  j["transcript_digest"] = hex64(o.result.transcript.digest());
  j["worst_case_certified"] = o.worst_case_certified;
  j["verified"] = o.verified;
  out << j.dump(2) << "\n";
  if (!cfg.dump_transcript.empty()) write_file_atomic(cfg.dump_transcript, o.result.transcript.dump());
  return o.verified ? kExitOk : kExitFailure;
}

int cmd_analyze(int K, int N, const Rational& a, int grid, const std::string& out_path, const std::string& svg_path,
                std::ostream& out) {
  const std::vector<CurveRow> rows = analyze_curves(K, N, a, grid);
  const std::string csv = curves_to_csv(rows);
  if (out_path.empty()) {
    out << csv;
  } else {
    write_file_atomic(out_path, csv);
  }
  if (!svg_path.empty()) {
    const std::string title = "K=" + std::to_string(K) + ", N=" + std::to_string(N) + ", a=" + to_string(a);
    write_file_atomic(svg_path, curves_to_svg(rows, title));
  }
  return kExitOk;
}

int cmd_verify(const AcceptanceOptions& opts, std::ostream& out) {
  if (matrix_is_empty(opts)) out << "warning: empty instance matrix; matrix-driven checks are vacuous\n";
  const std::vector<CheckResult> results = run_acceptance(opts);
  bool all = true;
  for (const CheckResult& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.name;
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << "\n";
    all = all && r.passed;
  }
  return all ? kExitOk : kExitFailure;
}

std::string sweep_csv(const std::vector<ExperimentConfig>& cells, int parallelism) {
  std::map<std::string, ExperimentConfig> unique;
  for (const ExperimentConfig& c : cells) unique.emplace(cell_key(c), c);
  std::vector<std::pair<std::string, ExperimentConfig>> ordered(unique.begin(), unique.end());
  std::vector<std::string> lines(ordered.size());

  const auto n = static_cast<std::ptrdiff_t>(ordered.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, parallelism))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& [key, cfg] = ordered[static_cast<std::size_t>(i)];
    std::string line = csv_escape(key) + "," + to_string(cfg.scheme) + "," + std::to_string(cfg.K) + "," +
                       std::to_string(cfg.N) + ",";
    try {
      const SimulationOutcome o = simulate(cfg);
      if (!o.valid) {
        line += ",,,invalid," + csv_escape(o.error) + ",,,,,";
      } else {
        const ProblemInstance& inst = o.run.instance;
        char flt[32];
        std::snprintf(flt, sizeof flt, "%.10g", to_double(o.result.load.load));
        line += std::to_string(inst.s) + "," + std::to_string(inst.r) + "," + to_string(inst.M) + ",ok,," +
                to_string(o.result.load.load) + "," + flt + "," + std::to_string(o.result.load.total_payload_symbols) +
                "," + (o.verified ? "true" : "false") + "," + hex64(o.result.transcript.digest());
      }
    } catch (const std::exception& e) {
      line += ",,,error," + csv_escape(e.what()) + ",,,,,";
    }
    lines[static_cast<std::size_t>(i)] = line;
  }

  std::string csv = "cell,scheme,K,N,s,r,M,status,error,load,load_float,payload_symbols,verified,transcript_digest\n";
  for (const auto& l : lines) csv += l + "\n";
  return csv;
}

int cmd_sweep(const std::vector<ExperimentConfig>& cells, int parallelism, const std::string& out_path,
              std::ostream& out) {
  const std::string csv = sweep_csv(cells, parallelism);
  if (out_path.empty()) {
    out << csv;
  } else {
    write_file_atomic(out_path, csv);
  }
  return kExitOk;
}

}  // namespace ccmm::harness
