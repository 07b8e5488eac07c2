#include "ccmm/harness/acceptance.hpp"

#include <functional>
#include <sstream>

#include "ccmm/analysis.hpp"
#include "ccmm/harness/commands.hpp"
#include "ccmm/harness/config.hpp"
#include "ccmm/harness/io.hpp"
#include "ccmm/schemes.hpp"

namespace ccmm::harness {
namespace {

using analysis::LoadPoint;

Rational Q(long long n, long long d = 1) { return Rational(n, d); }

ProblemInstance instance(int K, int N, std::size_t s, std::size_t r, const Rational& M) {
  return ProblemInstance{K, N, s, r, FieldSpec(), M};
}

// Collects failures for one criterion.
struct Check {
  int id;
  std::string name;
  std::vector<std::string> failures;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  template <typename F>
  void guarded(const std::string& what, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      failures.push_back(what + ": " + e.what());
    }
  }
  CheckResult result() const {
    std::string detail = note;
    if (!failures.empty()) {
      detail = std::to_string(failures.size()) + " failure(s); first: " + failures.front();
    }
    return {id, name, failures.empty(), detail};
  }
};

bool run_and_verify(const Scheme& scheme, const ProblemInstance& inst, std::uint64_t seed, const DemandVector& d,
                    const RunHooks& hooks, RunResult* keep = nullptr) {
  RunResult res = run_scheme(scheme, inst, seed, d, hooks);
  const bool ok = verify_retrieval(inst, res.library, d, res.decoded);
  if (keep) *keep = std::move(res);
  return ok;
}

std::uint64_t stage_symbols(const DeliveryTranscript& tr, int stage, int tier) {
  std::uint64_t total = 0;
  for (const auto& m : tr.messages) {
    if (m.tag.stage == stage && m.tag.tier == tier) total += m.payload.size();
  }
  return total;
}

CheckResult row_fixture(const AcceptanceOptions& opts) {
  Check c{1, "row-partition loads per ell and comparison loads at K=4, N=20, a=1/2, M=10", {}, ""};
  const ProblemInstance inst = instance(4, 20, 12, 6, 10);
  const DemandVector d = worst_case_demands(inst).demands;
  const std::vector<Rational> expected{4, 2, Q(40, 9), Q(20, 9)};
  for (int ell = 1; ell <= 4; ++ell) {
    c.guarded("ell=" + std::to_string(ell), [&] {
      RunResult res;
      const bool ok = run_and_verify(RowScheme(ell), inst, 1, d, opts.hooks, &res);
      c.expect(ok, "ell=" + std::to_string(ell) + " decode");
      c.expect(res.load.load == expected[static_cast<std::size_t>(ell - 1)],
               "ell=" + std::to_string(ell) + " load " + to_string(res.load.load));
    });
  }
  const auto best = best_ell(inst);
  c.expect(best.first == 2 && best.second == 2, "best_ell");
  c.expect(analysis::load_R1(4, 20, Q(1, 2), 10) == 3, "R1");
  c.expect(analysis::load_R2(4, 20, Q(1, 2), 10) == Q(8, 3), "R2");
  c.expect(analysis::load_sa(4, 20, Q(1, 2), 10) == Q(64, 21), "R_sa envelope");
  return c.result();
}

CheckResult col_fixture(const AcceptanceOptions& opts) {
  Check c{2, "column-partition load 16/9 with rounds s^2/6 + s^2/4 + s^2/36", {}, ""};
  const std::size_t s = 12;
  const ProblemInstance inst = instance(4, 20, s, 6, 10);
  const DemandVector d = worst_case_demands(inst).demands;
  c.guarded("run", [&] {
    RunResult res;
    c.expect(run_and_verify(ColumnScheme(), inst, 1, d, opts.hooks, &res), "decode");
    c.expect(res.load.load == Q(16, 9), "load " + to_string(res.load.load));
    c.expect(stage_symbols(res.transcript, 1, 0) == s * s / 6, "round 0");
    c.expect(stage_symbols(res.transcript, 1, 1) == s * s / 4, "round 1");
    c.expect(stage_symbols(res.transcript, 1, 2) == s * s / 36, "round 2");
  });
  return c.result();
}

CheckResult wide_col_fixture(const AcceptanceOptions& opts) {
  Check c{3, "column scheme at K=2, N=4, s=2, r=4, M=2 sends 5+2+2 symbols and decodes", {}, ""};
  const ProblemInstance inst = instance(2, 4, 2, 4, 2);
  const DemandVector d = worst_case_demands(inst).demands;
  const int seeds = std::max(opts.seeds, 20);
  for (int seed = 1; seed <= seeds; ++seed) {
    c.guarded("seed " + std::to_string(seed), [&] {
      RunResult res;
      c.expect(run_and_verify(ColumnScheme(), inst, static_cast<std::uint64_t>(seed), d, opts.hooks, &res),
               "decode seed " + std::to_string(seed));
      std::uint64_t step1 = 0;
      for (const auto& m : res.transcript.messages) {
        if (m.tag.stage == 1) step1 += m.payload.size();
      }
      c.expect(res.load.total_payload_symbols == 9, "total symbols");
      c.expect(step1 == 5, "step 1 symbols");
      c.expect(stage_symbols(res.transcript, 2, 1) + stage_symbols(res.transcript, 2, 2) == 2, "step 2 symbols");
      c.expect(stage_symbols(res.transcript, 3, 1) + stage_symbols(res.transcript, 3, 2) == 2, "step 3 symbols");
    });
  }
  c.note = std::to_string(seeds) + " seeds";
  return c.result();
}

CheckResult small_fixture(const AcceptanceOptions& opts) {
  Check c{4, "K=2, N=4, s=r=2, M=2: column 5 symbols, row packet 3 symbols, agnostic envelope 28/5", {}, ""};
  const ProblemInstance inst = instance(2, 4, 2, 2, 2);
  const DemandVector d = worst_case_demands(inst).demands;
  c.guarded("col", [&] {
    RunResult res;
    c.expect(run_and_verify(ColumnScheme(), inst, 1, d, opts.hooks, &res), "column decode");
    c.expect(res.load.total_payload_symbols == 5, "column symbols");
  });
  c.guarded("row", [&] {
    RunResult res;
    c.expect(run_and_verify(RowScheme(2), inst, 1, d, opts.hooks, &res), "row decode");
    c.expect(res.transcript.messages.size() == 1 && res.transcript.messages[0].payload.size() == 3, "row packet");
  });
  const Rational env = analysis::load_sa(2, 4, Q(1), 2) * Rational(static_cast<long long>(inst.B()));
  c.expect(env == Q(28, 5), "agnostic envelope symbols " + to_string(env));
  return c.result();
}

// One runnable corner configuration of the fuzz matrix.
struct Cell {
  std::string label;
  SchemeConfig scheme;
  ProblemInstance inst;
};

std::vector<Cell> corner_cells(const AcceptanceOptions& opts, int& skipped) {
  std::vector<Cell> cells;
  auto add = [&](int K, int N, const Rational& a, const Rational& M, SchemeConfig sc, const std::string& label) {
    const auto dims = suggest_dimensions(K, N, a, M, sc, FieldSpec::kDefaultModulus, opts.s_limit);
    if (!dims) {
      ++skipped;
      return;
    }
    cells.push_back({label, sc, instance(K, N, dims->first, dims->second, M)});
  };
  for (int K : opts.Ks) {
    for (int N : opts.Ns) {
      for (const Rational& a : opts.as) {
        const std::string base = "K=" + std::to_string(K) + " N=" + std::to_string(N) + " a=" + to_string(a);
        for (int t = 0; t <= K; ++t) {
          const Rational M = Rational(N) * Rational(t) / Rational(K);
          const std::string at = base + " M=" + to_string(M);
          add(K, N, a, M, {SchemeKind::uncoded, {}, {}}, "uncoded " + at);
          add(K, N, a, M, {SchemeKind::multireq, t, {}}, "multireq " + at);
          add(K, N, a, M, {SchemeKind::col, {}, {}}, "col " + at);
          for (int ell = 1; ell <= K; ++ell) add(K, N, a, M, {SchemeKind::row, {}, ell}, "row ell=" + std::to_string(ell) + " " + at);
          const Rational Ma = agnostic_memory(K, N, a, t);
          if (Ma <= N) add(K, N, a, Ma, {SchemeKind::agnostic, t, {}}, "agnostic t=" + std::to_string(t) + " " + base);
        }
      }
    }
  }
  return cells;
}

// Criteria 5 and 6 share the simulated cells.
std::pair<CheckResult, CheckResult> fuzz(const AcceptanceOptions& opts) {
  Check decode{5, "decode correctness and cache budget over the corner fuzz matrix", {}, ""};
  Check parity{6, "measured load equals the closed form at every simulated corner", {}, ""};
  int skipped = 0;
  const std::vector<Cell> cells = corner_cells(opts, skipped);
  std::size_t runs = 0;
  for (const Cell& cell : cells) {
    const auto scheme = make_scheme(cell.scheme, cell.inst);
    const Rational expected = scheme->closed_form_load(cell.inst);
    const DemandAssignment worst = worst_case_demands(cell.inst);
    for (int seed = 1; seed <= opts.seeds; ++seed) {
      // Alternate worst-case and random (possibly transposed or repeated) demands.
      const DemandVector d = seed % 2 == 1 ? worst.demands : random_demands(cell.inst, static_cast<std::uint64_t>(seed));
      decode.guarded(cell.label + " seed " + std::to_string(seed), [&] {
        RunResult res;
        ++runs;
        decode.expect(run_and_verify(*scheme, cell.inst, static_cast<std::uint64_t>(seed), d, opts.hooks, &res),
                      cell.label + " seed " + std::to_string(seed));
        for (const UserCache& uc : res.caches.users) {
          decode.expect(uc.symbol_count() <= cell.inst.cache_budget(), cell.label + " cache budget");
        }
        parity.expect(res.load.load == expected,
                      cell.label + " load " + to_string(res.load.load) + " vs " + to_string(expected));
      });
    }
  }
  decode.note = std::to_string(cells.size()) + " cells, " + std::to_string(runs) + " runs, " +
                std::to_string(skipped) + " configurations without a valid s <= " + std::to_string(opts.s_limit);
  parity.note = std::to_string(cells.size()) + " cells";
  return {decode.result(), parity.result()};
}

CheckResult group_lengths(const AcceptanceOptions& opts) {
  Check c{7, "F-group lengths equal the closed-form group length for every knower set", {}, ""};
  std::size_t groups = 0;
  for (int K : {3, 4, 5}) {
    const int N = 2 * K;
    for (const Rational& a : {Q(1, 2), Q(1)}) {
      for (int t = 0; t <= K; ++t) {
        for (const Rational& alpha : {Q(1), Q(1, 2)}) {
          if (alpha != 1 && t + 1 > K) continue;
          const Rational M = Rational(N) * (Rational(t + 1) - alpha) / Rational(K);
          const auto dims = suggest_dimensions(K, N, a, M, {SchemeKind::col, {}, {}}, FieldSpec::kDefaultModulus, 512);
          if (!dims) continue;
          const ProblemInstance inst = instance(K, N, dims->first, dims->second, M);
          const Library lib = build_library(inst, 7);
          const DemandVector d = worst_case_demands(inst).demands;
          const ColLayout lay = col_layout(inst);
          c.guarded("K=" + std::to_string(K) + " t=" + std::to_string(t), [&] {
            for (int k = 1; k <= K; ++k) {
              for (int i = 0; i <= t + 1; ++i) {
                const Rational expect = f_group_length(i, inst) * Rational(static_cast<long long>(inst.s * inst.s));
                UserSet others;
                for (int u = 1; u <= K; ++u) {
                  if (u != k) others.push_back(u);
                }
                for (const UserSet& pick : combinations(K - 1, i)) {
                  UserSet V;
                  for (int p : pick) V.push_back(others[static_cast<std::size_t>(p - 1)]);
                  const FGroup g = build_f_group(lay.lead, k, V, d[static_cast<std::size_t>(k - 1)],
                                                 [&](std::size_t m, const UserSet& T) {
                                                   const auto [c0, w] = lay.lead.cols_of(T);
                                                   return lib(m).block(0, inst.s, c0, w);
                                                 });
                  ++groups;
                  c.expect(Rational(static_cast<long long>(g.length())) == expect,
                           "K=" + std::to_string(K) + " t=" + std::to_string(t) + " alpha=" + to_string(alpha) +
                               " i=" + std::to_string(i) + " V=" + to_string(V));
                }
              }
            }
          });
        }
      }
    }
  }
  (void)opts;
  c.note = std::to_string(groups) + " groups";
  return c.result();
}

CheckResult bounds(const AcceptanceOptions& opts) {
  Check c{8, "cut-set and genie bounds below achievable loads on a 41-point grid; R2 = 2 x genie at corners", {}, ""};
  std::size_t points = 0;
  for (int K : opts.Ks) {
    for (int N : opts.Ns) {
      for (const Rational& a : opts.as) {
        const std::string tag = "K=" + std::to_string(K) + " N=" + std::to_string(N) + " a=" + to_string(a);
        for (int j = 0; j <= 40; ++j) {
          const Rational M = Rational(j) * Rational(N) / Rational(40);
          const std::vector<Rational> achievable{analysis::load_sa(K, N, a, M), analysis::load_R1(K, N, a, M),
                                                 analysis::load_R2(K, N, a, M), analysis::load_Rrow(K, N, a, M).value,
                                                 analysis::load_Rcol(K, N, a, M)};
          const Rational best = *std::min_element(achievable.begin(), achievable.end());
          ++points;
          c.expect(analysis::cutset_bound(K, N, a, M) <= best, tag + " cutset at M=" + to_string(M));
          if (auto genie = analysis::genie_bound(K, N, a, M)) {
            c.expect(*genie <= best, tag + " genie at M=" + to_string(M));
          }
        }
        if (analysis::genie_applies(K, N, a)) {
          const auto r2 = analysis::load_R2_corners(K, N, a);
          const auto gc = analysis::genie_converse_corners(K, N, a);
          for (std::size_t t = 0; t < r2.size(); ++t) {
            c.expect(r2[t].M == gc[t].M && r2[t].R == 2 * gc[t].R, tag + " factor 2 at t=" + std::to_string(t));
          }
        }
      }
    }
  }
  c.note = std::to_string(points) + " grid points";
  return c.result();
}

CheckResult compression(const AcceptanceOptions&) {
  Check c{9, "product compression round-trips, payload <= f, full length >= 99% at large q, f symmetry", {}, ""};
  const FieldSpec big;
  int full = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed = splitmix64(0xC0FFEEULL + static_cast<std::uint64_t>(trial));
    const std::size_t m = 1 + seed % 12, n = 1 + (seed >> 8) % 12, p = 1 + (seed >> 16) % 12;
    c.guarded("trial " + std::to_string(trial), [&] {
      const FieldMatrix prod = mat_mul(random_matrix(big, m, n, seed, 1), random_matrix(big, n, p, seed, 2));
      const CompressedProduct cp = compress_product(prod, n);
      c.expect(decompress_product(cp) == prod, "round trip trial " + std::to_string(trial));
      c.expect(cp.payload.size() <= f_len({m, n, p}), "payload bound trial " + std::to_string(trial));
      if (cp.payload.size() == f_len({m, n, p})) ++full;
    });
  }
  c.expect(full * 100 >= trials * 99, "full-length fraction " + std::to_string(full) + "/" + std::to_string(trials));
  for (std::size_t m = 1; m <= 16; ++m) {
    for (std::size_t n = 1; n <= 16; ++n) {
      for (std::size_t p = 1; p <= 16; ++p) c.expect(f_len({m, n, p}) == f_len({p, n, m}), "f symmetry");
    }
  }
  c.note = std::to_string(full) + "/" + std::to_string(trials) + " full length";
  return c.result();
}

CheckResult determinism(const AcceptanceOptions& opts) {
  Check c{10, "repeated runs and parallel sweeps are byte-identical", {}, ""};
  c.guarded("simulate", [&] {
    ExperimentConfig cfg;
    cfg.K = 4;
    cfg.N = 20;
    cfg.s = 12;
    cfg.r = 6;
    cfg.M = Rational(10);
    cfg.scheme = SchemeKind::col;
    const SimulationOutcome a = simulate(cfg, opts.hooks);
    const SimulationOutcome b = simulate(cfg, opts.hooks);
    c.expect(a.valid && b.valid, "simulate valid");
    c.expect(a.result.transcript.digest() == b.result.transcript.digest(), "transcript digest");
    c.expect(a.result.transcript.dump() == b.result.transcript.dump(), "transcript dump");
  });
  c.guarded("sweep", [&] {
    std::vector<ExperimentConfig> cells;
    for (int seed = 1; seed <= 8; ++seed) {
      for (int ell : {1, 2}) {
        ExperimentConfig cfg;
        cfg.K = 4;
        cfg.N = 20;
        cfg.s = 12;
        cfg.r = 6;
        cfg.M = Rational(10);
        cfg.ell = ell;
        cfg.seed = static_cast<std::uint64_t>(seed);
        cells.push_back(cfg);
        cells.push_back(cfg);  // duplicates must collapse
      }
    }
    const std::string one = sweep_csv(cells, 1);
    const std::string four = sweep_csv(cells, 4);
    c.expect(one == four, "sweep CSV differs across parallelism");
    c.expect(std::count(one.begin(), one.end(), '\n') == 17, "sweep deduplication");
  });
  c.guarded("analyze", [&] {
    c.expect(curves_to_csv(analyze_curves(4, 20, Q(1, 2), 40)) == curves_to_csv(analyze_curves(4, 20, Q(1, 2), 40)),
             "analyze CSV");
  });
  return c.result();
}

}  // namespace

bool matrix_is_empty(const AcceptanceOptions& opts) {
  return opts.Ks.empty() || opts.Ns.empty() || opts.as.empty() || opts.seeds <= 0;
}

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CheckResult> out;
  out.push_back(row_fixture(opts));
  out.push_back(col_fixture(opts));
  out.push_back(wide_col_fixture(opts));
  out.push_back(small_fixture(opts));
  auto [decode, parity] = fuzz(opts);
  out.push_back(decode);
  out.push_back(parity);
  out.push_back(group_lengths(opts));
  out.push_back(bounds(opts));
  out.push_back(compression(opts));
  out.push_back(determinism(opts));
  return out;
}

}  // namespace ccmm::harness
