// Command-line front end: simulate | analyze | verify | sweep.
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccmm/harness/commands.hpp"

namespace {

using namespace ccmm;
using namespace ccmm::harness;

// Raw flag values; applied on top of the config file so flags win.
struct InstanceFlags {
  std::string config;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "key=value config file ('#' comments)");
    for (const char* key : {"K", "N", "s", "r", "a", "q", "M", "t", "ell", "scheme", "seed", "demands", "out", "svg",
                            "parallel", "dump-transcript"}) {
      app->add_option(std::string("--") + key, values[key]);
    }
  }

  ExperimentConfig build() const {
    ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : load_config_file(config);
    for (const auto& [key, value] : values) {
      if (value.empty()) continue;
      std::string k = key;
      if (k == "dump-transcript") k = "dump_transcript";
      apply_setting(cfg, k, value);
    }
    return cfg;
  }
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// One cell per non-blank line: whitespace-separated key=value overrides of the base config.
std::vector<ExperimentConfig> read_cells(const std::string& path, const ExperimentConfig& base,
                                         const std::vector<std::uint64_t>& seeds) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open cells file " + path);
  std::vector<ExperimentConfig> cells;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    ExperimentConfig cfg = base;
    bool any = false;
    while (words >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + word + "'");
      apply_setting(cfg, word.substr(0, eq), word.substr(eq + 1));
      any = true;
    }
    if (!any) continue;
    if (seeds.empty()) {
      cells.push_back(cfg);
    } else {
      for (std::uint64_t seed : seeds) {
        cfg.seed = seed;
        cells.push_back(cfg);
      }
    }
  }
  return cells;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cache-aided matrix-multiplication retrieval simulator"};
  app.require_subcommand(1);

  InstanceFlags sim_flags;
  bool inject_fault = false;
  auto* sim = app.add_subcommand("simulate", "Run one scheme on one instance and verify decoding");
  sim_flags.attach(sim);
  sim->add_flag("--inject-fault", inject_fault, "Corrupt the first delivery message");

  int aK = 4, aN = 20, grid = 40;
  std::string a_text = "1/2", a_out, a_svg;
  auto* analyze = app.add_subcommand("analyze", "Emit closed-form load curves and bounds as CSV");
  analyze->add_option("--K", aK);
  analyze->add_option("--N", aN);
  analyze->add_option("--a", a_text, "Column-row ratio r/s");
  analyze->add_option("--grid", grid, "Number of grid intervals over [0, N]");
  analyze->add_option("--out", a_out, "CSV path (stdout when absent)");
  analyze->add_option("--svg", a_svg, "SVG plot path");

  AcceptanceOptions vopts;
  std::string v_Ks, v_Ns, v_as;
  bool v_fault = false;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--Ks", v_Ks, "Comma-separated user counts; bare flag for none")->expected(0, 1);
  verify->add_option("--Ns", v_Ns, "Comma-separated library sizes")->expected(0, 1);
  verify->add_option("--as", v_as, "Comma-separated ratios")->expected(0, 1);
  verify->add_option("--seeds", vopts.seeds, "Seeds per fuzz cell");
  verify->add_option("--s-limit", vopts.s_limit, "Largest suggested s in the fuzz matrix");
  verify->add_flag("--inject-fault", v_fault, "Corrupt the first delivery message of every run");

  InstanceFlags sweep_flags;
  std::string cells_path, sweep_seeds;
  auto* sweep = app.add_subcommand("sweep", "Run many simulate cells concurrently");
  sweep_flags.attach(sweep);
  sweep->add_option("--cells", cells_path, "File with one cell of key=value overrides per line")->required();
  sweep->add_option("--seeds", sweep_seeds, "Comma-separated seeds applied to every cell");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      RunHooks hooks;
      hooks.corrupt_first_message = inject_fault;
      return cmd_simulate(sim_flags.build(), std::cout, std::cerr, hooks);
    }
    if (*analyze) {
      return cmd_analyze(aK, aN, parse_rational(a_text), grid, a_out, a_svg, std::cout);
    }
    if (*verify) {
      if (verify->count("--Ks")) {
        vopts.Ks.clear();
        for (const auto& x : split(v_Ks, ',')) vopts.Ks.push_back(std::stoi(x));
      }
      if (verify->count("--Ns")) {
        vopts.Ns.clear();
        for (const auto& x : split(v_Ns, ',')) vopts.Ns.push_back(std::stoi(x));
      }
      if (verify->count("--as")) {
        vopts.as.clear();
        for (const auto& x : split(v_as, ',')) vopts.as.push_back(parse_rational(x));
      }
      vopts.hooks.corrupt_first_message = v_fault;
      return cmd_verify(vopts, std::cout);
    }
    if (*sweep) {
      const ExperimentConfig base = sweep_flags.build();
      std::vector<std::uint64_t> seeds;
      for (const auto& x : split(sweep_seeds, ',')) seeds.push_back(std::stoull(x));
      return cmd_sweep(read_cells(cells_path, base, seeds), base.parallel, base.out, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitFailure;
}
