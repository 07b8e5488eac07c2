#include "ccmm/harness/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ccmm::harness {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || v[0] == '-') throw std::invalid_argument("bad value for " + key + ": '" + v + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  const std::uint64_t x = parse_u64(key, v);
  if (x > 1000000) throw std::invalid_argument("value for " + key + " out of range");
  return static_cast<int>(x);
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "K") cfg.K = parse_int(key, v);
  else if (key == "N") cfg.N = parse_int(key, v);
  else if (key == "s") cfg.s = parse_u64(key, v);
  else if (key == "r") cfg.r = parse_u64(key, v);
  else if (key == "a") cfg.a = parse_rational(v);
  else if (key == "q") cfg.q = parse_u64(key, v);
  else if (key == "M") cfg.M = parse_rational(v);
  else if (key == "t") cfg.t = parse_int(key, v);
  else if (key == "ell") cfg.ell = parse_int(key, v);
  else if (key == "scheme") cfg.scheme = parse_scheme_kind(v);
  else if (key == "seed") cfg.seed = parse_u64(key, v);
  else if (key == "demands") cfg.demands = v;
  else if (key == "out") cfg.out = v;
  else if (key == "svg") cfg.svg = v;
  else if (key == "dump_transcript") cfg.dump_transcript = v;
  else if (key == "parallel") cfg.parallel = parse_int(key, v);
  else throw std::invalid_argument("unknown setting '" + key + "'");
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key=value");
    apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

std::string cell_key(const ExperimentConfig& cfg) {
  auto opt = [](const auto& o) { return o ? std::to_string(*o) : std::string("-"); };
  std::ostringstream k;
  k << "scheme=" << to_string(cfg.scheme) << ";K=" << cfg.K << ";N=" << cfg.N << ";s=" << opt(cfg.s)
    << ";r=" << opt(cfg.r) << ";a=" << (cfg.a ? to_string(*cfg.a) : "-") << ";q=" << cfg.q
    << ";M=" << (cfg.M ? to_string(*cfg.M) : "-") << ";t=" << opt(cfg.t) << ";ell=" << opt(cfg.ell)
    << ";seed=" << cfg.seed << ";demands=" << cfg.demands;
  return k.str();
}

std::optional<std::pair<std::size_t, std::size_t>> suggest_dimensions(int K, int N, const Rational& a,
                                                                      const Rational& M, const SchemeConfig& scheme,
                                                                      std::uint64_t q, std::size_t limit) {
  const FieldSpec field(q);
  for (std::size_t s = 1; s <= limit; ++s) {
    const Rational r = a * Rational(static_cast<long long>(s));
    if (!is_integer(r) || r < 1) continue;
    ProblemInstance inst{K, N, s, static_cast<std::size_t>(to_int64(r)), field, M};
    try {
      inst.validate();
      make_scheme(scheme, inst)->validate(inst);
      return std::make_pair(inst.s, inst.r);
    } catch (const ValidationError&) {
    }
  }
  return std::nullopt;
}

ResolvedRun resolve(const ExperimentConfig& cfg) {
  ResolvedRun out;
  out.scheme.kind = cfg.scheme;
  out.scheme.t = cfg.t;
  out.scheme.ell = cfg.ell;

  Rational a;
  if (cfg.s && cfg.r) {
    a = Rational(static_cast<long long>(*cfg.r), static_cast<long long>(*cfg.s));
  } else if (cfg.a) {
    a = *cfg.a;
  } else {
    throw std::invalid_argument("either both s and r, or a, must be given");
  }
  if (a <= 0) throw std::invalid_argument("a must be positive");

  Rational M;
  if (cfg.M) {
    M = *cfg.M;
  } else if (cfg.t) {
    M = cfg.scheme == SchemeKind::agnostic ? agnostic_memory(cfg.K, cfg.N, a, *cfg.t)
                                           : Rational(cfg.N) * Rational(*cfg.t) / Rational(cfg.K);
  } else {
    throw std::invalid_argument("either M or t must be given");
  }

  const FieldSpec field(cfg.q);
  if (cfg.s && cfg.r) {
    out.instance = ProblemInstance{cfg.K, cfg.N, *cfg.s, *cfg.r, field, M};
  } else {
    const auto dims = suggest_dimensions(cfg.K, cfg.N, a, M, out.scheme, cfg.q);
    if (!dims) throw ValidationError("no (s, r) with r/s = " + to_string(a) + " satisfies the scheme constraints");
    out.instance = ProblemInstance{cfg.K, cfg.N, dims->first, dims->second, field, M};
  }
  out.instance.validate();
  return out;
}

}  // namespace ccmm::harness
