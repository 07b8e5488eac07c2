#include <stdexcept>

#include "ccmm/schemes.hpp"

namespace ccmm {
namespace {

int derive_t(const ProblemInstance& inst, SchemeKind kind) {
  for (int t = 0; t <= inst.K; ++t) {
    const Rational Mt = kind == SchemeKind::agnostic ? agnostic_memory(inst.K, inst.N, inst.a(), t)
                                                     : Rational(inst.N) * Rational(t) / Rational(inst.K);
    if (Mt == inst.M) return t;
  }
  throw ValidationError("M = " + to_string(inst.M) + " is not a corner of the " + to_string(kind) + " scheme");
}

}  // namespace

SchemeKind parse_scheme_kind(const std::string& text) {
  if (text == "agnostic") return SchemeKind::agnostic;
  if (text == "uncoded") return SchemeKind::uncoded;
  if (text == "multireq") return SchemeKind::multireq;
  if (text == "row") return SchemeKind::row;
  if (text == "col") return SchemeKind::col;
  throw std::invalid_argument("unknown scheme '" + text + "'");
}

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::agnostic: return "agnostic";
    case SchemeKind::uncoded: return "uncoded";
    case SchemeKind::multireq: return "multireq";
    case SchemeKind::row: return "row";
    case SchemeKind::col: return "col";
  }
  return "?";
}

std::unique_ptr<Scheme> make_scheme(const SchemeConfig& cfg, const ProblemInstance& inst) {
  switch (cfg.kind) {
    case SchemeKind::agnostic:
      return std::make_unique<AgnosticScheme>(cfg.t ? *cfg.t : derive_t(inst, cfg.kind));
    case SchemeKind::uncoded:
      return std::make_unique<UncodedScheme>();
    case SchemeKind::multireq:
      return std::make_unique<MultiRequestScheme>(cfg.t ? *cfg.t : derive_t(inst, cfg.kind));
    case SchemeKind::row:
      return std::make_unique<RowScheme>(cfg.ell ? *cfg.ell : best_ell(inst).first);
    case SchemeKind::col:
      return std::make_unique<ColumnScheme>();
  }
  throw std::logic_error("unhandled scheme kind");
}

}  // namespace ccmm
