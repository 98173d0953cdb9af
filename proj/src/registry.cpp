#include "fastnorm/registry.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace fastnorm {

namespace {

struct NamedKind {
  std::string_view name;
  NormKind kind;
};

constexpr std::array kNames{
    NamedKind{"dinf", NormKind::dinf},
    NamedKind{"d1", NormKind::d1},
    NamedKind{"d2", NormKind::d2},
    NamedKind{"lp", NormKind::lp},
    NamedKind{"tcost", NormKind::tcost},
    NamedKind{"mukherjee", NormKind::mukherjee},
    NamedKind{"mukherjee-hat", NormKind::mukherjee_hat},
    NamedKind{"barni", NormKind::barni},
    NamedKind{"seol-cheun", NormKind::seol_cheun},
    NamedKind{"rosenfeld-pfaltz", NormKind::rosenfeld_pfaltz},
};

constexpr std::array kKinds{NormKind::dinf,      NormKind::d1,           NormKind::d2,    NormKind::lp,
                            NormKind::tcost,     NormKind::mukherjee,    NormKind::mukherjee_hat,
                            NormKind::barni,     NormKind::seol_cheun,   NormKind::rosenfeld_pfaltz};

}  // namespace

NormKind parse_norm_kind(std::string_view name) {
  std::string canonical(name);
  std::replace(canonical.begin(), canonical.end(), '_', '-');
  for (const auto& entry : kNames) {
    if (entry.name == canonical) return entry.kind;
  }
  throw std::invalid_argument("unknown norm name: " + std::string(name));
}

std::string_view norm_name(NormKind kind) {
  for (const auto& entry : kNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "?";
}

std::span<const NormKind> all_norm_kinds() { return kKinds; }

NormParams resolve_params(NormKind kind, Index n, const NormParams& params) {
  NormParams out = params;
  switch (kind) {
    case NormKind::lp:
      if (!out.p) throw std::invalid_argument("lp needs p");
      break;
    case NormKind::tcost:
      if (!out.t) throw std::invalid_argument("tcost needs t");
      break;
    case NormKind::mukherjee_hat:
      if (!out.delta) out.delta = barni_optimal(n).delta_star;
      break;
    case NormKind::seol_cheun:
      if (!out.a || !out.b) throw std::invalid_argument("seol-cheun needs a and b");
      break;
    default:
      break;
  }
  return out;
}

NormEvaluator make_evaluator(NormKind kind, Index n, const NormParams& params) {
  return visit_norm(kind, n, params, [](auto f) -> NormEvaluator {
    return [f](const Eigen::Ref<const Eigen::VectorXd>& x) { return static_cast<double>(f(x)); };
  });
}

}  // namespace fastnorm
