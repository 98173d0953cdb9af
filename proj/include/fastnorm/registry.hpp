#pragma once

// Norms by name, for the CLI and the bench harness.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include "fastnorm/analytic.hpp"
#include "fastnorm/error_lab.hpp"
#include "fastnorm/norms.hpp"

namespace fastnorm {

enum class NormKind { dinf, d1, d2, lp, tcost, mukherjee, mukherjee_hat, barni, seol_cheun, rosenfeld_pfaltz };

/// Optional per-norm parameters. Missing values fall back to the defaults of
/// resolve_params, or are reported as errors where no default exists.
struct NormParams {
  std::optional<double> p;
  std::optional<Index> t;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> delta;
};

/// Canonical names: d1 d2 dinf lp tcost mukherjee mukherjee-hat barni
/// seol-cheun rosenfeld-pfaltz. Underscores are accepted for hyphens.
NormKind parse_norm_kind(std::string_view name);
std::string_view norm_name(NormKind kind);
std::span<const NormKind> all_norm_kinds();

/// Fills defaults: delta = delta*(n) for mukherjee-hat; the optimal spec is
/// implied for barni. Throws when lp lacks p, tcost lacks t, or seol-cheun
/// lacks a or b.
NormParams resolve_params(NormKind kind, Index n, const NormParams& params);

/// Calls visitor(f) where f(x) evaluates the configured norm on any Eigen
/// vector expression of dimension n (double or instrumented scalar).
template <typename Visitor>
decltype(auto) visit_norm(NormKind kind, Index n, const NormParams& given, Visitor&& visitor) {
  const NormParams params = resolve_params(kind, n, given);
  switch (kind) {
    case NormKind::dinf:
      return visitor([](const auto& x) { return dinf(x); });
    case NormKind::d1:
      return visitor([](const auto& x) { return d1(x); });
    case NormKind::d2:
      return visitor([](const auto& x) { return d2(x); });
    case NormKind::lp:
      return visitor([p = *params.p](const auto& x) {
        using Scalar = typename std::decay_t<decltype(x)>::Scalar;
        if constexpr (std::is_same_v<Scalar, double>) {
          return lp_norm(x, p);
        } else {
          throw std::invalid_argument("lp has no instrumented evaluator");
          return Scalar{};
        }
      });
    case NormKind::tcost:
      return visitor([t = *params.t](const auto& x) { return tcost_norm(x, t); });
    case NormKind::mukherjee:
      return visitor([](const auto& x) { return mukherjee_norm(x); });
    case NormKind::mukherjee_hat:
      return visitor([delta = *params.delta](const auto& x) { return normalized_mukherjee_norm(x, delta); });
    case NormKind::barni:
      return visitor([spec = barni_optimal(n).spec()](const auto& x) { return barni_norm(x, spec); });
    case NormKind::seol_cheun:
      return visitor([a = *params.a, b = *params.b](const auto& x) { return seol_cheun_norm(x, a, b); });
    case NormKind::rosenfeld_pfaltz:
      return visitor([](const auto& x) {
        using Scalar = typename std::decay_t<decltype(x)>::Scalar;
        if constexpr (std::is_same_v<Scalar, double>) {
          return rosenfeld_pfaltz_2d(x);
        } else {
          throw std::invalid_argument("rosenfeld-pfaltz has no instrumented evaluator");
          return Scalar{};
        }
      });
  }
  throw std::invalid_argument("unknown norm kind");
}

NormEvaluator make_evaluator(NormKind kind, Index n, const NormParams& params = {});

}  // namespace fastnorm
