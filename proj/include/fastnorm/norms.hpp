#pragma once

// Exact and approximate Euclidean norms over Eigen vectors.
//
// Every evaluator is a free function templated on the Eigen expression type, so
// it accepts VectorXd, fixed-size vectors, column blocks and Ref<> alike. The
// arithmetic is written as explicit coefficient loops (no Eigen reductions) so
// the operation sequence is fixed; the instrumented scalar in bench/counted.hpp
// relies on that to count operations exactly.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fastnorm {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Plain value of a scalar; overloaded (via ADL) by wrapper scalar types.
inline double value_of(double x) { return x; }

/// Weights applied to the sorted absolute components, largest first.
///
/// D_B (w_i = delta * alpha_i) and D_{a,b} (w_1 = a + b, w_i = b) are both of
/// this form.
class WeightedD1Spec {
public:
  WeightedD1Spec() = default;
  explicit WeightedD1Spec(Vector weights) : weights_(std::move(weights)) {
    for (Index i = 0; i < weights_.size(); ++i) {
      if (!(weights_(i) >= 0.0) || !std::isfinite(weights_(i))) {
        throw std::invalid_argument("weighted D1 weights must be finite and non-negative");
      }
    }
  }

  const Vector& weights() const noexcept { return weights_; }
  Index size() const noexcept { return weights_.size(); }

  /// True iff w_1 >= w_2 >= ... >= w_n > 0, the condition for a norm.
  bool is_norm() const noexcept {
    if (weights_.size() == 0 || weights_(weights_.size() - 1) <= 0.0) return false;
    for (Index i = 1; i < weights_.size(); ++i) {
      if (weights_(i) > weights_(i - 1)) return false;
    }
    return true;
  }

private:
  Vector weights_;
};

/// Sorted absolute components and their prefix sums.
/// prefix(t - 1) is the sum of the t largest absolute components.
template <typename Scalar>
struct SortedAbsProfile {
  VectorX<Scalar> ordered;
  VectorX<Scalar> prefix;
};

namespace detail {

template <typename Derived>
void check_vector(const Eigen::MatrixBase<Derived>& x) {
  static_assert(Derived::IsVectorAtCompileTime, "norms take vectors");
  if (x.size() < 1) throw std::invalid_argument("vector must have at least one component");
  for (Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(value_of(x(i)))) {
      throw std::invalid_argument("vector components must be finite");
    }
  }
}

// Runs fn on a scratch span of n scalars, on the stack when small.
template <typename Scalar, typename Fn>
decltype(auto) with_scratch(Index n, Fn&& fn) {
  constexpr Index kInline = 32;
  if (n <= kInline) {
    std::array<Scalar, kInline> buffer;
    return fn(std::span<Scalar>(buffer.data(), static_cast<std::size_t>(n)));
  }
  std::vector<Scalar> buffer(static_cast<std::size_t>(n));
  return fn(std::span<Scalar>(buffer));
}

template <typename Derived, typename Scalar>
void fill_abs(const Eigen::MatrixBase<Derived>& x, std::span<Scalar> out) {
  using std::abs;
  for (Index i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(i)] = abs(x(i));
}

template <typename Scalar>
void sort_descending(std::span<Scalar> values) {
  std::sort(values.begin(), values.end(), std::greater<>{});
}

inline constexpr std::size_t kInverseSqrtTableSize = 4096;

// 1/sqrt(t) for t = 1, 2, ...; tabulated once, immutable afterwards.
inline double inverse_sqrt(Index t) {
  static const std::vector<double> table = [] {
    std::vector<double> values(kInverseSqrtTableSize + 1, 0.0);
    for (std::size_t k = 1; k <= kInverseSqrtTableSize; ++k) {
      values[k] = 1.0 / std::sqrt(static_cast<double>(k));
    }
    return values;
  }();
  if (static_cast<std::size_t>(t) <= kInverseSqrtTableSize) return table[static_cast<std::size_t>(t)];
  return 1.0 / std::sqrt(static_cast<double>(t));
}

}  // namespace detail

/// Absolute components sorted non-increasingly, plus prefix sums.
template <typename Derived>
auto sorted_abs_profile(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  detail::check_vector(x);
  const Index n = x.size();
  SortedAbsProfile<Scalar> profile;
  profile.ordered.resize(n);
  profile.prefix.resize(n);
  std::span<Scalar> ordered(profile.ordered.data(), static_cast<std::size_t>(n));
  detail::fill_abs(x, ordered);
  detail::sort_descending(ordered);
  profile.prefix(0) = profile.ordered(0);
  for (Index t = 1; t < n; ++t) profile.prefix(t) = profile.prefix(t - 1) + profile.ordered(t);
  return profile;
}

// Chessboard norm.
template <typename Derived>
typename Derived::Scalar dinf(const Eigen::MatrixBase<Derived>& x) {
  using std::abs;
  detail::check_vector(x);
  auto best = abs(x(0));
  for (Index i = 1; i < x.size(); ++i) {
    const auto a = abs(x(i));
    if (a > best) best = a;
  }
  return best;
}

// City-block norm.
template <typename Derived>
typename Derived::Scalar d1(const Eigen::MatrixBase<Derived>& x) {
  using std::abs;
  detail::check_vector(x);
  auto sum = abs(x(0));
  for (Index i = 1; i < x.size(); ++i) sum = sum + abs(x(i));
  return sum;
}

/// Euclidean norm, unscaled: n multiplications, n - 1 additions, one sqrt.
template <typename Derived>
typename Derived::Scalar d2(const Eigen::MatrixBase<Derived>& x) {
  using std::sqrt;
  detail::check_vector(x);
  auto sum = x(0) * x(0);
  for (Index i = 1; i < x.size(); ++i) sum = sum + x(i) * x(i);
  return sqrt(sum);
}

/// Minkowski norm (sum |x_i|^p)^(1/p) for p >= 1; p = +inf gives dinf.
/// Evaluated with the components scaled by their maximum to avoid overflow.
template <typename Derived>
double lp_norm(const Eigen::MatrixBase<Derived>& x, double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
  const double largest = dinf(x);
  if (std::isinf(p) || largest == 0.0) return largest;
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) sum += std::pow(std::abs(x(i)) / largest, p);
  return largest * std::pow(sum, 1.0 / p);
}

/// t-cost norm: sum of the t largest absolute components, 1 <= t <= n.
///
/// Selects the top t with nth_element and sums them in non-increasing order,
/// which reproduces sorted_abs_profile(x).prefix(t - 1) bit for bit.
template <typename Derived>
typename Derived::Scalar tcost_norm(const Eigen::MatrixBase<Derived>& x, Index t) {
  using Scalar = typename Derived::Scalar;
  detail::check_vector(x);
  const Index n = x.size();
  if (t < 1 || t > n) throw std::invalid_argument("tcost_norm requires 1 <= t <= n");
  return detail::with_scratch<Scalar>(n, [&](std::span<Scalar> values) {
    detail::fill_abs(x, values);
    const auto top = values.begin() + t;
    if (t < n) std::nth_element(values.begin(), top - 1, values.end(), std::greater<>{});
    std::sort(values.begin(), top, std::greater<>{});
    Scalar sum = values[0];
    for (Index i = 1; i < t; ++i) sum = sum + values[static_cast<std::size_t>(i)];
    return sum;
  });
}

/// max_t w_t * D_t(x) with w indexed by t - 1.
template <typename Derived, typename WeightDerived>
typename Derived::Scalar weighted_tcost_norm(const Eigen::MatrixBase<Derived>& x,
                                             const Eigen::MatrixBase<WeightDerived>& w) {
  using Scalar = typename Derived::Scalar;
  detail::check_vector(x);
  const Index n = x.size();
  if (w.size() != n) throw std::invalid_argument("weighted_tcost_norm: weight length must equal n");
  for (Index t = 0; t < n; ++t) {
    if (!(w(t) >= 0.0)) throw std::invalid_argument("weighted_tcost_norm: weights must be non-negative");
  }
  return detail::with_scratch<Scalar>(n, [&](std::span<Scalar> values) {
    detail::fill_abs(x, values);
    detail::sort_descending(values);
    Scalar prefix = values[0];
    Scalar best = w(0) * prefix;
    for (Index t = 1; t < n; ++t) {
      prefix = prefix + values[static_cast<std::size_t>(t)];
      const Scalar candidate = w(t) * prefix;
      if (candidate > best) best = candidate;
    }
    return best;
  });
}

/// Weighted t-cost norm with w_t = 1/sqrt(t). Never exceeds d2(x).
///
/// One sort, one prefix-sum pass, and a max-scan against tabulated 1/sqrt(t).
template <typename Derived>
typename Derived::Scalar mukherjee_norm(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  detail::check_vector(x);
  const Index n = x.size();
  return detail::with_scratch<Scalar>(n, [&](std::span<Scalar> values) {
    detail::fill_abs(x, values);
    detail::sort_descending(values);
    Scalar prefix = values[0];
    Scalar best = prefix * detail::inverse_sqrt(1);
    for (Index t = 1; t < n; ++t) {
      prefix = prefix + values[static_cast<std::size_t>(t)];
      const Scalar candidate = prefix * detail::inverse_sqrt(t + 1);
      if (candidate > best) best = candidate;
    }
    return best;
  });
}

/// mukherjee_norm(x) / delta, 0 < delta <= 1.
template <typename Derived>
typename Derived::Scalar normalized_mukherjee_norm(const Eigen::MatrixBase<Derived>& x, double delta) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw std::invalid_argument("normalized_mukherjee_norm requires 0 < delta <= 1");
  }
  return mukherjee_norm(x) / delta;
}

/// Sum of spec weights times sorted absolute components.
template <typename Derived>
typename Derived::Scalar barni_norm(const Eigen::MatrixBase<Derived>& x, const WeightedD1Spec& spec) {
  using Scalar = typename Derived::Scalar;
  detail::check_vector(x);
  const Index n = x.size();
  if (spec.size() != n) throw std::invalid_argument("barni_norm: spec length must equal n");
  const Vector& w = spec.weights();
  return detail::with_scratch<Scalar>(n, [&](std::span<Scalar> values) {
    detail::fill_abs(x, values);
    detail::sort_descending(values);
    Scalar sum = w(0) * values[0];
    for (Index i = 1; i < n; ++i) sum = sum + w(i) * values[static_cast<std::size_t>(i)];
    return sum;
  });
}

/// a * dinf(x) + b * d1(x) in a single pass; exactly two multiplications.
template <typename Derived>
typename Derived::Scalar seol_cheun_norm(const Eigen::MatrixBase<Derived>& x, double a, double b) {
  using std::abs;
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("seol_cheun_norm requires a > 0 and b > 0");
  }
  detail::check_vector(x);
  auto first = abs(x(0));
  auto largest = first;
  auto sum = first;
  for (Index i = 1; i < x.size(); ++i) {
    const auto v = abs(x(i));
    if (v > largest) largest = v;
    sum = sum + v;
  }
  return a * largest + b * sum;
}

/// The weighted-D1 form of seol_cheun_norm: w_1 = a + b, w_i = b.
inline WeightedD1Spec seol_cheun_spec(Index n, double a, double b) {
  if (n < 1) throw std::invalid_argument("seol_cheun_spec requires n >= 1");
  Vector w = Vector::Constant(n, b);
  w(0) = a + b;
  return WeightedD1Spec(std::move(w));
}

/// max(floor(2 (d1(x) + 1) / 3), dinf(x)) for two-component vectors.
template <typename Derived>
double rosenfeld_pfaltz_2d(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != 2) throw std::invalid_argument("rosenfeld_pfaltz_2d requires n = 2");
  const double city = d1(x);
  return std::max(std::floor(2.0 * (city + 1.0) / 3.0), static_cast<double>(dinf(x)));
}

}  // namespace fastnorm
