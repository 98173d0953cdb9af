#include "fastnorm/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace fastnorm {

namespace {

void require_dimension(Index n) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
}

}  // namespace

double optimal_alpha(Index i) {
  if (i < 1) throw std::invalid_argument("alpha index must be >= 1");
  const auto k = static_cast<double>(i);
  return 1.0 / (std::sqrt(k) + std::sqrt(k - 1.0));
}

double alpha_square_sum(Index n) {
  require_dimension(n);
  double sum = 0.0;
  for (Index i = 1; i <= n; ++i) {
    const double a = optimal_alpha(i);
    sum += a * a;
  }
  return sum;
}

BarniOptimal barni_optimal(Index n) {
  require_dimension(n);
  BarniOptimal result;
  result.alpha.resize(n);
  for (Index i = 0; i < n; ++i) result.alpha(i) = optimal_alpha(i + 1);
  result.delta_star = 2.0 / (1.0 + std::sqrt(alpha_square_sum(n)));
  result.mre = 1.0 - result.delta_star;
  return result;
}

double mukherjee_min_on_sphere(Index n) {
  return 1.0 / std::sqrt(alpha_square_sum(n));
}

double mukherjee_mre_theoretical(Index n) {
  return 1.0 - mukherjee_min_on_sphere(n);
}

double tcost_mre_theoretical(Index n, Index t) {
  require_dimension(n);
  if (t < 1 || t > n) throw std::invalid_argument("tcost_mre_theoretical requires 1 <= t <= n");
  const auto tt = static_cast<double>(t);
  return std::max(std::sqrt(tt) - 1.0, 1.0 - tt / std::sqrt(static_cast<double>(n)));
}

}  // namespace fastnorm
