#pragma once

// Closed-form optimal parameters and worst-case relative errors.

#include "fastnorm/norms.hpp"

namespace fastnorm {

/// Minimax-optimal sorted-weight approximation of d2 in dimension n.
struct BarniOptimal {
  Vector alpha;       ///< alpha_i = sqrt(i) - sqrt(i - 1), alpha_1 = 1
  double delta_star;  ///< 2 / (1 + sqrt(sum alpha_i^2))
  double mre;         ///< 1 - delta_star

  /// Folded weights delta_star * alpha_i, for barni_norm.
  WeightedD1Spec spec() const { return WeightedD1Spec(delta_star * alpha); }
};

/// sqrt(i) - sqrt(i - 1), evaluated as 1 / (sqrt(i) + sqrt(i - 1)).
double optimal_alpha(Index i);

/// S(n) = sum_{i <= n} alpha_i^2, shared by every closed form below.
double alpha_square_sum(Index n);

BarniOptimal barni_optimal(Index n);

/// 1 - 1/sqrt(S(n)).
double mukherjee_mre_theoretical(Index n);

/// Minimum of mukherjee_norm over the unit sphere, 1/sqrt(S(n)).
double mukherjee_min_on_sphere(Index n);

/// max(sqrt(t) - 1, 1 - t/sqrt(n)).
double tcost_mre_theoretical(Index n, Index t);

}  // namespace fastnorm
