#pragma once

// Reference implementations used only by the tests. They avoid the sorting
// kernel entirely so they can check it.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace fastnorm::testing {

// Sum of the t largest |x_i| by enumerating all t-subsets (n <= 20).
inline double brute_tcost(const Eigen::VectorXd& x, int t) {
  const int n = static_cast<int>(x.size());
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != t) continue;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) sum += std::abs(x(i));
    }
    best = std::max(best, sum);
  }
  return best;
}

inline double brute_mukherjee(const Eigen::VectorXd& x) {
  double best = 0.0;
  for (int t = 1; t <= x.size(); ++t) best = std::max(best, brute_tcost(x, t) / std::sqrt(double(t)));
  return best;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double range = 10.0) {
  std::uniform_real_distribution<double> u(-range, range);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = u(rng);
  return x;
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace fastnorm::testing
