#pragma once

// Operation counts and throughput of the norm evaluators.

#include <cstdint>
#include <string>
#include <string_view>

#include "fastnorm/bench/counted.hpp"
#include "fastnorm/registry.hpp"

namespace fastnorm::bench {

/// Defaults used when benchmarking norms that need parameters:
/// p = 3, t = ceil(n / 2), a = 0.5, b = 0.3.
NormParams bench_params(NormKind kind, Index n, const NormParams& given = {});

/// Operations of one evaluation of the named norm on a random Gaussian input.
OpCount count_ops(std::string_view name, Index n, const NormParams& params = {}, std::uint64_t seed = 1);
OpCount count_ops(NormKind kind, Index n, const NormParams& params = {}, std::uint64_t seed = 1);

/// Comparison budget for the sorting norms: 3 n log2(n) + n.
std::uint64_t sorting_comparison_bound(Index n);

struct BenchResult {
  std::string norm;
  Index n = 0;
  double evals_per_second = 0.0;  ///< median over trials
  double relative_to_d2 = 0.0;    ///< evals_per_second / that of d2
  int trials = 0;
  Index batch = 0;
};

/// Times `trials` passes over `batch` pre-generated Gaussian inputs.
BenchResult run_bench(std::string_view name, Index n, int trials = 10, Index batch = 100000,
                      const NormParams& params = {}, std::uint64_t seed = 1);

}  // namespace fastnorm::bench
