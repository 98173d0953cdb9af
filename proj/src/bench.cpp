#include "fastnorm/bench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "fastnorm/sphere_sampler.hpp"

namespace fastnorm::bench {

namespace {

template <typename T>
inline void do_not_optimize(const T& value) {
  asm volatile("" : : "r,m"(value) : "memory");
}

Eigen::MatrixXd random_inputs(Index n, Index count, std::uint64_t seed) {
  return sample_gaussian(SamplerConfig{n, seed, count}, 0).points;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double median_throughput(NormKind kind, Index n, int trials, const Eigen::MatrixXd& inputs, const NormParams& params) {
  return visit_norm(kind, n, params, [&](auto f) {
    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(trials));
    for (int trial = 0; trial < trials; ++trial) {
      const auto start = std::chrono::steady_clock::now();
      for (Index j = 0; j < inputs.cols(); ++j) do_not_optimize(f(inputs.col(j)));
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      rates.push_back(static_cast<double>(inputs.cols()) / std::max(elapsed.count(), 1e-12));
    }
    return median(std::move(rates));
  });
}

}  // namespace

NormParams bench_params(NormKind kind, Index n, const NormParams& given) {
  NormParams p = given;
  if (kind == NormKind::lp && !p.p) p.p = 3.0;
  if (kind == NormKind::tcost && !p.t) p.t = (n + 1) / 2;
  if (kind == NormKind::seol_cheun) {
    if (!p.a) p.a = 0.5;
    if (!p.b) p.b = 0.3;
  }
  return p;
}

OpCount count_ops(std::string_view name, Index n, const NormParams& params, std::uint64_t seed) {
  return count_ops(parse_norm_kind(name), n, params, seed);
}

OpCount count_ops(NormKind kind, Index n, const NormParams& params, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("count_ops requires n >= 1");
  const VectorX<Counted> x = random_inputs(n, 1, seed).col(0).cast<Counted>();
  return visit_norm(kind, n, bench_params(kind, n, params), [&](auto f) {
    tally = OpCount{};
    do_not_optimize(f(x));
    return tally;
  });
}

std::uint64_t sorting_comparison_bound(Index n) {
  const double dn = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::floor(3.0 * dn * std::log2(std::max(dn, 1.0)) + dn));
}

BenchResult run_bench(std::string_view name, Index n, int trials, Index batch, const NormParams& params,
                      std::uint64_t seed) {
  const NormKind kind = parse_norm_kind(name);
  if (trials < 3) throw std::invalid_argument("run_bench needs at least 3 trials");
  if (batch < 1) throw std::invalid_argument("run_bench needs a positive batch");
  const Eigen::MatrixXd inputs = random_inputs(n, batch, seed);
  const NormParams resolved = bench_params(kind, n, params);

  BenchResult result;
  result.norm = std::string(norm_name(kind));
  result.n = n;
  result.trials = trials;
  result.batch = batch;
  result.evals_per_second = median_throughput(kind, n, trials, inputs, resolved);
  const double baseline =
      kind == NormKind::d2 ? result.evals_per_second : median_throughput(NormKind::d2, n, trials, inputs, {});
  result.relative_to_d2 = result.evals_per_second / baseline;
  return result;
}

}  // namespace fastnorm::bench
