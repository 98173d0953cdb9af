#include "doctest.h"

#include <random>

#include "fastnorm/bench/bench.hpp"
#include "oracles.hpp"

using namespace fastnorm;
using namespace fastnorm::bench;

namespace {

std::uint64_t u(Index n) { return static_cast<std::uint64_t>(n); }

}  // namespace

TEST_CASE("operation counts of the linear-time norms") {
  for (Index n : {2, 4, 8, 64}) {
    CAPTURE(n);
    CHECK(count_ops("dinf", n) == OpCount{u(n), u(n) - 1, 0, 0, 0});
    CHECK(count_ops("d1", n) == OpCount{u(n), 0, u(n) - 1, 0, 0});
    CHECK(count_ops("d2", n) == OpCount{0, 0, u(n) - 1, u(n), 1});
    CHECK(count_ops("seol-cheun", n) == OpCount{u(n), u(n) - 1, u(n), 2, 0});
  }
}

TEST_CASE("sorting norms stay within the comparison budget") {
  for (Index n : {2, 4, 8, 64}) {
    CAPTURE(n);
    const std::uint64_t bound = sorting_comparison_bound(n);
    for (const char* name : {"tcost", "barni", "mukherjee", "mukherjee-hat"}) {
      CAPTURE(name);
      const OpCount c = count_ops(name, n);
      CHECK(c.abs == u(n));
      CHECK(c.comp <= bound);
      CHECK(c.sqrt == 0);
    }
    const OpCount m = count_ops("mukherjee", n);
    CHECK(m.add == u(n) - 1);
    CHECK(m.mult == u(n));
    const OpCount b = count_ops("barni", n);
    CHECK(b.add == u(n) - 1);
    CHECK(b.mult == u(n));
  }
  CHECK(sorting_comparison_bound(64) == 3 * 64 * 6 + 64);
  CHECK(sorting_comparison_bound(1) == 1);
}

TEST_CASE("comparisons grow like n log n over random inputs") {
  for (Index n : {16, 128, 1024}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      CHECK(count_ops("mukherjee", n, {}, seed).comp <= sorting_comparison_bound(n));
    }
  }
}

TEST_CASE("instrumented evaluation is bit-identical") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 40);
    const Vector x = fastnorm::testing::random_vector(rng, static_cast<int>(n));
    const VectorX<Counted> c = x.cast<Counted>();
    const BarniOptimal opt = barni_optimal(n);
    const Index t = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
    CHECK(value_of(d1(c)) == d1(x));
    CHECK(value_of(d2(c)) == d2(x));
    CHECK(value_of(dinf(c)) == dinf(x));
    CHECK(value_of(tcost_norm(c, t)) == tcost_norm(x, t));
    CHECK(value_of(mukherjee_norm(c)) == mukherjee_norm(x));
    CHECK(value_of(barni_norm(c, opt.spec())) == barni_norm(x, opt.spec()));
    CHECK(value_of(seol_cheun_norm(c, 0.6, 0.3)) == seol_cheun_norm(x, 0.6, 0.3));
  }
}

TEST_CASE("bench parameter defaults") {
  CHECK(*bench_params(NormKind::tcost, 5).t == 3);
  CHECK(*bench_params(NormKind::lp, 5).p == 3.0);
  CHECK(*bench_params(NormKind::seol_cheun, 5).a == 0.5);
  CHECK(*bench_params(NormKind::seol_cheun, 5).b == 0.3);
  NormParams given;
  given.t = 1;
  CHECK(*bench_params(NormKind::tcost, 5, given).t == 1);
}

TEST_CASE("throughput measurement") {
  const BenchResult base = run_bench("d2", 8, 3, 20000);
  CHECK(base.relative_to_d2 == 1.0);
  CHECK(base.evals_per_second > 0.0);
  CHECK(base.trials == 3);
  CHECK(base.batch == 20000);

  const BenchResult d1_64 = run_bench("d1", 64, 5, 20000);
  const BenchResult muk_64 = run_bench("mukherjee", 64, 5, 20000);
  CHECK(muk_64.evals_per_second < d1_64.evals_per_second);

  // Relative speed of the cheap norms depends on the machine; report only.
  const BenchResult inf = run_bench("dinf", 8, 5, 20000);
  WARN_MESSAGE(inf.relative_to_d2 >= 1.0, "dinf slower than d2 here: " << inf.relative_to_d2);

  CHECK_THROWS_AS(run_bench("d2", 8, 2, 100), std::invalid_argument);
  CHECK_THROWS_AS(run_bench("no-such-norm", 8), std::invalid_argument);
  CHECK_THROWS_AS(count_ops("no-such-norm", 8), std::invalid_argument);
}
