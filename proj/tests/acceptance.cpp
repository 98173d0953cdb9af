// Acceptance suite: one PASS/FAIL line per criterion, details under failures.
//
// Usage: acceptance [criterion ...]   (default: all of 1..9)

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fastnorm/analytic.hpp"
#include "fastnorm/bench/bench.hpp"
#include "fastnorm/cli/commands.hpp"
#include "fastnorm/error_lab.hpp"
#include "properties.hpp"

namespace {

using namespace fastnorm;
using Clock = std::chrono::steady_clock;

// Reference values, percent unless noted; index 0 is n = 2.
constexpr std::array<double, 7> kDeltaStar{0.960434, 0.939809, 0.926150, 0.916059, 0.908117, 0.901603, 0.896101};
constexpr std::array<double, 7> kBarniMreT{3.96, 6.02, 7.39, 8.39, 9.19, 9.84, 10.39};
constexpr std::array<double, 7> kMukherjeeMreT{7.61, 11.35, 13.75, 15.49, 16.83, 17.92, 18.82};

struct Table2Reference {
  double dab_are, dab_mre, db_are, db_mre, dmhat_are, dmhat_mre, dm_are, dm_mre, zn_are, zn_mre;
};
constexpr std::array<Table2Reference, 7> kTable2{{
    {2.00, 5.25, 2.41, 3.96, 2.48, 4.12, 2.55, 7.61, 2.40, 7.61},
    {2.39, 9.98, 3.00, 6.02, 2.97, 6.40, 4.14, 11.35, 3.63, 11.35},
    {2.57, 13.64, 3.44, 7.39, 3.28, 7.97, 5.21, 13.75, 4.29, 13.75},
    {2.68, 16.59, 3.77, 8.39, 3.53, 9.16, 5.98, 15.47, 4.65, 15.46},
    {2.73, 18.88, 4.01, 9.19, 3.73, 10.12, 6.55, 16.80, 4.85, 16.79},
    {2.76, 20.67, 4.18, 9.84, 3.92, 10.91, 7.00, 17.90, 5.00, 17.86},
    {2.77, 21.92, 4.31, 10.39, 4.10, 11.59, 7.35, 18.78, 5.04, 18.75},
}};

struct Table3Reference {
  double delta_hat, are, mre;
};
constexpr std::array<Table3Reference, 7> kTable3{{
    {0.961971, 2.41, 3.96},
    {0.943192, 2.79, 6.02},
    {0.931336, 2.99, 7.39},
    {0.922654, 3.13, 8.40},
    {0.915927, 3.23, 9.18},
    {0.910619, 3.31, 9.84},
    {0.905850, 3.40, 10.39},
}};

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    details.push_back(what);
  }
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Data records of a command CSV keyed by n, as column name -> value.
std::map<Index, std::map<std::string, std::string>> parse_csv(const std::string& text) {
  std::map<Index, std::map<std::string, std::string>> rows;
  std::vector<std::string> header;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (header.empty()) {
      header = cells;
      continue;
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
    rows[std::stol(cells.at(0))] = row;
  }
  return rows;
}

double num(const std::map<std::string, std::string>& row, const std::string& key) { return std::stod(row.at(key)); }

cli::RunSettings table_settings(bool fast) {
  cli::RunSettings s = cli::RunSettings::defaults(fast);
  s.seed = 42;
  return s;
}

// Full-mode table2 output, shared by criteria 3, 4 and 9.
const std::string& full_table2() {
  static const std::string csv = cli::table2_csv(table_settings(false));
  return csv;
}

Outcome criterion1() {
  Outcome out;
  const auto start = Clock::now();
  std::array<double, 7> values{};
  for (Index n = 2; n <= 8; ++n) values[static_cast<std::size_t>(n - 2)] = barni_optimal(n).delta_star;
  const double elapsed = seconds_since(start);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string got = fmt("%.6f", values[i]);
    out.check(got == fmt("%.6f", kDeltaStar[i]),
              fmt("n=%zu: delta* %s, expected %.6f", i + 2, got.c_str(), kDeltaStar[i]));
  }
  out.check(elapsed < 1e-3, fmt("took %.3g s", elapsed));
  return out;
}

Outcome criterion2() {
  Outcome out;
  const auto start = Clock::now();
  std::array<double, 7> barni{};
  std::array<double, 7> muk{};
  for (Index n = 2; n <= 8; ++n) {
    barni[static_cast<std::size_t>(n - 2)] = 100.0 * barni_optimal(n).mre;
    muk[static_cast<std::size_t>(n - 2)] = 100.0 * mukherjee_mre_theoretical(n);
  }
  const double elapsed = seconds_since(start);
  for (std::size_t i = 0; i < 7; ++i) {
    out.check(std::abs(barni[i] - kBarniMreT[i]) <= 0.005,
              fmt("n=%zu: D_B MRE_t %.4f, expected %.2f", i + 2, barni[i], kBarniMreT[i]));
    out.check(std::abs(muk[i] - kMukherjeeMreT[i]) <= 0.005,
              fmt("n=%zu: D_M MRE_t %.4f, expected %.2f", i + 2, muk[i], kMukherjeeMreT[i]));
  }
  out.check(elapsed < 1e-3, fmt("took %.3g s", elapsed));
  return out;
}

void barni_agreement(Outcome& out, const std::string& csv, double tolerance, const char* mode) {
  const auto rows = parse_csv(csv);
  for (Index n = 2; n <= 8; ++n) {
    const auto& row = rows.at(n);
    const double e = num(row, "db_mre_e");
    const double t = num(row, "db_mre_t");
    out.check(std::abs(e - t) <= tolerance + 1e-9,
              fmt("%s n=%ld: D_B MRE_e %.2f vs MRE_t %.2f (tolerance %.2f)", mode, static_cast<long>(n), e, t,
                  tolerance));
  }
}

Outcome criterion3() {
  Outcome out;
  const auto start = Clock::now();
  const std::string fast = cli::table2_csv(table_settings(true));
  const double fast_seconds = seconds_since(start);
  barni_agreement(out, fast, 0.2, "fast");
  barni_agreement(out, full_table2(), 0.05, "full");
  std::printf("  (fast table2 in %.1f s)\n", fast_seconds);
  return out;
}

Outcome criterion4() {
  Outcome out;
  const auto rows = parse_csv(full_table2());
  for (Index n = 2; n <= 8; ++n) {
    const auto& row = rows.at(n);
    const Table2Reference& p = kTable2[static_cast<std::size_t>(n - 2)];
    const auto compare = [&](const char* column, double reference, double tolerance) {
      const double got = num(row, column);
      out.check(std::abs(got - reference) <= tolerance + 1e-9,
                fmt("n=%ld %s: %.2f vs reference %.2f (tolerance %.2f)", static_cast<long>(n), column, got, reference,
                    tolerance));
    };
    compare("dab_are", p.dab_are, 0.15);
    compare("dab_mre_e", p.dab_mre, 0.15);
    compare("db_are", p.db_are, 0.1);
    compare("db_mre_e", p.db_mre, 0.1);
    compare("dmhat_are", p.dmhat_are, 0.1);
    compare("dmhat_mre_e", p.dmhat_mre, 0.1);
    compare("dm_are", p.dm_are, 0.1);
    compare("dm_mre_e", p.dm_mre, 0.1);
    // Literature constants: exact transcription only.
    compare("dm_zn_are", p.zn_are, 0.0);
    compare("dm_zn_mre_e", p.zn_mre, 0.0);
  }
  return out;
}

Outcome criterion5() {
  Outcome out;
  const cli::RunSettings s = table_settings(false);
  for (Index n = 2; n <= 8; ++n) {
    const Table3Row row = table3_row(SamplerConfig{n, s.seed, s.batch_size}, s.grid_step, s.convergence);
    const Table3Reference& p = kTable3[static_cast<std::size_t>(n - 2)];
    const double closed_form = (1.0 + mukherjee_min_on_sphere(n)) / 2.0;
    const long nl = static_cast<long>(n);
    out.check(std::abs(row.delta_hat - p.delta_hat) <= 0.001 + 1e-12,
              fmt("n=%ld: delta_hat %.6f vs reference %.6f (tolerance 0.001)", nl, row.delta_hat, p.delta_hat));
    out.check(std::abs(row.delta_hat - closed_form) <= s.grid_step * (1.0 + 1e-9),
              fmt("n=%ld: delta_hat %.6f vs (1+m)/2 = %.6f, gap %.2e > grid step %.0e", nl, row.delta_hat,
                  closed_form, std::abs(row.delta_hat - closed_form), s.grid_step));
    const double are = 100.0 * row.at_delta_hat.are;
    const double mre = 100.0 * row.at_delta_hat.mre_empirical;
    out.check(std::abs(are - p.are) <= 0.1, fmt("n=%ld: ARE at delta_hat %.3f vs reference %.2f", nl, are, p.are));
    out.check(std::abs(mre - p.mre) <= 0.1, fmt("n=%ld: MRE at delta_hat %.3f vs reference %.2f", nl, mre, p.mre));
  }
  return out;
}

Outcome criterion6() {
  Outcome out;
  const ConvergenceOptions options = ConvergenceOptions::fast();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (Index n = 2; n <= 8; ++n) {
      const BarniOptimal optimal = barni_optimal(n);
      const WeightedD1Spec spec = optimal.spec();
      const std::vector<NormEvaluator> norms{
          [](const Eigen::Ref<const Eigen::VectorXd>& x) { return mukherjee_norm(x); },
          [spec](const Eigen::Ref<const Eigen::VectorXd>& x) { return barni_norm(x, spec); },
      };
      const auto reports = converged_errors(norms, SamplerConfig{n, seed, 1 << 14}, options);
      const long nl = static_cast<long>(n);
      const auto ul = static_cast<unsigned long>(seed);
      out.check(reports[0].mre_empirical <= mukherjee_mre_theoretical(n) + 1e-9,
                fmt("seed %lu n=%ld: D_M MRE_e %.12f > MRE_t %.12f", ul, nl, reports[0].mre_empirical,
                    mukherjee_mre_theoretical(n)));
      out.check(reports[1].mre_empirical <= optimal.mre + 1e-9,
                fmt("seed %lu n=%ld: D_B MRE_e %.12f > MRE_t %.12f", ul, nl, reports[1].mre_empirical, optimal.mre));
    }
  }
  return out;
}

Outcome criterion7() {
  using namespace fastnorm::testing;
  Outcome out;
  constexpr std::size_t kInstances = 10000;
  const auto start = Clock::now();
  const std::array<PropertyOutcome, 5> results{
      check_homogeneity(kInstances, 101),
      check_permutation_sign(kInstances, 102),
      check_triangle(kInstances, 103),
      check_sandwich(kInstances, 104),
      check_weighted_d1_unification(kInstances, 105),
  };
  const double elapsed = seconds_since(start);
  for (const auto& r : results) {
    out.check(r.ok(), fmt("%s: %zu of %zu failed; first: %s", r.name.c_str(), r.failed, r.checked,
                          r.first_failure.c_str()));
  }
  out.check(elapsed < 10.0, fmt("took %.2f s", elapsed));
  return out;
}

Outcome criterion8() {
  using bench::count_ops;
  using bench::OpCount;
  Outcome out;
  const auto table = [](std::string_view name, std::uint64_t n) -> OpCount {
    if (name == "dinf") return {n, n - 1, 0, 0, 0};
    if (name == "d1") return {n, 0, n - 1, 0, 0};
    if (name == "d2") return {0, 0, n - 1, n, 1};
    return {n, n - 1, n, 2, 0};
  };
  const auto show = [](const OpCount& c) {
    return fmt("abs=%llu comp=%llu add=%llu mult=%llu sqrt=%llu", static_cast<unsigned long long>(c.abs),
               static_cast<unsigned long long>(c.comp), static_cast<unsigned long long>(c.add),
               static_cast<unsigned long long>(c.mult), static_cast<unsigned long long>(c.sqrt));
  };
  for (Index n : {2, 4, 8, 64}) {
    const auto un = static_cast<std::uint64_t>(n);
    for (const char* name : {"dinf", "d1", "d2", "seol-cheun"}) {
      const OpCount got = count_ops(name, n);
      out.check(got == table(name, un),
                fmt("%s n=%ld: %s, expected %s", name, static_cast<long>(n), show(got).c_str(),
                    show(table(name, un)).c_str()));
    }
    for (const char* name : {"tcost", "barni", "mukherjee", "mukherjee-hat"}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const OpCount got = count_ops(name, n, {}, seed);
        out.check(got.comp <= bench::sorting_comparison_bound(n),
                  fmt("%s n=%ld: %llu comparisons exceed %llu", name, static_cast<long>(n),
                      static_cast<unsigned long long>(got.comp),
                      static_cast<unsigned long long>(bench::sorting_comparison_bound(n))));
      }
    }
  }
  for (Index n = 1; n <= 256; ++n) {
    const OpCount got = count_ops("seol-cheun", n);
    out.check(got.mult == 2, fmt("seol-cheun n=%ld: %llu multiplications", static_cast<long>(n),
                                 static_cast<unsigned long long>(got.mult)));
  }
  return out;
}

Outcome criterion9() {
  Outcome out;
  const std::string& first = full_table2();
  const std::string second = cli::table2_csv(table_settings(false));
  out.check(first == second, "two table2 runs (dims 2..8, seed 42) differ");
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "delta* closed form matches the reference 6 decimals", criterion1},
      {2, "theoretical MRE of D_B and D_M within 0.005 pp", criterion2},
      {3, "D_B empirical MRE within 0.05 pp (full) / 0.2 pp (fast) of theory", criterion3},
      {4, "table2 empirical errors within 0.1 pp of reference (D_ab 0.15 pp)", criterion4},
      {5, "grid-searched delta and its errors match the table3 reference", criterion5},
      {6, "empirical MRE never exceeds theoretical MRE over 20 seeds", criterion6},
      {7, "norm property suite on 10^4 instances per property", criterion7},
      {8, "operation counts match the reference counts", criterion8},
      {9, "table2 output is byte-identical across runs", criterion9},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.check(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL", c.id, c.title,
                seconds_since(start));
    for (const auto& d : outcome.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
