#include "fastnorm/cli/commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "fastnorm/analytic.hpp"
#include "fastnorm/bench/bench.hpp"
#include "fastnorm/detail/parallel.hpp"

namespace fastnorm::cli {

namespace {

constexpr Index kMaxTableDim = 64;

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string general(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string percent(double fraction) { return fixed(100.0 * fraction, 2); }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Index parse_index(std::string_view text) {
  text = trim(text);
  Index value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("invalid integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string join_dims(const std::vector<Index>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(dims[i]);
  }
  return out;
}

void require_table_dims(const std::vector<Index>& dims) {
  if (dims.empty()) throw std::invalid_argument("no dimensions given");
  for (Index n : dims) {
    if (n < 2 || n > kMaxTableDim) throw std::invalid_argument("table dimensions must lie in [2, 64]");
  }
}

SamplerConfig sampler_for(const RunSettings& settings, Index n) {
  return SamplerConfig{n, settings.seed, settings.batch_size};
}

// Runs fn(n) for every dimension, concurrently when allowed; results keep dims order.
template <typename Row, typename Fn>
std::vector<Row> per_dimension(const RunSettings& settings, Fn&& fn) {
  std::vector<std::optional<Row>> rows(settings.dims.size());
  const unsigned jobs = std::min<unsigned>(detail::resolve_workers(settings.jobs),
                                           static_cast<unsigned>(settings.dims.size()));
  ConvergenceOptions inner = settings.convergence;
  if (jobs > 1) inner.workers = 1;
  detail::parallel_for(settings.dims.size(), jobs, [&](std::size_t i) { rows[i] = fn(settings.dims[i], inner); });
  std::vector<Row> out;
  out.reserve(rows.size());
  for (auto& row : rows) out.push_back(std::move(*row));
  return out;
}

std::string manifest_block(std::string_view command, const RunSettings& settings, bool with_grid) {
  std::ostringstream out;
  out << "# fastnorm " << kVersion << '\n';
  out << "# command: " << command << '\n';
  out << "# dims: " << join_dims(settings.dims) << '\n';
  out << "# seed: " << settings.seed << '\n';
  out << "# epsilon: " << general(settings.convergence.epsilon) << '\n';
  out << "# initial_samples: " << settings.convergence.initial_samples << '\n';
  out << "# sample_cap: " << settings.convergence.sample_cap << '\n';
  out << "# batch_size: " << settings.batch_size << '\n';
  if (command == "table2" || command == "calibrate-seol-cheun") {
    out << "# calibration_samples: " << settings.calibration_samples << '\n';
  }
  if (with_grid) out << "# grid_step: " << general(settings.grid_step) << '\n';
  out << "# fast: " << (settings.fast ? "true" : "false") << '\n';
  out << "# sampler: philox4x32-10 box-muller stream-v" << kSamplerStreamVersion << '\n';
  return out.str();
}

}  // namespace

RunSettings RunSettings::defaults(bool fast) {
  RunSettings settings;
  settings.seed = default_seed();
  settings.fast = fast;
  if (fast) settings.convergence = ConvergenceOptions::fast();
  return settings;
}

std::uint64_t default_seed() {
  const char* env = std::getenv(std::string(kSeedEnvVar).c_str());
  if (env == nullptr) return kDefaultSeed;
  const std::string_view text = trim(env);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return kDefaultSeed;
  return value;
}

std::vector<Index> parse_dims(std::string_view text) {
  std::vector<Index> dims;
  for (std::string_view part : split(text, ',')) {
    part = trim(part);
    if (part.empty()) throw std::invalid_argument("empty entry in dimension list");
    const auto range = part.find("..");
    if (range == std::string_view::npos) {
      dims.push_back(parse_index(part));
      continue;
    }
    const Index lo = parse_index(part.substr(0, range));
    const Index hi = parse_index(part.substr(range + 2));
    if (hi < lo) throw std::invalid_argument("dimension range is reversed: '" + std::string(part) + "'");
    for (Index n = lo; n <= hi; ++n) dims.push_back(n);
  }
  return dims;
}

Vector parse_vector(std::string_view text) {
  const auto parts = split(trim(text), ',');
  Vector x(static_cast<Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string_view token = trim(parts[i]);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
      throw std::invalid_argument("invalid vector component: '" + std::string(token) + "'");
    }
    x(static_cast<Index>(i)) = value;
  }
  return x;
}

std::vector<Vector> parse_vector_file(std::istream& in) {
  std::vector<Vector> vectors;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    std::string_view content = line;
    if (const auto hash = content.find('#'); hash != std::string_view::npos) content = content.substr(0, hash);
    content = trim(content);
    if (content.empty()) continue;
    try {
      vectors.push_back(parse_vector(content));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return vectors;
}

std::optional<LiteratureErrors> integer_grid_reference(Index n) {
  static constexpr LiteratureErrors kTable[] = {
      {2.40, 7.61}, {3.63, 11.35}, {4.29, 13.75}, {4.65, 15.46}, {4.85, 16.79}, {5.00, 17.86}, {5.04, 18.75},
  };
  if (n < 2 || n > 8) return std::nullopt;
  return kTable[n - 2];
}

std::string table2_csv(const RunSettings& settings) {
  require_table_dims(settings.dims);
  const auto rows = per_dimension<Table2Row>(settings, [&](Index n, const ConvergenceOptions& options) {
    return table2_row(sampler_for(settings, n), options, settings.calibration_samples);
  });

  std::ostringstream out;
  out << manifest_block("table2", settings, false);
  out << "n,dab_are,dab_mre_e,db_are,db_mre_e,db_mre_t,dmhat_are,dmhat_mre_e,dm_are,dm_mre_e,"
         "dm_zn_are,dm_zn_mre_e,dm_mre_t,converged\n";
  for (const auto& row : rows) {
    const auto literature = integer_grid_reference(row.n);
    const bool converged = row.seol_cheun_errors.converged && row.barni.converged &&
                           row.normalized_mukherjee.converged && row.mukherjee.converged;
    out << row.n << ',' << percent(row.seol_cheun_errors.are) << ',' << percent(row.seol_cheun_errors.mre_empirical)
        << ',' << percent(row.barni.are) << ',' << percent(row.barni.mre_empirical) << ','
        << percent(*row.barni.mre_theoretical) << ',' << percent(row.normalized_mukherjee.are) << ','
        << percent(row.normalized_mukherjee.mre_empirical) << ',' << percent(row.mukherjee.are) << ','
        << percent(row.mukherjee.mre_empirical) << ',' << (literature ? fixed(literature->are, 2) : "") << ','
        << (literature ? fixed(literature->mre, 2) : "") << ',' << percent(*row.mukherjee.mre_theoretical) << ','
        << (converged ? "yes" : "no") << '\n';
  }
  return out.str();
}

std::string table3_csv(const RunSettings& settings) {
  require_table_dims(settings.dims);
  const auto rows = per_dimension<Table3Row>(settings, [&](Index n, const ConvergenceOptions& options) {
    return table3_row(sampler_for(settings, n), settings.grid_step, options);
  });

  std::ostringstream out;
  out << manifest_block("table3", settings, true);
  out << "n,dstar_are,dstar_mre_e,delta_star,dhat_are,dhat_mre_e,delta_hat,converged\n";
  for (const auto& row : rows) {
    out << row.n << ',' << percent(row.at_delta_star.are) << ',' << percent(row.at_delta_star.mre_empirical) << ','
        << fixed(row.delta_star, 6) << ',' << percent(row.at_delta_hat.are) << ','
        << percent(row.at_delta_hat.mre_empirical) << ',' << fixed(row.delta_hat, 6) << ','
        << (row.at_delta_star.converged ? "yes" : "no") << '\n';
  }
  return out.str();
}

std::string figure1_csv(Index n_max) {
  if (n_max < 2) throw std::invalid_argument("figure1 needs n_max >= 2");
  std::ostringstream out;
  out << "# fastnorm " << kVersion << '\n';
  out << "# command: figure1\n";
  out << "# n_max: " << n_max << '\n';
  out << "n,mre_dm,mre_db\n";
  for (Index n = 1; n <= n_max; ++n) {
    out << n << ',' << fixed(100.0 * mukherjee_mre_theoretical(n), 6) << ','
        << fixed(100.0 * barni_optimal(n).mre, 6) << '\n';
  }
  return out.str();
}

std::string calibrate_seol_cheun_csv(const RunSettings& settings, bool evaluate) {
  if (settings.dims.empty()) throw std::invalid_argument("no dimensions given");
  std::ostringstream out;
  out << manifest_block("calibrate-seol-cheun", settings, false);
  out << "n,a,b,residual,objective,samples,seed,are,mre_e,warnings\n";
  for (Index n : settings.dims) {
    const CalibrationResult fit = calibrate_seol_cheun(sampler_for(settings, n), settings.calibration_samples);
    const SeolCheunCoefficients ab = fit.coefficients();
    std::string are;
    std::string mre;
    if (evaluate && ab.a > 0.0 && ab.b > 0.0) {
      const NormEvaluator norm = [ab](const Eigen::Ref<const Eigen::VectorXd>& x) {
        return seol_cheun_norm(x, ab.a, ab.b);
      };
      const ErrorReport report = converged_errors(norm, sampler_for(settings, n), settings.convergence);
      are = percent(report.are);
      mre = percent(report.mre_empirical);
    }
    std::string warnings;
    for (const auto& w : fit.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
    out << n << ',' << fixed(ab.a, 6) << ',' << fixed(ab.b, 6) << ',' << general(fit.residual) << ','
        << general(fit.objective) << ',' << fit.samples_used << ',' << fit.seed << ',' << are << ',' << mre << ','
        << (warnings.empty() ? "" : "\"" + warnings + "\"") << '\n';
  }
  return out.str();
}

std::string calibrate_delta_csv(const RunSettings& settings) {
  require_table_dims(settings.dims);
  const auto rows = per_dimension<DeltaSearch>(settings, [&](Index n, const ConvergenceOptions& options) {
    return grid_search_delta(sampler_for(settings, n), settings.grid_step, options);
  });
  std::ostringstream out;
  out << manifest_block("calibrate-delta", settings, true);
  out << "n,delta_star,delta_hat,closed_form,are,mre_e,samples,seed\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Index n = settings.dims[i];
    const DeltaSearch& r = rows[i];
    out << n << ',' << fixed(r.delta_star, 6) << ',' << fixed(r.calibration.delta_hat(), 6) << ','
        << fixed(0.5 * (1.0 + mukherjee_min_on_sphere(n)), 6) << ',' << percent(r.at_delta_hat.are) << ','
        << percent(r.at_delta_hat.mre_empirical) << ',' << r.calibration.samples_used << ',' << r.calibration.seed
        << '\n';
  }
  return out.str();
}

std::string bench_csv(const std::vector<std::string>& norms, const std::vector<Index>& dims, int trials, Index batch,
                      std::uint64_t seed) {
  std::ostringstream out;
  out << "# fastnorm " << kVersion << '\n';
  out << "# command: bench\n";
  out << "# trials: " << trials << '\n';
  out << "# batch: " << batch << '\n';
  out << "# seed: " << seed << '\n';
  out << "norm,n,evals_per_second,relative_to_d2,abs,comp,add,mult,sqrt\n";
  for (const auto& name : norms) {
    const NormKind kind = parse_norm_kind(name);
    for (Index n : dims) {
      const bench::BenchResult result = bench::run_bench(name, n, trials, batch, {}, seed);
      std::string counts = ",,,,";
      if (kind != NormKind::lp && kind != NormKind::rosenfeld_pfaltz) {
        const bench::OpCount c = bench::count_ops(kind, n, {}, seed);
        counts = std::to_string(c.abs) + ',' + std::to_string(c.comp) + ',' + std::to_string(c.add) + ',' +
                 std::to_string(c.mult) + ',' + std::to_string(c.sqrt);
      }
      out << result.norm << ',' << n << ',' << fixed(result.evals_per_second, 0) << ','
          << fixed(result.relative_to_d2, 3) << ',' << counts << '\n';
    }
  }
  return out.str();
}

std::string eval_output(NormKind kind, const std::vector<Vector>& vectors, const NormParams& params) {
  std::ostringstream out;
  for (const Vector& x : vectors) {
    const NormEvaluator norm = make_evaluator(kind, x.size(), params);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", norm(x));
    out << buf << '\n';
  }
  return out.str();
}

std::string manifest_json(std::string_view command, const RunSettings& settings) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);

  nlohmann::json manifest{
      {"command", command},
      {"dims", settings.dims},
      {"seed", settings.seed},
      {"epsilon", settings.convergence.epsilon},
      {"grid_step", settings.grid_step},
      {"initial_samples", settings.convergence.initial_samples},
      {"sample_cap", settings.convergence.sample_cap},
      {"batch_size", settings.batch_size},
      {"calibration_samples", settings.calibration_samples},
      {"fast", settings.fast},
      {"timestamp", stamp},
      {"version", kVersion},
  };
  return manifest.dump(2) + "\n";
}

}  // namespace fastnorm::cli
