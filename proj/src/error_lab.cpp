#include "fastnorm/error_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "fastnorm/detail/parallel.hpp"

namespace fastnorm {

namespace {

constexpr std::size_t kPairwiseBase = 16;

struct BatchErrors {
  double sum = 0.0;
  double max = 0.0;
};

// |N(x) - 1| for every point, summed pairwise; scratch is resized as needed.
BatchErrors evaluate_batch(const NormEvaluator& norm, const SampleBatch& batch, std::vector<double>& scratch) {
  if (batch.kind != SampleKind::sphere) throw std::invalid_argument("error estimation needs unit-sphere samples");
  scratch.resize(static_cast<std::size_t>(batch.size()));
  BatchErrors out;
  for (Index j = 0; j < batch.size(); ++j) {
    const auto x = batch.point(j);
    if (std::abs(d2(x) - 1.0) > kSphereTolerance) throw std::invalid_argument("sample point is off the unit sphere");
    const double err = std::abs(norm(x) - 1.0);
    scratch[static_cast<std::size_t>(j)] = err;
    out.max = std::max(out.max, err);
  }
  out.sum = pairwise_sum(scratch);
  return out;
}

void validate(const ConvergenceOptions& options, const SamplerConfig& cfg) {
  if (!(options.epsilon > 0.0)) throw std::invalid_argument("convergence epsilon must be positive");
  const auto batch = static_cast<std::uint64_t>(cfg.batch_size);
  if (options.initial_samples == 0 || options.initial_samples % batch != 0) {
    throw std::invalid_argument("initial sample count must be a positive multiple of the batch size");
  }
  if (options.sample_cap < options.initial_samples) {
    throw std::invalid_argument("sample cap must be at least the initial sample count");
  }
}

struct NormProgress {
  std::vector<double> batch_sums;
  double max_error = 0.0;
  double previous_are = 0.0;
  double previous_mre = 0.0;
  bool done = false;
  ErrorReport report;
};

}  // namespace

ConvergenceOptions ConvergenceOptions::fast() {
  ConvergenceOptions options;
  options.initial_samples = std::uint64_t{1} << 16;
  options.epsilon = 1e-4;
  return options;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kPairwiseBase) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void ErrorAccumulator::add(const SampleBatch& batch) {
  const BatchErrors errors = evaluate_batch(norm_, batch, scratch_);
  batch_sums_.push_back(errors.sum);
  max_error_ = std::max(max_error_, errors.max);
  count_ += static_cast<std::uint64_t>(batch.size());
}

double ErrorAccumulator::are() const {
  if (count_ == 0) throw std::logic_error("no samples accumulated");
  return pairwise_sum(batch_sums_) / static_cast<double>(count_);
}

EmpiricalErrors empirical_errors(const NormEvaluator& norm, std::span<const SampleBatch> batches) {
  ErrorAccumulator acc(norm);
  for (const auto& batch : batches) acc.add(batch);
  if (acc.count() == 0) throw std::invalid_argument("empirical_errors needs at least one sample");
  return {acc.are(), acc.mre(), acc.count()};
}

ErrorReport converged_errors(const NormEvaluator& norm, const SamplerConfig& cfg, const ConvergenceOptions& options) {
  return converged_errors(std::span<const NormEvaluator>(&norm, 1), cfg, options).front();
}

std::vector<ErrorReport> converged_errors(std::span<const NormEvaluator> norms, const SamplerConfig& cfg,
                                          const ConvergenceOptions& options) {
  fastnorm::validate(cfg);
  validate(options, cfg);
  const auto batch_size = static_cast<std::uint64_t>(cfg.batch_size);

  std::vector<NormProgress> progress(norms.size());
  std::uint64_t total = 0;
  for (int round = 0;; ++round) {
    const std::uint64_t target = round == 0 ? options.initial_samples : 2 * total;
    if (target > options.sample_cap) break;

    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < norms.size(); ++k) {
      if (!progress[k].done) active.push_back(k);
    }

    const std::uint64_t first_batch = total / batch_size;
    const std::size_t new_batches = static_cast<std::size_t>((target - total) / batch_size);
    std::vector<BatchErrors> results(new_batches * active.size());
    detail::parallel_for(new_batches, options.workers, [&](std::size_t b) {
      const SampleBatch batch = sample_unit_sphere(cfg, first_batch + b);
      std::vector<double> scratch;
      for (std::size_t a = 0; a < active.size(); ++a) {
        results[b * active.size() + a] = evaluate_batch(norms[active[a]], batch, scratch);
      }
    });
    total = target;

    bool all_done = true;
    for (std::size_t a = 0; a < active.size(); ++a) {
      NormProgress& p = progress[active[a]];
      for (std::size_t b = 0; b < new_batches; ++b) {
        const BatchErrors& r = results[b * active.size() + a];
        p.batch_sums.push_back(r.sum);
        p.max_error = std::max(p.max_error, r.max);
      }
      const double are = pairwise_sum(p.batch_sums) / static_cast<double>(total);
      const double mre = p.max_error;
      p.report = ErrorReport{are, mre, std::nullopt, total, false, options.epsilon};
      if (round > 0 && std::abs(are - p.previous_are) <= options.epsilon &&
          std::abs(mre - p.previous_mre) <= options.epsilon) {
        p.report.converged = true;
        p.done = true;
      } else {
        all_done = false;
      }
      p.previous_are = are;
      p.previous_mre = mre;
    }
    if (all_done) break;
  }

  std::vector<ErrorReport> reports;
  reports.reserve(progress.size());
  for (auto& p : progress) reports.push_back(p.report);
  return reports;
}

CalibrationResult calibrate_seol_cheun(const SamplerConfig& cfg, std::uint64_t sample_count) {
  fastnorm::validate(cfg);
  if (sample_count < 2) throw std::invalid_argument("calibration needs at least two samples");

  // Moments in the order E(dinf^2), E(dinf d1), E(d1^2), E(d2 dinf), E(d2 d1).
  constexpr std::size_t kMoments = 5;
  const auto batch_size = static_cast<std::uint64_t>(cfg.batch_size);
  const std::uint64_t batch_count = (sample_count + batch_size - 1) / batch_size;
  std::vector<std::vector<double>> terms(kMoments, std::vector<double>(static_cast<std::size_t>(sample_count)));
  std::vector<std::array<double, 3>> norms_of(static_cast<std::size_t>(sample_count));

  std::uint64_t k = 0;
  for (std::uint64_t b = 0; b < batch_count; ++b) {
    const SampleBatch batch = sample_gaussian(cfg, b);
    for (Index j = 0; j < batch.size() && k < sample_count; ++j, ++k) {
      const auto x = batch.point(j);
      const double inf = dinf(x);
      const double one = d1(x);
      const double two = d2(x);
      norms_of[k] = {inf, one, two};
      terms[0][k] = inf * inf;
      terms[1][k] = inf * one;
      terms[2][k] = one * one;
      terms[3][k] = two * inf;
      terms[4][k] = two * one;
    }
  }
  std::array<double, kMoments> m{};
  for (std::size_t i = 0; i < kMoments; ++i) m[i] = pairwise_sum(terms[i]) / static_cast<double>(sample_count);

  const double a11 = m[0];
  const double a12 = m[1];
  const double a22 = m[2];
  const double r1 = m[3];
  const double r2 = m[4];

  // Symmetric 2 x 2: eigenvalues from trace and determinant.
  const double det = a11 * a22 - a12 * a12;
  const double trace = a11 + a22;
  const double disc = std::sqrt(std::max(0.0, trace * trace - 4.0 * det));
  const double lambda_max = 0.5 * (trace + disc);
  const double lambda_min = 0.5 * (trace - disc);
  if (!(det > 0.0) || !(lambda_min > 0.0) || lambda_max / lambda_min > kMaxConditionNumber) {
    throw DegenerateSystemError("Seol-Cheun normal equations are singular or ill-conditioned");
  }

  const double a = (a22 * r1 - a12 * r2) / det;
  const double b = (a11 * r2 - a12 * r1) / det;
  const double res1 = a11 * a + a12 * b - r1;
  const double res2 = a12 * a + a22 * b - r2;

  CalibrationResult result;
  result.params = SeolCheunCoefficients{a, b};
  result.residual = std::hypot(res1, res2) / std::hypot(r1, r2);
  result.samples_used = sample_count;
  result.seed = cfg.seed;

  std::vector<double> squared(norms_of.size());
  for (std::size_t i = 0; i < norms_of.size(); ++i) {
    const double e = a * norms_of[i][0] + b * norms_of[i][1] - norms_of[i][2];
    squared[i] = e * e;
  }
  result.objective = pairwise_sum(squared) / static_cast<double>(sample_count);

  if (!(a > 0.0)) result.warnings.emplace_back("fitted a is not positive");
  if (!(b > 0.0)) result.warnings.emplace_back("fitted b is not positive");
  return result;
}

ScaleChoice search_scale_grid(std::span<const double> cached_values, double lo, double step, double hi) {
  if (cached_values.empty()) throw std::invalid_argument("scale search needs cached values");
  if (!(lo > 0.0) || !(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("invalid scale grid");
  const auto [min_it, max_it] = std::minmax_element(cached_values.begin(), cached_values.end());
  const double lowest = *min_it;
  const double highest = *max_it;

  // max_v |v/delta - 1| is attained at the extreme cached values.
  const auto steps = static_cast<std::uint64_t>(std::floor((hi - lo) / step + 1e-9));
  ScaleChoice best{lo, std::numeric_limits<double>::infinity()};
  for (std::uint64_t k = 0; k <= steps; ++k) {
    const double delta = lo + static_cast<double>(k) * step;
    const double mre = std::max(highest / delta - 1.0, 1.0 - lowest / delta);
    if (mre < best.mre) best = {delta, mre};
  }
  return best;
}

DeltaSearch grid_search_delta(const SamplerConfig& cfg, double grid_step, const ConvergenceOptions& options) {
  fastnorm::validate(cfg);
  const double delta_star = barni_optimal(cfg.dim).delta_star;
  if (!(grid_step > 0.0) || grid_step > 1.0 - delta_star) {
    throw std::invalid_argument("grid step must be in (0, 1 - delta*]");
  }

  const NormEvaluator at_star = [delta_star](const Eigen::Ref<const Eigen::VectorXd>& x) {
    return normalized_mukherjee_norm(x, delta_star);
  };
  DeltaSearch out;
  out.delta_star = delta_star;
  out.at_delta_star = converged_errors(at_star, cfg, options);

  const std::uint64_t samples = out.at_delta_star.samples_used;
  const auto batch_count = static_cast<std::size_t>(samples / static_cast<std::uint64_t>(cfg.batch_size));
  const auto batch_size = static_cast<std::size_t>(cfg.batch_size);
  std::vector<double> cache(static_cast<std::size_t>(samples));
  detail::parallel_for(batch_count, options.workers, [&](std::size_t b) {
    const SampleBatch batch = sample_unit_sphere(cfg, b);
    for (Index j = 0; j < batch.size(); ++j) cache[b * batch_size + static_cast<std::size_t>(j)] = mukherjee_norm(batch.point(j));
  });

  const ScaleChoice choice = search_scale_grid(cache, delta_star, grid_step);

  std::vector<double> batch_sums(batch_count);
  std::vector<double> errors(batch_size);
  for (std::size_t b = 0; b < batch_count; ++b) {
    for (std::size_t j = 0; j < batch_size; ++j) errors[j] = std::abs(cache[b * batch_size + j] / choice.delta - 1.0);
    batch_sums[b] = pairwise_sum(errors);
  }
  out.at_delta_hat = ErrorReport{pairwise_sum(batch_sums) / static_cast<double>(samples),
                                 choice.mre,
                                 std::nullopt,
                                 samples,
                                 out.at_delta_star.converged,
                                 out.at_delta_star.epsilon};

  out.calibration.params = choice.delta;
  out.calibration.objective = choice.mre;
  out.calibration.samples_used = samples;
  out.calibration.seed = cfg.seed;
  return out;
}

Table2Row table2_row(const SamplerConfig& cfg, const ConvergenceOptions& options, std::uint64_t calibration_samples) {
  if (cfg.dim < 2) throw std::invalid_argument("table rows need n >= 2");
  const Index n = cfg.dim;
  const CalibrationResult fit = calibrate_seol_cheun(cfg, calibration_samples);
  const SeolCheunCoefficients ab = fit.coefficients();
  const BarniOptimal optimal = barni_optimal(n);
  const WeightedD1Spec spec = optimal.spec();
  const double delta_star = optimal.delta_star;

  const std::vector<NormEvaluator> norms{
      [ab](const Eigen::Ref<const Eigen::VectorXd>& x) { return seol_cheun_norm(x, ab.a, ab.b); },
      [spec](const Eigen::Ref<const Eigen::VectorXd>& x) { return barni_norm(x, spec); },
      [delta_star](const Eigen::Ref<const Eigen::VectorXd>& x) { return normalized_mukherjee_norm(x, delta_star); },
      [](const Eigen::Ref<const Eigen::VectorXd>& x) { return mukherjee_norm(x); },
  };
  auto reports = converged_errors(norms, cfg, options);
  reports[1].mre_theoretical = optimal.mre;
  reports[3].mre_theoretical = mukherjee_mre_theoretical(n);
  return Table2Row{n, ab, reports[0], reports[1], reports[2], reports[3]};
}

Table3Row table3_row(const SamplerConfig& cfg, double grid_step, const ConvergenceOptions& options) {
  if (cfg.dim < 2) throw std::invalid_argument("table rows need n >= 2");
  const DeltaSearch search = grid_search_delta(cfg, grid_step, options);
  return Table3Row{cfg.dim, search.delta_star, search.calibration.delta_hat(), search.at_delta_star,
                   search.at_delta_hat};
}

}  // namespace fastnorm
