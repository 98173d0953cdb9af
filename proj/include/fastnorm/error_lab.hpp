#pragma once

// Empirical relative-error estimation on the unit sphere.
//
// All errors are fractions (0.0396, not 3.96). Sums over points use pairwise
// summation inside each batch and pairwise summation over the ordered batch
// sums, so every figure is independent of how batches are scheduled.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fastnorm/analytic.hpp"
#include "fastnorm/sphere_sampler.hpp"

namespace fastnorm {

using NormEvaluator = std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>;

/// Points farther than this from the unit sphere (in d2) are rejected.
inline constexpr double kSphereTolerance = 1e-9;

struct ErrorReport {
  double are = 0.0;
  double mre_empirical = 0.0;
  std::optional<double> mre_theoretical;
  std::uint64_t samples_used = 0;
  bool converged = false;
  double epsilon = 0.0;
};

struct ConvergenceOptions {
  std::uint64_t initial_samples = std::uint64_t{1} << 20;
  double epsilon = 1e-5;
  std::uint64_t sample_cap = std::uint64_t{1} << 28;
  /// Worker threads for batch evaluation; 0 picks hardware concurrency.
  unsigned workers = 0;

  /// Reduced settings for quick runs: 2^16 initial samples, epsilon 1e-4.
  static ConvergenceOptions fast();
};

/// Pairwise (cascade) sum; the summation tree depends only on values.size().
double pairwise_sum(std::span<const double> values);

/// Streaming ARE/MRE over unit-sphere batches for one norm.
class ErrorAccumulator {
public:
  explicit ErrorAccumulator(NormEvaluator norm) : norm_(std::move(norm)) {}

  /// Evaluates every point of the batch; rejects non-sphere batches.
  void add(const SampleBatch& batch);

  std::uint64_t count() const noexcept { return count_; }
  double are() const;
  double mre() const noexcept { return max_error_; }

private:
  NormEvaluator norm_;
  std::vector<double> batch_sums_;
  std::vector<double> scratch_;
  double max_error_ = 0.0;
  std::uint64_t count_ = 0;
};

struct EmpiricalErrors {
  double are;
  double mre;
  std::uint64_t samples;
};

EmpiricalErrors empirical_errors(const NormEvaluator& norm, std::span<const SampleBatch> batches);

/// Evaluates over 2^20, 2^21, ... nested unit-sphere samples (each round adds as
/// many new points as it already has) until both ARE and MRE move by at most
/// epsilon between consecutive rounds, or the sample cap is reached.
ErrorReport converged_errors(const NormEvaluator& norm, const SamplerConfig& cfg,
                             const ConvergenceOptions& options = {});

/// As above for several norms on one shared sample stream; each norm stops at
/// its own convergence round, yielding exactly what it would get alone.
std::vector<ErrorReport> converged_errors(std::span<const NormEvaluator> norms, const SamplerConfig& cfg,
                                          const ConvergenceOptions& options = {});

/// Thrown when the calibration normal equations are (numerically) singular.
class DegenerateSystemError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SeolCheunCoefficients {
  double a;
  double b;
};

struct CalibrationResult {
  std::variant<SeolCheunCoefficients, double> params;
  /// Mean squared fit error for (a, b); empirical MRE for delta_hat.
  double objective = 0.0;
  /// Relative residual of the solved linear system (0 for delta_hat).
  double residual = 0.0;
  std::uint64_t samples_used = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  const SeolCheunCoefficients& coefficients() const { return std::get<SeolCheunCoefficients>(params); }
  double delta_hat() const { return std::get<double>(params); }
};

inline constexpr std::uint64_t kSeolCheunSamples = 100000;
inline constexpr double kMaxConditionNumber = 1e12;

/// Least-squares fit of a dinf + b d1 to d2 over iid standard Gaussian vectors,
/// via the 2 x 2 normal equations of the five sample moments.
CalibrationResult calibrate_seol_cheun(const SamplerConfig& cfg, std::uint64_t sample_count = kSeolCheunSamples);

struct ScaleChoice {
  double delta;
  double mre;
};

/// Grid {lo, lo + step, ..., <= hi}: picks the delta minimizing
/// max_v |v / delta - 1| over the cached values (first minimum wins).
ScaleChoice search_scale_grid(std::span<const double> cached_values, double lo, double step, double hi = 1.0);

struct DeltaSearch {
  CalibrationResult calibration;
  double delta_star;
  ErrorReport at_delta_star;
  ErrorReport at_delta_hat;
};

inline constexpr double kDefaultGridStep = 1e-6;

/// Grid search of the scale applied to mukherjee_norm over [delta*, 1].
///
/// The sample set is the converged set for mukherjee_norm / delta*; mukherjee
/// values are cached once and every grid point is scored against the cache.
DeltaSearch grid_search_delta(const SamplerConfig& cfg, double grid_step = kDefaultGridStep,
                              const ConvergenceOptions& options = {});

struct Table2Row {
  Index n;
  SeolCheunCoefficients seol_cheun;
  ErrorReport seol_cheun_errors;
  ErrorReport barni;
  ErrorReport normalized_mukherjee;
  ErrorReport mukherjee;
};

/// D_{a,b} (freshly calibrated), optimal D_B, D_M / delta* and D_M on one
/// shared converged sample stream for dimension cfg.dim >= 2.
Table2Row table2_row(const SamplerConfig& cfg, const ConvergenceOptions& options = {},
                     std::uint64_t calibration_samples = kSeolCheunSamples);

struct Table3Row {
  Index n;
  double delta_star;
  double delta_hat;
  ErrorReport at_delta_star;
  ErrorReport at_delta_hat;
};

Table3Row table3_row(const SamplerConfig& cfg, double grid_step = kDefaultGridStep,
                     const ConvergenceOptions& options = {});

}  // namespace fastnorm
