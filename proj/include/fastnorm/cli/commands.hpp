#pragma once

// Command implementations behind the `fastnorm` executable. Each command
// renders its full output (manifest header plus CSV body) to a string so the
// same code serves the binary and the tests.
//
// CSV layout: lines starting with '#' form the manifest block, followed by one
// header record and data records, comma-separated, '\n'-terminated. Errors are
// rendered in percent with two decimals; delta values with six.

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fastnorm/error_lab.hpp"
#include "fastnorm/registry.hpp"

namespace fastnorm::cli {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr std::string_view kSeedEnvVar = "FASTNORM_SEED";
inline constexpr std::uint64_t kDefaultSeed = 42;

struct RunSettings {
  std::vector<Index> dims{2, 3, 4, 5, 6, 7, 8};
  std::uint64_t seed = kDefaultSeed;
  ConvergenceOptions convergence{};
  double grid_step = kDefaultGridStep;
  Index batch_size = 1 << 14;
  std::uint64_t calibration_samples = kSeolCheunSamples;
  bool fast = false;
  /// Dimensions processed concurrently; 0 picks hardware concurrency.
  unsigned jobs = 0;

  /// Standard defaults, or the reduced --fast settings (2^16 initial, 1e-4).
  static RunSettings defaults(bool fast);
};

/// FASTNORM_SEED when set and valid, otherwise 42.
std::uint64_t default_seed();

/// "2..8", "2,3,5" or combinations such as "2..4,8"; order is preserved.
std::vector<Index> parse_dims(std::string_view text);

/// One vector "x1, x2, ..." (finite reals).
Vector parse_vector(std::string_view text);

/// One comma-separated vector per line; '#' starts a comment, blank lines are
/// skipped. Throws std::invalid_argument naming the offending line.
std::vector<Vector> parse_vector_file(std::istream& in);

/// Literature (integer-grid) ARE and MRE in percent for n = 2..8.
struct LiteratureErrors {
  double are;
  double mre;
};
std::optional<LiteratureErrors> integer_grid_reference(Index n);

std::string table2_csv(const RunSettings& settings);
std::string table3_csv(const RunSettings& settings);
std::string figure1_csv(Index n_max);
std::string calibrate_seol_cheun_csv(const RunSettings& settings, bool evaluate);
std::string calibrate_delta_csv(const RunSettings& settings);
std::string bench_csv(const std::vector<std::string>& norms, const std::vector<Index>& dims, int trials, Index batch,
                      std::uint64_t seed);
std::string eval_output(NormKind kind, const std::vector<Vector>& vectors, const NormParams& params);

/// Manifest as JSON with a UTC timestamp, written next to --out files.
std::string manifest_json(std::string_view command, const RunSettings& settings);

}  // namespace fastnorm::cli
