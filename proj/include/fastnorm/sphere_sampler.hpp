#pragma once

// Reproducible Gaussian and unit-sphere sample batches.
//
// Stream layout (version 1): Philox4x32-10 keyed by the 64-bit seed; the
// counter is (block, batch_lo, batch_hi, kind << 24 | dim). Each block yields
// two uniforms in (0, 1) with 53-bit resolution, turned into two standard
// normals by the Box-Muller transform. Points consume normals in order; a
// sphere point whose Gaussian pre-image has norm below 1e-150 is discarded and
// the next n normals are used.

#include <cstdint>

#include <Eigen/Core>

#include "fastnorm/norms.hpp"

namespace fastnorm {

inline constexpr int kSamplerStreamVersion = 1;
inline constexpr double kSphereRejectNorm = 1e-150;

struct SamplerConfig {
  Index dim = 2;
  std::uint64_t seed = 42;
  Index batch_size = 1 << 14;
};

enum class SampleKind { sphere, gaussian };

/// A block of points stored as the columns of an n x batch_size matrix.
struct SampleBatch {
  Eigen::MatrixXd points;
  SampleKind kind = SampleKind::sphere;

  Index size() const noexcept { return points.cols(); }
  Index dim() const noexcept { return points.rows(); }
  auto point(Index i) const { return points.col(i); }
};

void validate(const SamplerConfig& cfg);

SampleBatch sample_gaussian(const SamplerConfig& cfg, std::uint64_t batch_index);
SampleBatch sample_unit_sphere(const SamplerConfig& cfg, std::uint64_t batch_index);

}  // namespace fastnorm
