#include "fastnorm/sphere_sampler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fastnorm/philox.hpp"

namespace fastnorm {

namespace {

constexpr std::uint32_t kMaxDim = (1u << 24) - 1;

// Standard normals for one (seed, dim, batch, kind) stream.
class NormalStream {
public:
  NormalStream(const SamplerConfig& cfg, std::uint64_t batch_index, SampleKind kind)
      : key_{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32)},
        batch_lo_(static_cast<std::uint32_t>(batch_index)),
        batch_hi_(static_cast<std::uint32_t>(batch_index >> 32)),
        tag_((kind == SampleKind::gaussian ? 1u : 0u) << 24 | static_cast<std::uint32_t>(cfg.dim)) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const auto out = Philox4x32::generate({block_++, batch_lo_, batch_hi_, tag_}, key_);
    const double u1 = to_unit(out[0], out[1]);
    const double u2 = to_unit(out[2], out[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  // 53 random bits mapped to the open interval (0, 1).
  static double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32 | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  Philox4x32::Key key_;
  std::uint32_t batch_lo_;
  std::uint32_t batch_hi_;
  std::uint32_t tag_;
  std::uint32_t block_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

void validate(const SamplerConfig& cfg) {
  if (cfg.dim < 1 || cfg.dim > static_cast<Index>(kMaxDim)) {
    throw std::invalid_argument("sampler dimension must be in [1, 2^24)");
  }
  if (cfg.batch_size < 1) throw std::invalid_argument("sampler batch size must be >= 1");
}

SampleBatch sample_gaussian(const SamplerConfig& cfg, std::uint64_t batch_index) {
  validate(cfg);
  NormalStream stream(cfg, batch_index, SampleKind::gaussian);
  SampleBatch batch{Eigen::MatrixXd(cfg.dim, cfg.batch_size), SampleKind::gaussian};
  double* data = batch.points.data();
  for (Index k = 0, total = cfg.dim * cfg.batch_size; k < total; ++k) data[k] = stream.next();
  return batch;
}

SampleBatch sample_unit_sphere(const SamplerConfig& cfg, std::uint64_t batch_index) {
  validate(cfg);
  NormalStream stream(cfg, batch_index, SampleKind::sphere);
  SampleBatch batch{Eigen::MatrixXd(cfg.dim, cfg.batch_size), SampleKind::sphere};
  for (Index j = 0; j < cfg.batch_size; ++j) {
    auto point = batch.points.col(j);
    double norm = 0.0;
    do {
      for (Index i = 0; i < cfg.dim; ++i) point(i) = stream.next();
      norm = d2(point);
    } while (norm < kSphereRejectNorm);
    point /= norm;
  }
  return batch;
}

}  // namespace fastnorm
