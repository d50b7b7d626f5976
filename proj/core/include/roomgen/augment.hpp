#pragma once

#include <vector>

#include "roomgen/geometry.hpp"
#include "roomgen/rng.hpp"

namespace roomgen {

struct ObjectAugmentConfig {
  double size_min = 0.5;  // meters
  double size_max = 2.0;  // meters
  double drop_ratio_max = 0.2;
  double jitter_sigma = 0.01;  // meters
  double jitter_clip = 0.05;   // meters
  bool rotation_enabled = true;

  void validate() const;
};

// Sampled parameters of one object augmentation, kept for replay.
struct ObjectAugmentRecord {
  double rotation = 0.0;
  double target_size = 0.0;
  double drop_ratio = 0.0;
  double scale = 1.0;
};

// Uniformly scales so the largest bounding-box extent equals target_size,
// then moves the box minimum to the origin.
PointCloud resize_to_size(const PointCloud& pc, double target_size);
PointCloud resize_to_target(const PointCloud& pc, Rng& rng, const ObjectAugmentConfig& cfg);

// Keeps max(1, round(n * (1 - ratio))) points, chosen uniformly, in their
// original order.
std::vector<std::size_t> drop_indices(std::size_t count, Rng& rng, double ratio);
PointCloud drop_points(const PointCloud& pc, Rng& rng, double ratio);

// Per-coordinate Gaussian noise with std sigma, clamped to [-clip, clip].
void jitter_in_place(std::span<Vec3> points, Rng& rng, double sigma, double clip);
PointCloud jitter(const PointCloud& pc, Rng& rng, double sigma, double clip);

// rotate -> resize -> drop -> jitter -> rescale to the sampled size -> recenter.
PointCloud augment_object(const PointCloud& pc, Rng& rng, const ObjectAugmentConfig& cfg,
                          ObjectAugmentRecord* record = nullptr);

}  // namespace roomgen
