#include "roomgen/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "roomgen/error.hpp"

namespace roomgen {

void ObjectAugmentConfig::validate() const {
  if (!(size_min > 0.0) || !(size_min <= size_max) || !std::isfinite(size_max))
    fail(ErrorKind::InvalidInput, "object size band must satisfy 0 < size_min <= size_max");
  if (!(drop_ratio_max >= 0.0 && drop_ratio_max < 1.0))
    fail(ErrorKind::InvalidInput, "drop_ratio_max must lie in [0, 1)");
  if (!(jitter_sigma >= 0.0) || !(jitter_clip >= jitter_sigma) || !std::isfinite(jitter_clip))
    fail(ErrorKind::InvalidInput, "jitter requires jitter_clip >= jitter_sigma >= 0");
}

PointCloud resize_to_size(const PointCloud& pc, double target_size) {
  if (!(target_size > 0.0) || !std::isfinite(target_size))
    fail(ErrorKind::InvalidInput, "target size must be positive and finite");
  const Aabb box = compute_aabb(pc);
  const double extent = box.max_extent();
  if (!(extent > 0.0)) fail(ErrorKind::DegenerateObject, "object has zero extent");
  const double factor = target_size / extent;
  std::vector<Vec3> out;
  out.reserve(pc.size());
  for (const Vec3& p : pc) {
    const Vec3 d = p - box.min;
    out.push_back({d.x * factor, d.y * factor, d.z * factor});
  }
  return PointCloud(std::move(out));
}

PointCloud resize_to_target(const PointCloud& pc, Rng& rng, const ObjectAugmentConfig& cfg) {
  cfg.validate();
  return resize_to_size(pc, rng.uniform(cfg.size_min, cfg.size_max));
}

std::vector<std::size_t> drop_indices(std::size_t count, Rng& rng, double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0))
    fail(ErrorKind::InvalidInput, "drop ratio must lie in [0, 1), got " + std::to_string(ratio));
  const auto keep = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(count) * (1.0 - ratio))));
  std::vector<std::size_t> all(count);
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (keep >= count) return all;
  std::vector<std::size_t> kept;
  kept.reserve(keep);
  std::sample(all.begin(), all.end(), std::back_inserter(kept), keep, rng.engine());
  return kept;
}

PointCloud drop_points(const PointCloud& pc, Rng& rng, double ratio) {
  const auto kept = drop_indices(pc.size(), rng, ratio);
  std::vector<Vec3> out;
  out.reserve(kept.size());
  for (std::size_t i : kept) out.push_back(pc[i]);
  return PointCloud(std::move(out));
}

void jitter_in_place(std::span<Vec3> points, Rng& rng, double sigma, double clip) {
  if (!(sigma >= 0.0) || !(clip >= sigma) || !std::isfinite(clip))
    fail(ErrorKind::InvalidInput, "jitter requires clip >= sigma >= 0");
  if (sigma == 0.0) return;
  auto draw = [&] { return std::clamp(rng.normal(0.0, sigma), -clip, clip); };
  for (Vec3& p : points) {
    p.x += draw();
    p.y += draw();
    p.z += draw();
  }
}

PointCloud jitter(const PointCloud& pc, Rng& rng, double sigma, double clip) {
  std::vector<Vec3> out(pc.begin(), pc.end());
  jitter_in_place(out, rng, sigma, clip);
  return PointCloud(std::move(out));
}

PointCloud augment_object(const PointCloud& pc, Rng& rng, const ObjectAugmentConfig& cfg,
                          ObjectAugmentRecord* record) {
  cfg.validate();
  ObjectAugmentRecord rec;

  PointCloud current = pc;
  if (cfg.rotation_enabled) {
    rec.rotation = rng.uniform(0.0, 2.0 * std::numbers::pi);
    current = rotate_z(current, rec.rotation);
  }
  // Scaling commutes with rotation about z, so measuring the target on the
  // rotated box keeps the final footprint inside the size band.
  rec.target_size = rng.uniform(cfg.size_min, cfg.size_max);
  const double initial_extent = compute_aabb(current).max_extent();
  current = resize_to_size(current, rec.target_size);

  rec.drop_ratio = rng.uniform(0.0, cfg.drop_ratio_max);
  current = drop_points(current, rng, rec.drop_ratio);
  current = jitter(current, rng, cfg.jitter_sigma, cfg.jitter_clip);

  // Dropping and jitter perturb the extent slightly; snap back to the target.
  const double extent = compute_aabb(current).max_extent();
  current = resize_to_size(current, rec.target_size);
  rec.scale = (rec.target_size / initial_extent) * (rec.target_size / extent);

  if (record) *record = rec;
  return current;
}

}  // namespace roomgen
