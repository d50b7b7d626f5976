#include "roomgen/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "roomgen/error.hpp"

namespace roomgen {

void SceneConfig::validate() const {
  object.validate();
  layout.validate();
  if (!(confounders.density >= 0.0) || !(confounders.wall_height >= 0.0))
    fail(ErrorKind::InvalidInput, "confounder density and wall height must be non-negative");
  if (!(augment.drop_ratio_max >= 0.0 && augment.drop_ratio_max < 1.0))
    fail(ErrorKind::InvalidInput, "scene drop_ratio_max must lie in [0, 1)");
  if (!(augment.jitter_sigma >= 0.0) || !(augment.jitter_clip >= augment.jitter_sigma))
    fail(ErrorKind::InvalidInput, "scene jitter requires clip >= sigma >= 0");
  if (point_budget < 1) fail(ErrorKind::InvalidInput, "point budget must be at least 1");
  if (objects_min < 1 || objects_max < objects_min)
    fail(ErrorKind::InvalidInput, "object count range must satisfy 1 <= min <= max");
}

LabeledPoints concat_instances(std::span<const SceneInstance> instances) {
  LabeledPoints out;
  std::size_t total = 0;
  for (const auto& inst : instances) total += inst.points.size();
  out.points.reserve(total);
  out.labels.reserve(total);
  for (const auto& inst : instances) {
    out.points.insert(out.points.end(), inst.points.begin(), inst.points.end());
    out.labels.insert(out.labels.end(), inst.points.size(), inst.instance_id);
  }
  return out;
}

namespace {

// Uniform points on the rectangle origin + s*u + t*v, s,t in [0,1].
void sample_rectangle(LabeledPoints& out, const Vec3& origin, const Vec3& u, const Vec3& v,
                      double area, double density, Rng& rng) {
  const auto count = static_cast<std::size_t>(std::llround(area * density));
  for (std::size_t i = 0; i < count; ++i) {
    const double s = rng.uniform01();
    const double t = rng.uniform01();
    out.points.push_back({origin.x + s * u.x + t * v.x, origin.y + s * u.y + t * v.y,
                          origin.z + s * u.z + t * v.z});
    out.labels.push_back(0);
  }
}

}  // namespace

LabeledPoints add_floor_wall(std::span<const SceneInstance> instances, const RoomDims& dims,
                             const Vec3& origin, const ConfounderConfig& cfg, Rng& rng) {
  LabeledPoints out = concat_instances(instances);
  if (!cfg.enabled || cfg.density <= 0.0) return out;
  const double a = dims.a_m();
  const double b = dims.b_m();
  const double h = cfg.wall_height;
  const Vec3 corner{origin.x, origin.y, 0.0};
  sample_rectangle(out, corner, {a, 0, 0}, {0, b, 0}, a * b, cfg.density, rng);
  if (h > 0.0) {
    sample_rectangle(out, corner, {a, 0, 0}, {0, 0, h}, a * h, cfg.density, rng);
    sample_rectangle(out, corner + Vec3{0, b, 0}, {a, 0, 0}, {0, 0, h}, a * h, cfg.density, rng);
    sample_rectangle(out, corner, {0, b, 0}, {0, 0, h}, b * h, cfg.density, rng);
    sample_rectangle(out, corner + Vec3{a, 0, 0}, {0, b, 0}, {0, 0, h}, b * h, cfg.density, rng);
  }
  return out;
}

LabeledPoints scene_augment(LabeledPoints scene, Rng& rng, const SceneAugmentConfig& cfg,
                            RoomRecord* record) {
  if (scene.points.size() != scene.labels.size())
    fail(ErrorKind::InvalidInput, "points and labels differ in length");
  if (scene.points.empty()) fail(ErrorKind::InvalidInput, "scene has no points");

  double rotation = 0.0;
  if (cfg.rotation_enabled) {
    rotation = rng.uniform(0.0, 2.0 * std::numbers::pi);
    double cx = 0.0, cy = 0.0;
    for (const Vec3& p : scene.points) {
      cx += p.x;
      cy += p.y;
    }
    const auto n = static_cast<double>(scene.points.size());
    rotate_z_in_place(scene.points, rotation, cx / n, cy / n);
  }

  const double ratio = rng.uniform(0.0, cfg.drop_ratio_max);
  const auto kept = drop_indices(scene.points.size(), rng, ratio);
  if (kept.size() != scene.points.size()) {
    LabeledPoints dropped;
    dropped.points.reserve(kept.size());
    dropped.labels.reserve(kept.size());
    for (std::size_t i : kept) {
      dropped.points.push_back(scene.points[i]);
      dropped.labels.push_back(scene.labels[i]);
    }
    scene = std::move(dropped);
  }

  jitter_in_place(scene.points, rng, cfg.jitter_sigma, cfg.jitter_clip);

  if (record) {
    record->scene_rotation = rotation;
    record->scene_drop_ratio = ratio;
  }
  return scene;
}

LabeledPoints subsample(LabeledPoints scene, Rng& rng, std::size_t n_budget) {
  if (n_budget < 1) fail(ErrorKind::InvalidInput, "point budget must be at least 1");
  if (scene.points.empty()) fail(ErrorKind::InvalidInput, "cannot subsample an empty scene");
  if (scene.points.size() != scene.labels.size())
    fail(ErrorKind::InvalidInput, "points and labels differ in length");
  const std::size_t n = scene.points.size();
  if (n == n_budget) return scene;

  LabeledPoints out;
  out.points.reserve(n_budget);
  out.labels.reserve(n_budget);
  if (n > n_budget) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::size_t> kept;
    kept.reserve(n_budget);
    std::sample(all.begin(), all.end(), std::back_inserter(kept), n_budget, rng.engine());
    for (std::size_t i : kept) {
      out.points.push_back(scene.points[i]);
      out.labels.push_back(scene.labels[i]);
    }
    return out;
  }
  // Too few points: keep everything and pad with duplicates drawn with replacement.
  out = scene;
  for (std::size_t k = n; k < n_budget; ++k) {
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    out.points.push_back(scene.points[i]);
    out.labels.push_back(scene.labels[i]);
  }
  return out;
}

RoomScene generate_room(std::span<const PointCloud> objects, std::uint64_t seed,
                        const SceneConfig& cfg) {
  cfg.validate();
  if (objects.empty()) fail(ErrorKind::InvalidInput, "room needs at least one object");
  Rng rng(seed);
  RoomRecord record;
  record.object_count = objects.size();

  std::vector<PointCloud> augmented;
  augmented.reserve(objects.size());
  record.objects.resize(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i)
    augmented.push_back(augment_object(objects[i], rng, cfg.object, &record.objects[i]));

  Layout layout = generate_layout(augmented, rng, cfg.layout);
  record.placements = layout.placements;
  record.forced_count = layout.forced_count;
  record.skipped_count = layout.skipped_count;
  record.footprint_area_sum = layout.footprint_area_sum;

  LabeledPoints scene =
      add_floor_wall(layout.instances, layout.dims, layout.origin, cfg.confounders, rng);
  record.confounder_points = static_cast<std::size_t>(
      std::count(scene.labels.begin(), scene.labels.end(), std::uint32_t{0}));
  scene = scene_augment(std::move(scene), rng, cfg.augment, &record);
  record.points_before_subsample = scene.points.size();
  scene = subsample(std::move(scene), rng, cfg.point_budget);

  return RoomScene{PointCloud(std::move(scene.points)), std::move(scene.labels), layout.dims, seed,
                   std::move(record)};
}

std::map<std::uint32_t, std::size_t> label_counts(std::span<const std::uint32_t> labels) {
  std::map<std::uint32_t, std::size_t> counts;
  for (std::uint32_t l : labels) ++counts[l];
  return counts;
}

std::vector<std::uint32_t> shared_instance_ids(const RoomScene& a, const RoomScene& b,
                                               std::size_t min_points) {
  const auto ca = label_counts(a.labels);
  const auto cb = label_counts(b.labels);
  std::vector<std::uint32_t> shared;
  for (const auto& [id, count] : ca) {
    if (id == 0 || count < min_points) continue;
    auto it = cb.find(id);
    if (it != cb.end() && it->second >= min_points) shared.push_back(id);
  }
  return shared;
}

ScenePair generate_pair(std::span<const PointCloud> objects, std::uint64_t seed_a,
                        std::uint64_t seed_b, const SceneConfig& cfg) {
  if (objects.size() < 2)
    fail(ErrorKind::InvalidInput, "a scene pair needs at least two objects");
  ScenePair pair{0, generate_room(objects, seed_a, cfg), generate_room(objects, seed_b, cfg), {}};
  pair.shared_ids = shared_instance_ids(pair.room_a, pair.room_b, cfg.min_points);
  if (pair.shared_ids.empty())
    fail(ErrorKind::DegeneratePair, "no instance survives in both rooms");
  return pair;
}

std::vector<std::size_t> sample_object_set(std::size_t catalog_size, Rng& rng,
                                           const SceneConfig& cfg) {
  if (catalog_size == 0) fail(ErrorKind::InvalidInput, "object catalog is empty");
  const auto count = static_cast<std::size_t>(rng.uniform_int(cfg.objects_min, cfg.objects_max));
  std::vector<std::size_t> picked;
  picked.reserve(count);
  if (count <= catalog_size) {
    std::vector<std::size_t> all(catalog_size);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::shuffle(all.begin(), all.end(), rng.engine());
    picked.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
  } else {
    for (std::size_t i = 0; i < count; ++i)
      picked.push_back(static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(catalog_size) - 1)));
  }
  return picked;
}

}  // namespace roomgen
