#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "roomgen/augment.hpp"
#include "roomgen/geometry.hpp"
#include "roomgen/layout.hpp"
#include "roomgen/rng.hpp"

namespace roomgen {

struct ConfounderConfig {
  bool enabled = true;
  double density = 500.0;     // points per m^2
  double wall_height = 2.5;   // meters
};

struct SceneAugmentConfig {
  bool rotation_enabled = true;
  double drop_ratio_max = 0.2;
  double jitter_sigma = 0.01;
  double jitter_clip = 0.05;
};

struct SceneConfig {
  ObjectAugmentConfig object;
  LayoutConfig layout;
  ConfounderConfig confounders;
  SceneAugmentConfig augment;
  std::size_t point_budget = 40000;
  std::size_t min_points = 5;
  int objects_min = 12;
  int objects_max = 18;

  void validate() const;
};

// Points with a parallel per-point instance label (0 = floor/wall).
struct LabeledPoints {
  std::vector<Vec3> points;
  std::vector<std::uint32_t> labels;
};

// Everything sampled while building one room, kept for replay and stats.
struct RoomRecord {
  std::vector<ObjectAugmentRecord> objects;  // caller's object order
  std::vector<Placement> placements;          // placement order
  std::size_t object_count = 0;
  std::size_t forced_count = 0;
  std::size_t skipped_count = 0;
  double footprint_area_sum = 0.0;
  double scene_rotation = 0.0;
  double scene_drop_ratio = 0.0;
  std::size_t confounder_points = 0;
  std::size_t points_before_subsample = 0;
};

struct RoomScene {
  PointCloud points;
  std::vector<std::uint32_t> labels;
  RoomDims dims;
  std::uint64_t seed = 0;
  RoomRecord record;
};

struct ScenePair {
  std::uint32_t pair_index = 0;
  RoomScene room_a;
  RoomScene room_b;
  std::vector<std::uint32_t> shared_ids;  // ascending
};

LabeledPoints concat_instances(std::span<const SceneInstance> instances);

// Instance points followed by floor and four walls, all confounders labeled 0.
// origin is the position of the room corner (0, 0) in scene coordinates.
LabeledPoints add_floor_wall(std::span<const SceneInstance> instances, const RoomDims& dims,
                             const Vec3& origin, const ConfounderConfig& cfg, Rng& rng);

LabeledPoints scene_augment(LabeledPoints scene, Rng& rng, const SceneAugmentConfig& cfg,
                            RoomRecord* record = nullptr);

LabeledPoints subsample(LabeledPoints scene, Rng& rng, std::size_t n_budget);

// Full single-room pipeline: object augmentation, layout, confounders,
// scene augmentation, subsampling.
RoomScene generate_room(std::span<const PointCloud> objects, std::uint64_t seed,
                        const SceneConfig& cfg);

std::map<std::uint32_t, std::size_t> label_counts(std::span<const std::uint32_t> labels);

// Nonzero ids with at least min_points points in both rooms.
std::vector<std::uint32_t> shared_instance_ids(const RoomScene& a, const RoomScene& b,
                                               std::size_t min_points);

ScenePair generate_pair(std::span<const PointCloud> objects, std::uint64_t seed_a,
                        std::uint64_t seed_b, const SceneConfig& cfg);

// Draws an object count in [objects_min, objects_max] and picks that many
// catalog indices, without replacement while the catalog allows it.
std::vector<std::size_t> sample_object_set(std::size_t catalog_size, Rng& rng,
                                           const SceneConfig& cfg);

}  // namespace roomgen
