#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "roomgen/geometry.hpp"
#include "roomgen/rng.hpp"

namespace roomgen {

// Placement acceptance thresholds, in meters.
inline constexpr double kHeightCap = 2.0;
inline constexpr double kMaxStackBase = 0.5;
inline constexpr double kGroundTolerance = 1e-3;
inline constexpr double kCellsPerMeter = 100.0;

// True when an object of height z may rest on a surface at max_height.
constexpr bool accepts_placement(double max_height, double z) {
  return (max_height + z < kHeightCap && max_height < kMaxStackBase) ||
         max_height < kGroundTolerance;
}

struct RoomDims {
  std::int64_t a_cells = 0;
  std::int64_t b_cells = 0;
  double overall_area_cm2 = 0.0;  // continuous target area before integer sizing
  double area_factor = 1.0;       // the sampled factor in [0.6, 1.0]

  double a_m() const { return static_cast<double>(a_cells) / kCellsPerMeter; }
  double b_m() const { return static_cast<double>(b_cells) / kCellsPerMeter; }
  double area_m2() const { return a_m() * b_m(); }

  friend bool operator==(const RoomDims&, const RoomDims&) = default;
};

// Half-open cell rectangle [x0, x1) x [y0, y1).
struct CellRange {
  std::int64_t x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  friend bool operator==(const CellRange&, const CellRange&) = default;
};

enum class HeightUpdate {
  Stack,     // footprint cells become base_z + z
  Additive,  // footprint cells each grow by z
};

class HeightMap {
 public:
  HeightMap(std::int64_t a_cells, std::int64_t b_cells);

  std::int64_t a_cells() const noexcept { return a_; }
  std::int64_t b_cells() const noexcept { return b_; }
  double at(std::int64_t i, std::int64_t j) const { return cells_[index(i, j)]; }
  double max_over(const CellRange& r) const;
  void raise(const CellRange& r, double base_z, double z, HeightUpdate mode);
  void fill(double height);
  std::span<const double> cells() const noexcept { return cells_; }

 private:
  std::size_t index(std::int64_t i, std::int64_t j) const {
    return static_cast<std::size_t>(i * b_ + j);
  }
  std::int64_t a_;
  std::int64_t b_;
  std::vector<double> cells_;
};

struct Placement {
  std::size_t object_index = 0;  // position in placement order
  std::size_t source_index = 0;  // position in the caller's object list
  Vec3 position;                 // (pos_x, pos_y, base_z)
  Vec3 footprint;                // object extents (x, y, z)
  CellRange cells;
  int attempts = 0;
  bool forced = false;
  bool skipped = false;
};

struct SceneInstance {
  PointCloud points;
  std::uint32_t instance_id = 0;  // source_index + 1; 0 is reserved for confounders
  Placement placement;
};

enum class ForcedPolicy { Keep, Skip };

struct LayoutConfig {
  int max_iter = 100;
  bool sort_by_area = true;
  ForcedPolicy forced_policy = ForcedPolicy::Keep;
  HeightUpdate height_update = HeightUpdate::Stack;
  // Room re-draws allowed when some object footprint exceeds the floor plan.
  int room_attempts = 16;

  void validate() const;
};

struct SortedObjects {
  std::vector<std::size_t> order;  // source indices in placement order
  std::vector<double> areas;       // footprint areas in placement order
};

SortedObjects sort_by_area(std::span<const PointCloud> objects);

RoomDims room_dims_from(double area_sum_m2, double area_factor, std::int64_t a_cells);
RoomDims compute_room_dims(std::span<const double> areas_m2, Rng& rng);

// Cells covered by an object of extents (x, y) at (pos_x, pos_y); never empty.
CellRange footprint_cells(double pos_x, double pos_y, double x, double y, const RoomDims& dims);

// Samples candidate positions without touching the map.
Placement find_placement(const HeightMap& hm, const RoomDims& dims, const Vec3& size, Rng& rng,
                         int max_iter);
// find_placement followed by raising the footprint.
Placement place_object(HeightMap& hm, const RoomDims& dims, const Vec3& size, Rng& rng,
                       int max_iter, HeightUpdate mode = HeightUpdate::Stack);

struct Layout {
  std::vector<SceneInstance> instances;  // placement order, skipped objects omitted
  std::vector<Placement> placements;     // every object, placement order
  RoomDims dims;
  HeightMap height_map{1, 1};
  Vec3 origin;  // where the room corner (0, 0) ended up after X-Y centering
  double footprint_area_sum = 0.0;
  std::size_t forced_count = 0;
  std::size_t skipped_count = 0;
};

Layout generate_layout(std::span<const PointCloud> objects, Rng& rng, const LayoutConfig& cfg);

}  // namespace roomgen
