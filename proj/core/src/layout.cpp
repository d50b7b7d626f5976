#include "roomgen/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "roomgen/error.hpp"

namespace roomgen {

HeightMap::HeightMap(std::int64_t a_cells, std::int64_t b_cells)
    : a_(a_cells), b_(b_cells) {
  if (a_ < 1 || b_ < 1) fail(ErrorKind::InvalidInput, "height map needs at least one cell");
  cells_.assign(static_cast<std::size_t>(a_ * b_), 0.0);
}

double HeightMap::max_over(const CellRange& r) const {
  double m = 0.0;
  for (std::int64_t i = r.x0; i < r.x1; ++i) {
    const double* row = cells_.data() + index(i, 0);
    for (std::int64_t j = r.y0; j < r.y1; ++j) m = std::max(m, row[j]);
  }
  return m;
}

void HeightMap::raise(const CellRange& r, double base_z, double z, HeightUpdate mode) {
  const double top = base_z + z;
  for (std::int64_t i = r.x0; i < r.x1; ++i) {
    double* row = cells_.data() + index(i, 0);
    for (std::int64_t j = r.y0; j < r.y1; ++j) {
      row[j] = mode == HeightUpdate::Stack ? std::max(row[j], top) : row[j] + z;
    }
  }
}

void HeightMap::fill(double height) {
  if (!(height >= 0.0)) fail(ErrorKind::InvalidInput, "heights must be non-negative");
  std::fill(cells_.begin(), cells_.end(), height);
}

void LayoutConfig::validate() const {
  if (max_iter < 1) fail(ErrorKind::InvalidInput, "max_iter must be at least 1");
  if (room_attempts < 1) fail(ErrorKind::InvalidInput, "room_attempts must be at least 1");
}

SortedObjects sort_by_area(std::span<const PointCloud> objects) {
  if (objects.empty()) fail(ErrorKind::InvalidInput, "no objects to sort");
  std::vector<double> area(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i)
    area[i] = compute_aabb(objects[i]).footprint_area();
  SortedObjects out;
  out.order.resize(objects.size());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t l, std::size_t r) { return area[l] > area[r]; });
  out.areas.reserve(objects.size());
  for (std::size_t i : out.order) out.areas.push_back(area[i]);
  return out;
}

RoomDims room_dims_from(double area_sum_m2, double area_factor, std::int64_t a_cells) {
  if (!(area_sum_m2 > 0.0) || !std::isfinite(area_sum_m2))
    fail(ErrorKind::InvalidInput, "total object area must be positive");
  if (a_cells < 1) fail(ErrorKind::InvalidInput, "room side must be at least one cell");
  RoomDims dims;
  dims.area_factor = area_factor;
  dims.overall_area_cm2 = area_sum_m2 * 2.0 * 10000.0 * area_factor;
  dims.a_cells = a_cells;
  dims.b_cells = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(dims.overall_area_cm2) / a_cells);
  return dims;
}

RoomDims compute_room_dims(std::span<const double> areas_m2, Rng& rng) {
  const double total = std::accumulate(areas_m2.begin(), areas_m2.end(), 0.0);
  if (!(total > 0.0)) fail(ErrorKind::InvalidInput, "total object area must be positive");
  const double factor = rng.uniform01() * 0.4 + 0.6;
  const double a_value = std::sqrt(total * 2.0 * 10000.0 * factor);
  const auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(a_value * 0.75));
  const auto hi = std::max<std::int64_t>(lo, static_cast<std::int64_t>(a_value * 1.25));
  return room_dims_from(total, factor, rng.uniform_int(lo, hi));
}

namespace {

std::pair<std::int64_t, std::int64_t> cell_span(double pos, double extent, std::int64_t limit) {
  auto lo = std::clamp<std::int64_t>(static_cast<std::int64_t>(pos * kCellsPerMeter), 0,
                                     limit - 1);
  auto hi = std::min<std::int64_t>(static_cast<std::int64_t>((pos + extent) * kCellsPerMeter),
                                   limit);
  // Sub-centimeter objects still occupy the cell they sit in.
  if (hi <= lo) hi = lo + 1;
  return {lo, hi};
}

}  // namespace

CellRange footprint_cells(double pos_x, double pos_y, double x, double y, const RoomDims& dims) {
  const auto [x0, x1] = cell_span(pos_x, x, dims.a_cells);
  const auto [y0, y1] = cell_span(pos_y, y, dims.b_cells);
  return {x0, x1, y0, y1};
}

Placement find_placement(const HeightMap& hm, const RoomDims& dims, const Vec3& size, Rng& rng,
                         int max_iter) {
  if (max_iter < 1) fail(ErrorKind::InvalidInput, "max_iter must be at least 1");
  if (!(size.x >= 0.0 && size.y >= 0.0 && size.z > 0.0))
    fail(ErrorKind::InvalidInput, "object size must have non-negative footprint and z > 0");
  if (hm.a_cells() != dims.a_cells || hm.b_cells() != dims.b_cells)
    fail(ErrorKind::InvalidInput, "height map does not match room dimensions");
  const double slack_x = dims.a_m() - size.x;
  const double slack_y = dims.b_m() - size.y;
  if (slack_x < 0.0 || slack_y < 0.0) {
    fail(ErrorKind::DoesNotFit, "object footprint " + std::to_string(size.x) + " x " +
                                    std::to_string(size.y) + " m exceeds room " +
                                    std::to_string(dims.a_m()) + " x " +
                                    std::to_string(dims.b_m()) + " m");
  }

  Placement p;
  p.footprint = size;
  p.forced = true;
  double max_height = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const double pos_x = sample_beta_half(rng) * slack_x;
    const double pos_y = sample_beta_half(rng) * slack_y;
    p.cells = footprint_cells(pos_x, pos_y, size.x, size.y, dims);
    p.position = {pos_x, pos_y, 0.0};
    p.attempts = it + 1;
    max_height = hm.max_over(p.cells);
    if (accepts_placement(max_height, size.z)) {
      p.forced = false;
      break;
    }
  }
  p.position.z = max_height;
  return p;
}

Placement place_object(HeightMap& hm, const RoomDims& dims, const Vec3& size, Rng& rng,
                       int max_iter, HeightUpdate mode) {
  Placement p = find_placement(hm, dims, size, rng, max_iter);
  hm.raise(p.cells, p.position.z, size.z, mode);
  return p;
}

Layout generate_layout(std::span<const PointCloud> objects, Rng& rng, const LayoutConfig& cfg) {
  cfg.validate();
  if (objects.empty()) fail(ErrorKind::InvalidInput, "layout needs at least one object");

  std::vector<std::size_t> order(objects.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> areas;
  if (cfg.sort_by_area) {
    SortedObjects sorted = sort_by_area(objects);
    order = std::move(sorted.order);
    areas = std::move(sorted.areas);
  } else {
    for (const auto& obj : objects) areas.push_back(compute_aabb(obj).footprint_area());
  }

  std::vector<Aabb> boxes;
  boxes.reserve(order.size());
  for (std::size_t src : order) boxes.push_back(compute_aabb(objects[src]));

  Layout layout;
  layout.footprint_area_sum = std::accumulate(areas.begin(), areas.end(), 0.0);

  bool fits = false;
  for (int attempt = 0; attempt < cfg.room_attempts && !fits; ++attempt) {
    layout.dims = compute_room_dims(areas, rng);
    fits = std::all_of(boxes.begin(), boxes.end(), [&](const Aabb& b) {
      return b.extent(0) <= layout.dims.a_m() && b.extent(1) <= layout.dims.b_m();
    });
  }
  if (!fits) {
    fail(ErrorKind::DoesNotFit, "no sampled room fits every object footprint after " +
                                    std::to_string(cfg.room_attempts) + " draws");
  }
  layout.height_map = HeightMap(layout.dims.a_cells, layout.dims.b_cells);

  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t src = order[k];
    const Aabb& box = boxes[k];
    Placement p =
        find_placement(layout.height_map, layout.dims, box.extents(), rng, cfg.max_iter);
    p.object_index = k;
    p.source_index = src;
    if (p.forced) {
      ++layout.forced_count;
      if (cfg.forced_policy == ForcedPolicy::Skip) {
        p.skipped = true;
        ++layout.skipped_count;
        layout.placements.push_back(p);
        continue;
      }
    }
    layout.height_map.raise(p.cells, p.position.z, p.footprint.z, cfg.height_update);
    layout.placements.push_back(p);

    std::vector<Vec3> pts(objects[src].begin(), objects[src].end());
    translate_in_place(pts, p.position - box.min);
    layout.instances.push_back(
        {PointCloud(std::move(pts)), static_cast<std::uint32_t>(src + 1), p});
  }

  if (layout.instances.empty())
    fail(ErrorKind::DoesNotFit, "every object was skipped as a forced placement");

  double sx = 0.0, sy = 0.0;
  std::size_t n = 0;
  for (const auto& inst : layout.instances) {
    for (const Vec3& q : inst.points) {
      sx += q.x;
      sy += q.y;
    }
    n += inst.points.size();
  }
  const Vec3 shift{-sx / static_cast<double>(n), -sy / static_cast<double>(n), 0.0};
  for (auto& inst : layout.instances) {
    std::vector<Vec3> pts = std::move(inst.points).release();
    translate_in_place(pts, shift);
    inst.points = PointCloud(std::move(pts));
  }
  layout.origin = shift;
  return layout;
}

}  // namespace roomgen
