#include "roomgen/stats.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "roomgen/error.hpp"

namespace roomgen {

namespace {

std::size_t object_count(const RoomScene& room) {
  if (room.record.object_count > 0) return room.record.object_count;
  std::size_t n = 0;
  for (const auto& [label, count] : label_counts(room.labels)) n += label != 0 ? 1 : 0;
  return n;
}

}  // namespace

StatsReport scene_stats(std::span<const ScenePair> pairs) {
  if (pairs.empty()) fail(ErrorKind::InvalidInput, "no pairs to summarize");
  StatsReport r;
  r.pair_count = pairs.size();
  r.min_room_area_m2 = std::numeric_limits<double>::infinity();
  r.min_area_ratio = std::numeric_limits<double>::infinity();
  r.instance_points_min = std::numeric_limits<std::size_t>::max();
  double area_sum = 0.0;
  double footprint_sum = 0.0;
  std::size_t footprint_rooms = 0;
  std::size_t instance_total = 0;
  std::size_t instance_rows = 0;
  std::size_t points_total = 0;
  std::size_t confounders = 0;
  std::size_t shared_total = 0;
  std::size_t full = 0;

  for (const ScenePair& pair : pairs) {
    std::size_t expected = 0;
    for (const RoomScene* room : {&pair.room_a, &pair.room_b}) {
      ++r.room_count;
      const std::size_t objects = object_count(*room);
      expected = std::max(expected, objects);
      ++r.object_count_histogram[objects];
      const double area = room->dims.area_m2();
      area_sum += area;
      r.min_room_area_m2 = std::min(r.min_room_area_m2, area);
      r.max_room_area_m2 = std::max(r.max_room_area_m2, area);
      if (room->record.footprint_area_sum > 0.0) {
        footprint_sum += room->record.footprint_area_sum;
        ++footprint_rooms;
        const double ratio = area / room->record.footprint_area_sum;
        r.min_area_ratio = std::min(r.min_area_ratio, ratio);
        r.max_area_ratio = std::max(r.max_area_ratio, ratio);
      }
      r.placements += room->record.object_count;
      r.forced_placements += room->record.forced_count;
      for (const auto& [label, count] : label_counts(room->labels)) {
        if (label == 0) {
          confounders += count;
          continue;
        }
        r.instance_points_min = std::min(r.instance_points_min, count);
        r.instance_points_max = std::max(r.instance_points_max, count);
        instance_total += count;
        ++instance_rows;
      }
      points_total += room->labels.size();
    }
    shared_total += pair.shared_ids.size();
    if (pair.shared_ids.size() == expected) ++full;
  }

  const auto rooms = static_cast<double>(r.room_count);
  r.mean_room_area_m2 = area_sum / rooms;
  r.mean_footprint_area_sum_m2 = footprint_rooms ? footprint_sum / footprint_rooms : 0.0;
  if (!footprint_rooms) r.min_area_ratio = 0.0;
  r.forced_rate = r.placements ? static_cast<double>(r.forced_placements) / r.placements : 0.0;
  if (!instance_rows) r.instance_points_min = 0;
  r.instance_points_mean = instance_rows ? static_cast<double>(instance_total) / instance_rows : 0.0;
  r.confounder_fraction = points_total ? static_cast<double>(confounders) / points_total : 0.0;
  r.mean_shared_ids = static_cast<double>(shared_total) / r.pair_count;
  r.full_coverage_fraction = static_cast<double>(full) / r.pair_count;
  return r;
}

std::string format_stats(const StatsReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << "pairs=" << r.pair_count << '\n';
  os << "rooms=" << r.room_count << '\n';
  std::size_t lo = r.object_count_histogram.empty() ? 0 : r.object_count_histogram.begin()->first;
  std::size_t hi = r.object_count_histogram.empty() ? 0 : r.object_count_histogram.rbegin()->first;
  os << "object_count_min=" << lo << '\n';
  os << "object_count_max=" << hi << '\n';
  for (const auto& [objects, rooms] : r.object_count_histogram)
    os << "object_count_hist." << objects << "=" << rooms << '\n';
  os << "room_area_mean_m2=" << r.mean_room_area_m2 << '\n';
  os << "room_area_min_m2=" << r.min_room_area_m2 << '\n';
  os << "room_area_max_m2=" << r.max_room_area_m2 << '\n';
  os << "footprint_area_sum_mean_m2=" << r.mean_footprint_area_sum_m2 << '\n';
  os << "room_to_footprint_ratio_min=" << r.min_area_ratio << '\n';
  os << "room_to_footprint_ratio_max=" << r.max_area_ratio << '\n';
  os << "placements=" << r.placements << '\n';
  os << "forced_placements=" << r.forced_placements << '\n';
  os << "forced_rate=" << r.forced_rate << '\n';
  os << "instance_points_min=" << r.instance_points_min << '\n';
  os << "instance_points_mean=" << r.instance_points_mean << '\n';
  os << "instance_points_max=" << r.instance_points_max << '\n';
  os << "confounder_fraction=" << r.confounder_fraction << '\n';
  os << "shared_ids_mean=" << r.mean_shared_ids << '\n';
  os << "shared_full_coverage=" << r.full_coverage_fraction << '\n';
  return os.str();
}

}  // namespace roomgen
