#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "roomgen/scene.hpp"

namespace roomgen {

struct StatsReport {
  std::size_t pair_count = 0;
  std::size_t room_count = 0;
  std::map<std::size_t, std::size_t> object_count_histogram;  // objects -> rooms
  double mean_room_area_m2 = 0.0;
  double min_room_area_m2 = 0.0;
  double max_room_area_m2 = 0.0;
  double mean_footprint_area_sum_m2 = 0.0;
  double min_area_ratio = 0.0;  // room area / object footprint sum
  double max_area_ratio = 0.0;
  std::size_t placements = 0;
  std::size_t forced_placements = 0;
  double forced_rate = 0.0;
  std::size_t instance_points_min = 0;
  std::size_t instance_points_max = 0;
  double instance_points_mean = 0.0;
  double confounder_fraction = 0.0;
  double mean_shared_ids = 0.0;
  double full_coverage_fraction = 0.0;  // pairs whose shared ids cover every object
};

StatsReport scene_stats(std::span<const ScenePair> pairs);

// Line-oriented "key = value" rendering.
std::string format_stats(const StatsReport& report);

}  // namespace roomgen
