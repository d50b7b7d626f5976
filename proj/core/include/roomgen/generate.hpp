#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "roomgen/scene.hpp"

namespace roomgen {

struct PairSeeds {
  std::uint64_t selection = 0;
  std::uint64_t room_a = 0;
  std::uint64_t room_b = 0;
};

// Seeds for pair `index` depend only on (base_seed, index), so pairs can be
// generated in any order or in parallel.
PairSeeds pair_seeds(std::uint64_t base_seed, std::uint64_t index);

// Samples an object set from the catalog and builds both rooms.
ScenePair generate_indexed_pair(std::span<const PointCloud> catalog, std::uint64_t base_seed,
                                std::uint32_t index, const SceneConfig& cfg);

// Pairs [0, count) in index order. threads == 0 uses the hardware concurrency.
std::vector<ScenePair> generate_pairs(std::span<const PointCloud> catalog,
                                      std::uint64_t base_seed, std::uint32_t count,
                                      const SceneConfig& cfg, unsigned threads = 0);

}  // namespace roomgen
