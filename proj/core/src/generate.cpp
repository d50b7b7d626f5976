#include "roomgen/generate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include "roomgen/error.hpp"

namespace roomgen {

PairSeeds pair_seeds(std::uint64_t base_seed, std::uint64_t index) {
  const std::uint64_t pair_seed = split_seed(base_seed, index);
  return {split_seed(pair_seed, 0), split_seed(pair_seed, 1), split_seed(pair_seed, 2)};
}

ScenePair generate_indexed_pair(std::span<const PointCloud> catalog, std::uint64_t base_seed,
                                std::uint32_t index, const SceneConfig& cfg) {
  const PairSeeds seeds = pair_seeds(base_seed, index);
  Rng selection(seeds.selection);
  std::vector<PointCloud> objects;
  for (std::size_t i : sample_object_set(catalog.size(), selection, cfg))
    objects.push_back(catalog[i]);
  ScenePair pair = generate_pair(objects, seeds.room_a, seeds.room_b, cfg);
  pair.pair_index = index;
  return pair;
}

std::vector<ScenePair> generate_pairs(std::span<const PointCloud> catalog,
                                      std::uint64_t base_seed, std::uint32_t count,
                                      const SceneConfig& cfg, unsigned threads) {
  cfg.validate();
  if (catalog.empty()) fail(ErrorKind::InvalidInput, "object catalog is empty");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::uint32_t>(count, 1));

  std::vector<std::optional<ScenePair>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::uint32_t> next{0};
  auto worker = [&] {
    for (std::uint32_t i = next++; i < count; i = next++) {
      try {
        slots[i] = generate_indexed_pair(catalog, base_seed, i, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<ScenePair> pairs;
  pairs.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    pairs.push_back(std::move(*slots[i]));
  }
  return pairs;
}

}  // namespace roomgen
