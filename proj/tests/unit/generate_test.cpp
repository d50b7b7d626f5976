#include <gtest/gtest.h>

#include "roomgen/generate.hpp"
#include "support.hpp"

namespace roomgen {
namespace {

TEST(PairSeeds, DistinctChildren) {
  const PairSeeds s = pair_seeds(7, 0);
  EXPECT_NE(s.room_a, s.room_b);
  EXPECT_NE(s.selection, s.room_a);
  const PairSeeds t = pair_seeds(7, 1);
  EXPECT_NE(s.room_a, t.room_a);
  EXPECT_EQ(pair_seeds(7, 1).room_b, t.room_b);
}

TEST(GeneratePairs, IndexOrderIndependentOfThreads) {
  SceneConfig cfg;
  cfg.point_budget = 4000;
  const auto one = generate_pairs(testing::catalog(), 3, 5, cfg, 1);
  const auto many = generate_pairs(testing::catalog(), 3, 5, cfg, 4);
  ASSERT_EQ(one.size(), 5u);
  ASSERT_EQ(many.size(), 5u);
  for (std::uint32_t i = 0; i < 5; ++i) {
    EXPECT_EQ(one[i].pair_index, i);
    EXPECT_EQ(many[i].pair_index, i);
    EXPECT_EQ(one[i].room_a.points, many[i].room_a.points);
    EXPECT_EQ(one[i].room_b.labels, many[i].room_b.labels);
    EXPECT_EQ(one[i].shared_ids, many[i].shared_ids);
  }
}

TEST(GeneratePairs, PairMatchesIndexedGeneration) {
  SceneConfig cfg;
  cfg.point_budget = 2000;
  const auto pairs = generate_pairs(testing::catalog(), 9, 3, cfg, 2);
  const ScenePair p2 = generate_indexed_pair(testing::catalog(), 9, 2, cfg);
  EXPECT_EQ(pairs[2].room_a.points, p2.room_a.points);
  EXPECT_EQ(pairs[2].room_b.points, p2.room_b.points);
}

TEST(GeneratePairs, BothRoomsUseTheSameObjectSet) {
  SceneConfig cfg;
  cfg.point_budget = 2000;
  const ScenePair p = generate_indexed_pair(testing::catalog(), 1, 0, cfg);
  EXPECT_EQ(p.room_a.record.object_count, p.room_b.record.object_count);
  EXPECT_GE(p.room_a.record.object_count, 12u);
  EXPECT_LE(p.room_a.record.object_count, 18u);
}

}  // namespace
}  // namespace roomgen
