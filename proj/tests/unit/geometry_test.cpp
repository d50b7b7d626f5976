#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "roomgen/error.hpp"
#include "roomgen/geometry.hpp"
#include "support.hpp"

namespace roomgen {
namespace {

void expect_near(const Vec3& a, const Vec3& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

TEST(Aabb, TwoPoints) {
  const Aabb box = compute_aabb(PointCloud({{0, 0, 0}, {1, 2, 3}}));
  EXPECT_EQ(box.min, (Vec3{0, 0, 0}));
  EXPECT_EQ(box.max, (Vec3{1, 2, 3}));
}

TEST(Aabb, SinglePointIsDegenerate) {
  const Aabb box = compute_aabb(PointCloud({{5, 5, 5}}));
  EXPECT_EQ(box.min, box.max);
  EXPECT_EQ(box.max_extent(), 0.0);
}

TEST(Aabb, MixedSigns) {
  const Aabb box = compute_aabb(PointCloud({{-1, 0, 2}, {3, -4, 1}, {0, 0, 0}}));
  EXPECT_EQ(box.min, (Vec3{-1, -4, 0}));
  EXPECT_EQ(box.max, (Vec3{3, 0, 2}));
  EXPECT_EQ(box.extents(), (Vec3{4, 4, 2}));
  EXPECT_EQ(box.footprint_area(), 16.0);
}

TEST(PointCloud, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(PointCloud(std::vector<Vec3>{}), Error);
  EXPECT_THROW(PointCloud({{0, NAN, 0}}), Error);
  EXPECT_THROW(PointCloud({{0, 0, INFINITY}}), Error);
  try {
    PointCloud({{0, 0, 0}, {1, 1, NAN}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    EXPECT_NE(std::string(e.what()).find("point 1"), std::string::npos);
  }
}

TEST(Translate, Examples) {
  EXPECT_EQ(translate(PointCloud({{0, 0, 0}}), {1, 2, 3}), PointCloud({{1, 2, 3}}));
  Rng rng(1);
  const PointCloud pc = testing::random_cloud(rng, 100, -5, 5);
  EXPECT_EQ(translate(pc, {0, 0, 0}), pc);
  const Vec3 d{0.3, -7.1, 2.25};
  const PointCloud back = translate(translate(pc, d), -d);
  for (std::size_t i = 0; i < pc.size(); ++i) expect_near(back[i], pc[i], 1e-12);
}

TEST(RotateZ, QuarterTurn) {
  const PointCloud r = rotate_z(PointCloud({{1, 0, 0}}), std::numbers::pi / 2);
  expect_near(r[0], {0, 1, 0}, 1e-12);
}

TEST(RotateZ, IdentityAndInverse) {
  Rng rng(2);
  const PointCloud pc = testing::random_cloud(rng, 200, -3, 3);
  EXPECT_EQ(rotate_z(pc, 0.0), pc);
  for (double a : {0.1, 1.0, 2.5, -4.0}) {
    const PointCloud back = rotate_z(rotate_z(pc, a), -a);
    for (std::size_t i = 0; i < pc.size(); ++i) expect_near(back[i], pc[i], 1e-10);
  }
}

TEST(RotateZ, PreservesZAndRadius) {
  Rng rng(3);
  const PointCloud pc = testing::random_cloud(rng, 100, -2, 2);
  const PointCloud r = rotate_z(pc, 0.7);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    EXPECT_EQ(r[i].z, pc[i].z);
    EXPECT_NEAR(std::hypot(r[i].x, r[i].y), std::hypot(pc[i].x, pc[i].y), 1e-12);
  }
}

TEST(RotateZ, AboutPivot) {
  std::vector<Vec3> pts{{2, 1, 0}};
  rotate_z_in_place(pts, std::numbers::pi, 1.0, 1.0);
  expect_near(pts[0], {0, 1, 0}, 1e-12);
}

TEST(Scale, RejectsNonPositive) {
  const PointCloud pc({{1, 1, 1}});
  EXPECT_THROW(scale(pc, 0.0), Error);
  EXPECT_THROW(scale(pc, -1.0), Error);
  EXPECT_EQ(scale(pc, 2.0)[0], (Vec3{2, 2, 2}));
}

TEST(Recenter, MinAtOrigin) {
  Rng rng(4);
  const PointCloud r = recenter_to_origin(testing::random_cloud(rng, 50, 3, 9));
  const Aabb box = compute_aabb(r);
  expect_near(box.min, {0, 0, 0}, 1e-12);
}

}  // namespace
}  // namespace roomgen
