#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "roomgen/object_io.hpp"
#include "roomgen/ply_export.hpp"
#include "support.hpp"

namespace roomgen {
namespace {

RoomScene scene_with_labels(std::vector<std::uint32_t> labels) {
  Rng rng(1);
  RoomScene s{testing::random_cloud(rng, labels.size(), -2, 2), std::move(labels), {}, 0, {}};
  return s;
}

std::vector<std::string> body_lines(const std::string& ply) {
  std::istringstream in(ply.substr(ply.find("end_header\n") + 11));
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

std::string color_of(const std::string& line) {
  std::istringstream in(line);
  std::string x, y, z, r, g, b;
  in >> x >> y >> z >> r >> g >> b;
  return r + " " + g + " " + b;
}

TEST(InstanceColor, GrayForConfounders) {
  EXPECT_EQ(instance_color(0), (std::array<std::uint8_t, 3>{128, 128, 128}));
  std::set<std::array<std::uint8_t, 3>> seen;
  for (std::uint32_t id = 1; id <= 18; ++id) {
    const auto c = instance_color(id);
    EXPECT_FALSE(c[0] == c[1] && c[1] == c[2]);
    seen.insert(c);
  }
  EXPECT_EQ(seen.size(), 18u);
}

TEST(ScenePly, SingleInstanceOneColor) {
  const std::string ply = scene_to_ply(scene_with_labels(std::vector<std::uint32_t>(50, 4)));
  const auto lines = body_lines(ply);
  ASSERT_EQ(lines.size(), 50u);
  std::set<std::string> colors;
  for (const auto& l : lines) colors.insert(color_of(l));
  ASSERT_EQ(colors.size(), 1u);
  EXPECT_NE(*colors.begin(), "128 128 128");
}

TEST(ScenePly, HeaderCountAndReadBack) {
  std::vector<std::uint32_t> labels(300);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<std::uint32_t>(i % 5);
  const RoomScene s = scene_with_labels(labels);
  const std::string ply = scene_to_ply(s);
  EXPECT_NE(ply.find("element vertex 300\n"), std::string::npos);
  std::istringstream in(ply);
  const PointCloud back = read_ply(in, "export");
  ASSERT_EQ(back.size(), 300u);
  for (std::size_t i = 0; i < back.size(); ++i)
    EXPECT_EQ(back[i].x, static_cast<double>(static_cast<float>(s.points[i].x)));
}

TEST(ScenePly, ExportsAreByteIdentical) {
  const RoomScene s = scene_with_labels({0, 1, 2, 3, 1, 0});
  testing::TempDir dir("ply");
  export_ply(s, dir / "a.ply");
  export_ply(s, dir / "b.ply");
  EXPECT_EQ(testing::read_bytes(dir / "a.ply"), testing::read_bytes(dir / "b.ply"));
}

}  // namespace
}  // namespace roomgen
