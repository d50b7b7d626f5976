#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "roomgen/geometry.hpp"
#include "roomgen/layout.hpp"
#include "roomgen/rng.hpp"
#include "roomgen/scene.hpp"

namespace roomgen::testing {

// n points uniform in [lo, hi]^3
PointCloud random_cloud(Rng& rng, std::size_t n, double lo = 0.0, double hi = 1.0);

// 8 corners of an axis-aligned box with extents (x, y, z)
PointCloud box_corners(double x, double y, double z);

// Shared synthetic catalog, built once per process.
const std::vector<PointCloud>& catalog();

// Independent replay of a placement sequence. Two objects whose cell
// rectangles intersect share cells, so per-cell interval disjointness is a
// pairwise check on the rectangles.
struct LayoutAudit {
  std::size_t checked = 0;
  std::size_t gravity_violations = 0;    // base_z != max top of earlier overlapping objects
  std::size_t predicate_violations = 0;  // non-forced placement failing the acceptance rule
  std::size_t overlap_violations = 0;    // vertical intervals intersect on a shared cell
};

LayoutAudit audit_layout(std::span<const Placement> placements);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p);

}  // namespace roomgen::testing
