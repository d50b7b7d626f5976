#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <random>

#include "roomgen/synth.hpp"

namespace roomgen::testing {

PointCloud random_cloud(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<Vec3> pts(n);
  for (auto& p : pts) p = {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
  return PointCloud(std::move(pts));
}

PointCloud box_corners(double x, double y, double z) {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i)
    pts.push_back({(i & 1) ? x : 0.0, (i & 2) ? y : 0.0, (i & 4) ? z : 0.0});
  return PointCloud(std::move(pts));
}

const std::vector<PointCloud>& catalog() {
  static const std::vector<PointCloud> objects = synth::make_catalog_clouds(90, 42);
  return objects;
}

namespace {

bool rects_intersect(const CellRange& a, const CellRange& b) {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

}  // namespace

LayoutAudit audit_layout(std::span<const Placement> placements) {
  LayoutAudit audit;
  std::vector<const Placement*> placed;
  for (const Placement& p : placements) {
    if (p.skipped) continue;
    ++audit.checked;
    const double base = p.position.z;
    const double top = base + p.footprint.z;
    double support = 0.0;
    for (const Placement* q : placed) {
      if (!rects_intersect(p.cells, q->cells)) continue;
      const double q_top = q->position.z + q->footprint.z;
      support = std::max(support, q_top);
      if (base < q_top && q->position.z < top) ++audit.overlap_violations;
    }
    if (base != support) ++audit.gravity_violations;
    const bool ok = (support + p.footprint.z < 2.0 && support < 0.5) || support < 1e-3;
    if (!p.forced && !ok) ++audit.predicate_violations;
    placed.push_back(&p);
  }
  return audit;
}

TempDir::TempDir(const std::string& tag) {
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("roomgen_" + tag + "_" + std::to_string(rd()));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace roomgen::testing
