#include "roomgen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roomgen/error.hpp"

namespace roomgen {

bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

PointCloud::PointCloud(std::vector<Vec3> points) : points_(std::move(points)) {
  if (points_.empty()) fail(ErrorKind::InvalidInput, "point cloud must contain at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!is_finite(points_[i]))
      fail(ErrorKind::InvalidInput, "non-finite coordinate at point " + std::to_string(i));
  }
}

double Aabb::max_extent() const { return std::max({extent(0), extent(1), extent(2)}); }

Aabb compute_aabb(std::span<const Vec3> points) {
  if (points.empty()) fail(ErrorKind::InvalidInput, "cannot bound an empty point set");
  Aabb box{points.front(), points.front()};
  for (const Vec3& p : points) {
    box.min = {std::min(box.min.x, p.x), std::min(box.min.y, p.y), std::min(box.min.z, p.z)};
    box.max = {std::max(box.max.x, p.x), std::max(box.max.y, p.y), std::max(box.max.z, p.z)};
  }
  return box;
}

Aabb compute_aabb(const PointCloud& pc) { return compute_aabb(pc.points()); }

PointCloud translate(const PointCloud& pc, const Vec3& delta) {
  if (!is_finite(delta)) fail(ErrorKind::InvalidInput, "translation must be finite");
  std::vector<Vec3> out(pc.begin(), pc.end());
  translate_in_place(out, delta);
  return PointCloud(std::move(out));
}

PointCloud rotate_z(const PointCloud& pc, double theta) {
  if (!std::isfinite(theta)) fail(ErrorKind::InvalidInput, "rotation angle must be finite");
  std::vector<Vec3> out(pc.begin(), pc.end());
  rotate_z_in_place(out, theta);
  return PointCloud(std::move(out));
}

PointCloud scale(const PointCloud& pc, double factor) {
  if (!std::isfinite(factor) || factor <= 0.0)
    fail(ErrorKind::InvalidInput, "scale factor must be finite and positive");
  std::vector<Vec3> out;
  out.reserve(pc.size());
  for (const Vec3& p : pc) out.push_back({p.x * factor, p.y * factor, p.z * factor});
  return PointCloud(std::move(out));
}

PointCloud recenter_to_origin(const PointCloud& pc) {
  return translate(pc, -compute_aabb(pc).min);
}

void translate_in_place(std::span<Vec3> points, const Vec3& delta) {
  for (Vec3& p : points) {
    p.x += delta.x;
    p.y += delta.y;
    p.z += delta.z;
  }
}

void rotate_z_in_place(std::span<Vec3> points, double theta, double pivot_x, double pivot_y) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (Vec3& p : points) {
    const double dx = p.x - pivot_x;
    const double dy = p.y - pivot_y;
    p.x = pivot_x + c * dx - s * dy;
    p.y = pivot_y + s * dx + c * dy;
  }
}

}  // namespace roomgen
