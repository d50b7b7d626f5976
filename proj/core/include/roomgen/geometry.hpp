#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace roomgen {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  friend bool operator==(const Vec3&, const Vec3&) = default;
  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
};

bool is_finite(const Vec3& v);

// Ordered, non-empty list of finite points in meters. The invariants are
// checked on construction, so every PointCloud in circulation is valid.
class PointCloud {
 public:
  explicit PointCloud(std::vector<Vec3> points);

  std::size_t size() const noexcept { return points_.size(); }
  const Vec3& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Vec3> points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  // Moves the storage out; the cloud is left unusable.
  std::vector<Vec3> release() && { return std::move(points_); }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<Vec3> points_;
};

struct Aabb {
  Vec3 min;
  Vec3 max;

  double extent(int axis) const { return max[axis] - min[axis]; }
  Vec3 extents() const { return max - min; }
  double max_extent() const;
  // Floor footprint extent_x * extent_y in m^2.
  double footprint_area() const { return extent(0) * extent(1); }

  friend bool operator==(const Aabb&, const Aabb&) = default;
};

Aabb compute_aabb(std::span<const Vec3> points);
Aabb compute_aabb(const PointCloud& pc);

PointCloud translate(const PointCloud& pc, const Vec3& delta);
PointCloud rotate_z(const PointCloud& pc, double theta);
// Uniform scale about the origin.
PointCloud scale(const PointCloud& pc, double factor);
// Shift so the bounding-box minimum sits at the origin.
PointCloud recenter_to_origin(const PointCloud& pc);

void translate_in_place(std::span<Vec3> points, const Vec3& delta);
void rotate_z_in_place(std::span<Vec3> points, double theta, double pivot_x = 0.0,
                       double pivot_y = 0.0);

}  // namespace roomgen
