#include "roomgen/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "roomgen/error.hpp"

namespace roomgen::synth {

namespace {

struct Box {
  Vec3 lo;
  Vec3 size;
};

struct Cylinder {
  Vec3 base;  // center of the bottom cap
  double radius;
  double height;
};

struct Ellipsoid {
  Vec3 center;
  Vec3 radii;
};

struct Part {
  enum { kBox, kCylinder, kEllipsoid } type;
  Box box{};
  Cylinder cyl{};
  Ellipsoid ell{};

  double area() const {
    switch (type) {
      case kBox:
        return 2.0 * (box.size.x * box.size.y + box.size.y * box.size.z + box.size.x * box.size.z);
      case kCylinder:
        return 2.0 * std::numbers::pi * cyl.radius * (cyl.radius + cyl.height);
      case kEllipsoid: {
        // Knud Thomsen's approximation.
        const double p = 1.6075;
        const double a = std::pow(ell.radii.x, p), b = std::pow(ell.radii.y, p),
                     c = std::pow(ell.radii.z, p);
        return 4.0 * std::numbers::pi * std::pow((a * b + a * c + b * c) / 3.0, 1.0 / p);
      }
    }
    return 0.0;
  }

  Vec3 sample(Rng& rng) const {
    const double u = rng.uniform01();
    const double v = rng.uniform01();
    switch (type) {
      case kBox: {
        const Vec3& s = box.size;
        const double faces[3] = {s.y * s.z, s.x * s.z, s.x * s.y};
        double pick = rng.uniform01() * (faces[0] + faces[1] + faces[2]);
        const double side = rng.uniform01() < 0.5 ? 0.0 : 1.0;
        if (pick < faces[0]) return box.lo + Vec3{side * s.x, u * s.y, v * s.z};
        pick -= faces[0];
        if (pick < faces[1]) return box.lo + Vec3{u * s.x, side * s.y, v * s.z};
        return box.lo + Vec3{u * s.x, v * s.y, side * s.z};
      }
      case kCylinder: {
        const double r = cyl.radius, h = cyl.height;
        const double lateral = 2.0 * std::numbers::pi * r * h;
        const double caps = 2.0 * std::numbers::pi * r * r;
        const double theta = 2.0 * std::numbers::pi * u;
        if (rng.uniform01() * (lateral + caps) < lateral)
          return cyl.base + Vec3{r * std::cos(theta), r * std::sin(theta), v * h};
        const double rr = r * std::sqrt(v);
        const double z = rng.uniform01() < 0.5 ? 0.0 : h;
        return cyl.base + Vec3{rr * std::cos(theta), rr * std::sin(theta), z};
      }
      case kEllipsoid: {
        const double z = 2.0 * u - 1.0;
        const double phi = 2.0 * std::numbers::pi * v;
        const double rxy = std::sqrt(1.0 - z * z);
        return ell.center + Vec3{ell.radii.x * rxy * std::cos(phi),
                                 ell.radii.y * rxy * std::sin(phi), ell.radii.z * z};
      }
    }
    return {};
  }
};

Part box(Vec3 lo, Vec3 size) { return Part{Part::kBox, {lo, size}, {}, {}}; }
Part cylinder(Vec3 base, double r, double h) { return Part{Part::kCylinder, {}, {base, r, h}, {}}; }
Part ellipsoid(Vec3 c, Vec3 r) { return Part{Part::kEllipsoid, {}, {}, {c, r}}; }

void add_legs(std::vector<Part>& parts, double w, double d, double h, double t) {
  parts.push_back(box({0, 0, 0}, {t, t, h}));
  parts.push_back(box({w - t, 0, 0}, {t, t, h}));
  parts.push_back(box({0, d - t, 0}, {t, t, h}));
  parts.push_back(box({w - t, d - t, 0}, {t, t, h}));
}

std::vector<Part> build(ShapeKind kind, Rng& rng) {
  auto r = [&](double lo, double hi) { return rng.uniform(lo, hi); };
  std::vector<Part> parts;
  switch (kind) {
    case ShapeKind::Box:
      parts.push_back(box({0, 0, 0}, {r(0.3, 1.0), r(0.3, 1.0), r(0.2, 1.0)}));
      break;
    case ShapeKind::Cylinder:
      parts.push_back(cylinder({0, 0, 0}, r(0.1, 0.5), r(0.2, 1.0)));
      break;
    case ShapeKind::Ellipsoid:
      parts.push_back(ellipsoid({0, 0, 0}, {r(0.2, 0.5), r(0.2, 0.5), r(0.2, 0.5)}));
      break;
    case ShapeKind::Table: {
      const double w = r(0.6, 1.0), d = r(0.4, 0.8), h = r(0.35, 0.6), t = 0.05;
      add_legs(parts, w, d, h, t);
      parts.push_back(box({0, 0, h}, {w, d, t}));
      break;
    }
    case ShapeKind::Chair: {
      const double w = r(0.4, 0.5), d = r(0.4, 0.5), h = r(0.35, 0.45), t = 0.04;
      add_legs(parts, w, d, h, t);
      parts.push_back(box({0, 0, h}, {w, d, t}));
      parts.push_back(box({0, d - t, h + t}, {w, t, r(0.35, 0.5)}));
      break;
    }
    case ShapeKind::Lamp: {
      const double h = r(0.8, 1.0);
      parts.push_back(cylinder({0, 0, 0}, r(0.1, 0.15), 0.03));
      parts.push_back(cylinder({0, 0, 0.03}, 0.015, h));
      parts.push_back(cylinder({0, 0, h}, r(0.12, 0.2), r(0.12, 0.2)));
      break;
    }
    case ShapeKind::Shelf: {
      const double w = r(0.5, 0.9), d = r(0.2, 0.35), h = r(0.6, 1.0), t = 0.03;
      parts.push_back(box({0, 0, 0}, {t, d, h}));
      parts.push_back(box({w - t, 0, 0}, {t, d, h}));
      parts.push_back(box({0, d - t, 0}, {w, t, h}));
      const int shelves = 3 + static_cast<int>(rng.uniform_int(0, 2));
      for (int i = 0; i <= shelves; ++i)
        parts.push_back(box({0, 0, (h - t) * i / shelves}, {w, d, t}));
      break;
    }
    case ShapeKind::Sofa: {
      const double w = r(0.8, 1.0), d = r(0.35, 0.45), h = r(0.15, 0.22);
      parts.push_back(box({0, 0, 0}, {w, d, h}));
      parts.push_back(box({0, d - 0.08, h}, {w, 0.08, r(0.15, 0.25)}));
      parts.push_back(box({0, 0, h}, {0.08, d, 0.1}));
      parts.push_back(box({w - 0.08, 0, h}, {0.08, d, 0.1}));
      break;
    }
    case ShapeKind::Bed: {
      const double w = r(0.55, 0.75), d = 1.0, h = r(0.15, 0.25);
      parts.push_back(box({0, 0, 0}, {w, d, h}));
      parts.push_back(box({0, d - 0.05, 0}, {w, 0.05, h + r(0.15, 0.3)}));
      parts.push_back(box({0.05, 0.05, h}, {w - 0.1, 0.2, 0.06}));
      break;
    }
    case ShapeKind::Airplane: {
      const double len = 1.0, span = r(0.8, 1.0), body = r(0.08, 0.12);
      parts.push_back(ellipsoid({0, 0, 0}, {len / 2, body, body}));
      parts.push_back(box({-0.1, -span / 2, -0.01}, {r(0.15, 0.25), span, 0.02}));
      parts.push_back(box({-len / 2, -0.15, -0.01}, {0.1, 0.3, 0.02}));
      parts.push_back(box({-len / 2, -0.01, 0}, {0.1, 0.02, r(0.12, 0.2)}));
      break;
    }
    case ShapeKind::Car: {
      const double len = 1.0, w = r(0.4, 0.5), h = r(0.15, 0.2);
      parts.push_back(box({0, 0, 0.05}, {len, w, h}));
      parts.push_back(box({len * 0.25, 0.03, 0.05 + h}, {len * 0.45, w - 0.06, r(0.1, 0.15)}));
      for (double x : {0.15, len - 0.15})
        for (double y : {0.0, w}) parts.push_back(cylinder({x, y, 0}, 0.07, 0.03));
      break;
    }
    case ShapeKind::Rifle: {
      parts.push_back(box({0, 0, 0.05}, {1.0, r(0.04, 0.06), r(0.05, 0.08)}));
      parts.push_back(box({0.6, 0, 0}, {0.05, 0.04, 0.08}));
      parts.push_back(box({0, 0, 0}, {0.25, 0.05, 0.1}));
      break;
    }
    case ShapeKind::Boat: {
      const double w = r(0.25, 0.35);
      parts.push_back(ellipsoid({0, 0, 0}, {0.5, w / 2, r(0.08, 0.12)}));
      parts.push_back(box({-0.15, -w / 4, 0.05}, {0.25, w / 2, r(0.08, 0.2)}));
      break;
    }
    case ShapeKind::Bench: {
      const double w = 1.0, d = r(0.25, 0.35), h = r(0.3, 0.4), t = 0.04;
      add_legs(parts, w, d, h, t);
      parts.push_back(box({0, 0, h}, {w, d, t}));
      break;
    }
    case ShapeKind::Cabinet: {
      parts.push_back(box({0, 0, 0}, {r(0.4, 0.8), r(0.3, 0.5), r(0.4, 0.9)}));
      break;
    }
  }
  return parts;
}

}  // namespace

std::string_view shape_name(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Box: return "box";
    case ShapeKind::Cylinder: return "cylinder";
    case ShapeKind::Ellipsoid: return "ellipsoid";
    case ShapeKind::Table: return "table";
    case ShapeKind::Chair: return "chair";
    case ShapeKind::Lamp: return "lamp";
    case ShapeKind::Shelf: return "shelf";
    case ShapeKind::Sofa: return "sofa";
    case ShapeKind::Bed: return "bed";
    case ShapeKind::Airplane: return "airplane";
    case ShapeKind::Car: return "car";
    case ShapeKind::Rifle: return "rifle";
    case ShapeKind::Boat: return "boat";
    case ShapeKind::Bench: return "bench";
    case ShapeKind::Cabinet: return "cabinet";
  }
  return "unknown";
}

PointCloud make_shape(ShapeKind kind, Rng& rng, std::size_t points) {
  if (points < 1) fail(ErrorKind::InvalidInput, "shape needs at least one point");
  const std::vector<Part> parts = build(kind, rng);
  std::vector<double> cumulative;
  double total = 0.0;
  for (const Part& p : parts) cumulative.push_back(total += p.area());
  std::vector<Vec3> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double pick = rng.uniform01() * total;
    const auto k = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin());
    out.push_back(parts[std::min(k, parts.size() - 1)].sample(rng));
  }
  return PointCloud(std::move(out));
}

std::vector<SyntheticObject> make_catalog(std::size_t count, std::uint64_t seed,
                                          std::size_t points_per_object) {
  std::vector<SyntheticObject> out;
  out.reserve(count);
  constexpr std::size_t kinds = std::size(kAllShapes);
  for (std::size_t i = 0; i < count; ++i) {
    const ShapeKind kind = kAllShapes[i % kinds];
    Rng rng(split_seed(seed, i));
    std::string name(shape_name(kind));
    out.push_back({name + "_" + std::to_string(i), name, make_shape(kind, rng, points_per_object)});
  }
  return out;
}

std::vector<PointCloud> make_catalog_clouds(std::size_t count, std::uint64_t seed,
                                            std::size_t points_per_object) {
  std::vector<PointCloud> clouds;
  for (auto& obj : make_catalog(count, seed, points_per_object)) clouds.push_back(std::move(obj.cloud));
  return clouds;
}

}  // namespace roomgen::synth
