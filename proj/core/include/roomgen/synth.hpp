#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "roomgen/geometry.hpp"
#include "roomgen/rng.hpp"

namespace roomgen::synth {

// Furniture-like procedural shapes, surface-sampled, roughly unit scale.
enum class ShapeKind {
  Box, Cylinder, Ellipsoid, Table, Chair, Lamp, Shelf, Sofa, Bed,
  Airplane, Car, Rifle, Boat, Bench, Cabinet,
};

inline constexpr ShapeKind kAllShapes[] = {
    ShapeKind::Table, ShapeKind::Chair,    ShapeKind::Airplane,  ShapeKind::Car,
    ShapeKind::Sofa,  ShapeKind::Rifle,    ShapeKind::Lamp,      ShapeKind::Boat,
    ShapeKind::Bench, ShapeKind::Cabinet,  ShapeKind::Shelf,     ShapeKind::Bed,
    ShapeKind::Box,   ShapeKind::Cylinder, ShapeKind::Ellipsoid,
};

std::string_view shape_name(ShapeKind kind);

PointCloud make_shape(ShapeKind kind, Rng& rng, std::size_t points);

struct SyntheticObject {
  std::string id;
  std::string category;
  PointCloud cloud;
};

// Cycles through every shape kind with randomized proportions.
std::vector<SyntheticObject> make_catalog(std::size_t count, std::uint64_t seed,
                                          std::size_t points_per_object = 2048);

std::vector<PointCloud> make_catalog_clouds(std::size_t count, std::uint64_t seed,
                                            std::size_t points_per_object = 2048);

}  // namespace roomgen::synth
