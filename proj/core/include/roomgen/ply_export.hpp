#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "roomgen/scene.hpp"

namespace roomgen {

// Gray for confounders (label 0); a saturated, id-derived color otherwise.
std::array<std::uint8_t, 3> instance_color(std::uint32_t label);

// ASCII PLY with float x/y/z and uchar red/green/blue per vertex.
std::string scene_to_ply(const RoomScene& scene);
void export_ply(const RoomScene& scene, const std::filesystem::path& path);

}  // namespace roomgen
