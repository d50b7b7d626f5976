#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "roomgen/scene.hpp"

namespace roomgen {

// Little-endian scene container:
//   "RROOMS01" | version u32 | pair count u32 | point budget u32 | base seed u64
//   per pair: pair index u32, then room A and room B as
//     point count u32 | a_cells u32 | b_cells u32 | child seed u64
//     | point count x (x, y, z) f32 | point count x label u32
//   then shared ids: count u32 | ids u32...
//   trailing metadata: byte length u32 | UTF-8 "key = value" text
inline constexpr std::array<char, 8> kContainerMagic = {'R', 'R', 'O', 'O', 'M', 'S', '0', '1'};
inline constexpr std::uint32_t kContainerVersion = 1;
inline constexpr std::size_t kContainerHeaderBytes = 8 + 4 + 4 + 4 + 8;
inline constexpr std::size_t kRoomHeaderBytes = 4 + 4 + 4 + 8;

struct SceneContainer {
  std::uint32_t version = kContainerVersion;
  std::uint32_t point_budget = 0;
  std::uint64_t base_seed = 0;
  std::vector<ScenePair> pairs;
  std::string metadata;
};

// Exact encoded size in bytes.
std::size_t encoded_size(const SceneContainer& c);

std::vector<std::uint8_t> encode_scene_container(const SceneContainer& c);
SceneContainer decode_scene_container(std::span<const std::uint8_t> bytes,
                                      const std::string& source = "<memory>");

// Returns the number of bytes written.
std::size_t write_scene_container(const SceneContainer& c, const std::filesystem::path& path);
SceneContainer read_scene_container(const std::filesystem::path& path);

// Config text followed by per-room generation records ("room.<pair>.<a|b>.<field>").
std::string make_metadata(const std::string& config_text, std::span<const ScenePair> pairs);
// Fills RoomRecord summaries and RoomDims sizing fields from the metadata block.
void restore_room_records(SceneContainer& c);

}  // namespace roomgen
