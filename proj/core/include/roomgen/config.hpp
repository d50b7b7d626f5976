#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roomgen/ocl.hpp"
#include "roomgen/scene.hpp"

namespace roomgen {

struct EncoderConfig {
  std::uint64_t encoder_seed = 0;
  int encoder_width = 64;
  int encoder_depth = 3;
  std::uint64_t head_seed = 1;
  int head_output = 128;
};

// Every tunable of a generation run. Serialized as flat "key = value" text.
struct RunConfig {
  SceneConfig scene;
  OclConfig loss;
  EncoderConfig encoder;
  std::size_t min_object_points = 10;

  void validate() const;
};

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

// Parses "key = value" lines; blank lines and lines starting with '#' are
// skipped. Malformed lines raise FormatError naming the line.
std::vector<KeyValue> parse_key_values(std::string_view text);

// Applies overrides on top of `base`. Unknown keys and bad values raise.
RunConfig apply_config(RunConfig base, std::span<const KeyValue> entries);
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// All keys with their effective values, one per line, in a fixed order.
std::string to_config_text(const RunConfig& cfg);

}  // namespace roomgen
