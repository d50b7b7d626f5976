#include "roomgen/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "roomgen/error.hpp"

namespace roomgen {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const KeyValue& kv, const char* expected) {
  fail(ErrorKind::FormatError, "config line " + std::to_string(kv.line) + ": key '" + kv.key +
                                   "' expects " + expected + ", got '" + kv.value + "'");
}

double to_double(const KeyValue& kv) {
  try {
    std::size_t used = 0;
    const double v = std::stod(kv.value, &used);
    if (used != kv.value.size()) bad_value(kv, "a number");
    return v;
  } catch (const std::logic_error&) {
    bad_value(kv, "a number");
  }
}

template <typename Int>
Int to_int(const KeyValue& kv) {
  Int v{};
  const char* end = kv.value.data() + kv.value.size();
  auto [ptr, ec] = std::from_chars(kv.value.data(), end, v);
  if (ec != std::errc() || ptr != end) bad_value(kv, "an integer");
  return v;
}

bool to_bool(const KeyValue& kv) {
  if (kv.value == "true" || kv.value == "1" || kv.value == "yes") return true;
  if (kv.value == "false" || kv.value == "0" || kv.value == "no") return false;
  bad_value(kv, "true or false");
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt(bool v) { return v ? "true" : "false"; }

using Setter = std::function<void(RunConfig&, const KeyValue&)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Field {
  const char* key;
  Setter set;
  Getter get;
};

#define ROOMGEN_DOUBLE(KEY, MEMBER) \
  Field{KEY, [](RunConfig& c, const KeyValue& kv) { c.MEMBER = to_double(kv); }, \
        [](const RunConfig& c) { return fmt(c.MEMBER); }}
#define ROOMGEN_BOOL(KEY, MEMBER) \
  Field{KEY, [](RunConfig& c, const KeyValue& kv) { c.MEMBER = to_bool(kv); }, \
        [](const RunConfig& c) { return fmt(c.MEMBER); }}
#define ROOMGEN_INT(KEY, MEMBER) \
  Field{KEY, \
        [](RunConfig& c, const KeyValue& kv) { c.MEMBER = to_int<decltype(c.MEMBER)>(kv); }, \
        [](const RunConfig& c) { return std::to_string(c.MEMBER); }}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      ROOMGEN_DOUBLE("object.size_min", scene.object.size_min),
      ROOMGEN_DOUBLE("object.size_max", scene.object.size_max),
      ROOMGEN_DOUBLE("object.drop_ratio_max", scene.object.drop_ratio_max),
      ROOMGEN_DOUBLE("object.jitter_sigma", scene.object.jitter_sigma),
      ROOMGEN_DOUBLE("object.jitter_clip", scene.object.jitter_clip),
      ROOMGEN_BOOL("object.rotation", scene.object.rotation_enabled),
      ROOMGEN_INT("layout.max_iter", scene.layout.max_iter),
      ROOMGEN_BOOL("layout.sort_by_area", scene.layout.sort_by_area),
      Field{"layout.forced_policy",
            [](RunConfig& c, const KeyValue& kv) {
              if (kv.value == "keep") c.scene.layout.forced_policy = ForcedPolicy::Keep;
              else if (kv.value == "skip") c.scene.layout.forced_policy = ForcedPolicy::Skip;
              else bad_value(kv, "keep or skip");
            },
            [](const RunConfig& c) {
              return std::string(c.scene.layout.forced_policy == ForcedPolicy::Keep ? "keep"
                                                                                    : "skip");
            }},
      Field{"layout.height_update",
            [](RunConfig& c, const KeyValue& kv) {
              if (kv.value == "stack") c.scene.layout.height_update = HeightUpdate::Stack;
              else if (kv.value == "additive")
                c.scene.layout.height_update = HeightUpdate::Additive;
              else bad_value(kv, "stack or additive");
            },
            [](const RunConfig& c) {
              return std::string(c.scene.layout.height_update == HeightUpdate::Stack
                                     ? "stack"
                                     : "additive");
            }},
      ROOMGEN_INT("layout.room_attempts", scene.layout.room_attempts),
      ROOMGEN_BOOL("scene.floor_wall", scene.confounders.enabled),
      ROOMGEN_DOUBLE("scene.confounder_density", scene.confounders.density),
      ROOMGEN_DOUBLE("scene.wall_height", scene.confounders.wall_height),
      ROOMGEN_BOOL("scene.rotation", scene.augment.rotation_enabled),
      ROOMGEN_DOUBLE("scene.drop_ratio_max", scene.augment.drop_ratio_max),
      ROOMGEN_DOUBLE("scene.jitter_sigma", scene.augment.jitter_sigma),
      ROOMGEN_DOUBLE("scene.jitter_clip", scene.augment.jitter_clip),
      ROOMGEN_INT("scene.point_budget", scene.point_budget),
      ROOMGEN_INT("scene.min_points", scene.min_points),
      ROOMGEN_INT("scene.objects_min", scene.objects_min),
      ROOMGEN_INT("scene.objects_max", scene.objects_max),
      ROOMGEN_INT("catalog.min_object_points", min_object_points),
      ROOMGEN_DOUBLE("loss.tau", loss.temperature),
      ROOMGEN_BOOL("loss.exclude_self", loss.exclude_self),
      ROOMGEN_INT("encoder.seed", encoder.encoder_seed),
      ROOMGEN_INT("encoder.width", encoder.encoder_width),
      ROOMGEN_INT("encoder.depth", encoder.encoder_depth),
      ROOMGEN_INT("head.seed", encoder.head_seed),
      ROOMGEN_INT("head.output", encoder.head_output),
  };
  return table;
}

#undef ROOMGEN_DOUBLE
#undef ROOMGEN_BOOL
#undef ROOMGEN_INT

}  // namespace

void RunConfig::validate() const {
  scene.validate();
  loss.validate();
  if (encoder.encoder_width < 1 || encoder.encoder_depth < 1 || encoder.head_output < 1)
    fail(ErrorKind::InvalidInput, "encoder and head widths must be positive");
  if (min_object_points < 1) fail(ErrorKind::InvalidInput, "min_object_points must be >= 1");
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorKind::FormatError, "config line " + std::to_string(line_no) +
                                       ": expected 'key = value', got '" + std::string(line) +
                                       "'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty())
      fail(ErrorKind::FormatError, "config line " + std::to_string(line_no) + ": empty key");
    out.push_back({std::string(key), std::string(trim(line.substr(eq + 1))), line_no});
  }
  return out;
}

RunConfig apply_config(RunConfig base, std::span<const KeyValue> entries) {
  std::map<std::string_view, const Field*> index;
  for (const Field& f : fields()) index.emplace(f.key, &f);
  for (const KeyValue& kv : entries) {
    auto it = index.find(kv.key);
    if (it == index.end())
      fail(ErrorKind::FormatError,
           "config line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
    it->second->set(base, kv);
  }
  base.validate();
  return base;
}

RunConfig parse_config(std::string_view text) {
  return apply_config(RunConfig{}, parse_key_values(text));
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string to_config_text(const RunConfig& cfg) {
  std::string out;
  for (const Field& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(cfg);
    out += '\n';
  }
  return out;
}

}  // namespace roomgen
