#include "roomgen/container.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "roomgen/config.hpp"
#include "roomgen/error.hpp"

namespace roomgen {

namespace {

class Writer {
 public:
  explicit Writer(std::size_t reserve) { bytes_.reserve(reserve); }

  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void raw(std::string_view s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }

  std::vector<std::uint8_t> take() && { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  Reader(std::span<const std::uint8_t> bytes, const std::string& source)
      : bytes_(bytes), source_(source) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  void need(std::size_t n, const char* what) const {
    if (remaining() < n)
      fail(ErrorKind::CorruptContainer, source_ + ": truncated " + what + " at byte offset " +
                                            std::to_string(pos_) + " (need " + std::to_string(n) +
                                            ", have " + std::to_string(remaining()) + ")");
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64(const char* what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }
  float f32(const char* what) { return std::bit_cast<float>(u32(what)); }
  std::string raw(std::size_t n, const char* what) {
    need(n, what);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  [[noreturn]] void corrupt(std::size_t at, const std::string& what) const {
    fail(ErrorKind::CorruptContainer,
         source_ + ": " + what + " at byte offset " + std::to_string(at));
  }

 private:
  std::span<const std::uint8_t> bytes_;
  const std::string& source_;
  std::size_t pos_ = 0;
};

std::uint32_t checked_u32(std::uint64_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max())
    fail(ErrorKind::InvalidInput, std::string(what) + " does not fit in 32 bits");
  return static_cast<std::uint32_t>(v);
}

void validate_pair(const ScenePair& pair, std::uint32_t budget) {
  for (const RoomScene* room : {&pair.room_a, &pair.room_b}) {
    if (room->points.size() != budget)
      fail(ErrorKind::InvalidInput, "pair " + std::to_string(pair.pair_index) +
                                        ": room point count differs from the point budget");
    if (room->labels.size() != room->points.size())
      fail(ErrorKind::InvalidInput, "pair " + std::to_string(pair.pair_index) +
                                        ": labels and points differ in length");
  }
  const std::set<std::uint32_t> la(pair.room_a.labels.begin(), pair.room_a.labels.end());
  const std::set<std::uint32_t> lb(pair.room_b.labels.begin(), pair.room_b.labels.end());
  for (std::uint32_t id : pair.shared_ids) {
    if (id == 0 || !la.contains(id) || !lb.contains(id))
      fail(ErrorKind::InvalidInput, "pair " + std::to_string(pair.pair_index) + ": shared id " +
                                        std::to_string(id) + " is not present in both rooms");
  }
}

void encode_room(Writer& w, const RoomScene& room) {
  w.u32(checked_u32(room.points.size(), "point count"));
  w.u32(checked_u32(static_cast<std::uint64_t>(room.dims.a_cells), "a_cells"));
  w.u32(checked_u32(static_cast<std::uint64_t>(room.dims.b_cells), "b_cells"));
  w.u64(room.seed);
  for (const Vec3& p : room.points) {
    w.f32(static_cast<float>(p.x));
    w.f32(static_cast<float>(p.y));
    w.f32(static_cast<float>(p.z));
  }
  for (std::uint32_t l : room.labels) w.u32(l);
}

RoomScene decode_room(Reader& r, std::uint32_t budget) {
  const std::size_t at = r.offset();
  const std::uint32_t count = r.u32("room point count");
  if (count != budget) r.corrupt(at, "room point count " + std::to_string(count) +
                                         " differs from budget " + std::to_string(budget));
  if (count == 0) r.corrupt(at, "room has no points");
  RoomDims dims;
  dims.a_cells = r.u32("room a_cells");
  dims.b_cells = r.u32("room b_cells");
  const std::uint64_t seed = r.u64("room seed");
  r.need(static_cast<std::size_t>(count) * 16, "room body");
  std::vector<Vec3> points(count);
  for (Vec3& p : points) {
    const std::size_t point_at = r.offset();
    p.x = r.f32("point");
    p.y = r.f32("point");
    p.z = r.f32("point");
    if (!is_finite(p)) r.corrupt(point_at, "non-finite point");
  }
  std::vector<std::uint32_t> labels(count);
  for (std::uint32_t& l : labels) l = r.u32("label");
  RoomScene room{PointCloud(std::move(points)), std::move(labels), dims, seed, {}};
  return room;
}

}  // namespace

std::size_t encoded_size(const SceneContainer& c) {
  std::size_t n = kContainerHeaderBytes;
  for (const auto& pair : c.pairs) {
    n += 4;
    for (const RoomScene* room : {&pair.room_a, &pair.room_b})
      n += kRoomHeaderBytes + room->points.size() * 12 + room->labels.size() * 4;
    n += 4 + 4 * pair.shared_ids.size();
  }
  return n + 4 + c.metadata.size();
}

std::vector<std::uint8_t> encode_scene_container(const SceneContainer& c) {
  if (c.version != kContainerVersion)
    fail(ErrorKind::InvalidInput, "unsupported container version " + std::to_string(c.version));
  for (const auto& pair : c.pairs) validate_pair(pair, c.point_budget);

  Writer w(encoded_size(c));
  w.raw(std::string_view(kContainerMagic.data(), kContainerMagic.size()));
  w.u32(c.version);
  w.u32(checked_u32(c.pairs.size(), "pair count"));
  w.u32(c.point_budget);
  w.u64(c.base_seed);
  for (const auto& pair : c.pairs) {
    w.u32(pair.pair_index);
    encode_room(w, pair.room_a);
    encode_room(w, pair.room_b);
    w.u32(checked_u32(pair.shared_ids.size(), "shared id count"));
    for (std::uint32_t id : pair.shared_ids) w.u32(id);
  }
  w.u32(checked_u32(c.metadata.size(), "metadata length"));
  w.raw(c.metadata);
  return std::move(w).take();
}

SceneContainer decode_scene_container(std::span<const std::uint8_t> bytes,
                                      const std::string& source) {
  if (bytes.size() < kContainerMagic.size() ||
      !std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin(),
                  [](char m, std::uint8_t b) { return static_cast<std::uint8_t>(m) == b; }))
    fail(ErrorKind::WrongFormat, source + ": not a scene container (magic mismatch at byte 0)");

  Reader r(bytes, source);
  r.raw(kContainerMagic.size(), "magic");
  SceneContainer c;
  c.version = r.u32("version");
  if (c.version != kContainerVersion)
    fail(ErrorKind::WrongFormat, source + ": unsupported container version " +
                                     std::to_string(c.version) + " at byte offset 8");
  const std::uint32_t pair_count = r.u32("pair count");
  c.point_budget = r.u32("point budget");
  c.base_seed = r.u64("base seed");

  c.pairs.reserve(std::min<std::size_t>(pair_count, 1u << 16));
  for (std::uint32_t k = 0; k < pair_count; ++k) {
    const std::uint32_t index = r.u32("pair index");
    RoomScene a = decode_room(r, c.point_budget);
    RoomScene b = decode_room(r, c.point_budget);
    const std::size_t ids_at = r.offset();
    const std::uint32_t id_count = r.u32("shared id count");
    r.need(static_cast<std::size_t>(id_count) * 4, "shared ids");
    std::vector<std::uint32_t> ids(id_count);
    for (std::uint32_t& id : ids) id = r.u32("shared id");
    ScenePair pair{index, std::move(a), std::move(b), std::move(ids)};
    const std::set<std::uint32_t> la(pair.room_a.labels.begin(), pair.room_a.labels.end());
    const std::set<std::uint32_t> lb(pair.room_b.labels.begin(), pair.room_b.labels.end());
    for (std::uint32_t id : pair.shared_ids) {
      if (id == 0 || !la.contains(id) || !lb.contains(id))
        r.corrupt(ids_at, "shared id " + std::to_string(id) + " missing from a room");
    }
    c.pairs.push_back(std::move(pair));
  }

  if (r.remaining() > 0) {
    const std::uint32_t len = r.u32("metadata length");
    c.metadata = r.raw(len, "metadata");
    if (r.remaining() > 0) r.corrupt(r.offset(), "trailing bytes after metadata");
  }
  return c;
}

std::size_t write_scene_container(const SceneContainer& c, const std::filesystem::path& path) {
  const auto bytes = encode_scene_container(c);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
  return bytes.size();
}

SceneContainer read_scene_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  SceneContainer c = decode_scene_container(bytes, path.string());
  restore_room_records(c);
  return c;
}

namespace {

std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string make_metadata(const std::string& config_text, std::span<const ScenePair> pairs) {
  std::string out = "# effective configuration\n" + config_text + "# room records\n";
  for (const auto& pair : pairs) {
    for (int side = 0; side < 2; ++side) {
      const RoomScene& room = side == 0 ? pair.room_a : pair.room_b;
      const RoomRecord& rec = room.record;
      const std::string prefix =
          "room." + std::to_string(pair.pair_index) + (side == 0 ? ".a." : ".b.");
      out += prefix + "object_count = " + std::to_string(rec.object_count) + "\n";
      out += prefix + "forced_count = " + std::to_string(rec.forced_count) + "\n";
      out += prefix + "skipped_count = " + std::to_string(rec.skipped_count) + "\n";
      out += prefix + "footprint_area_sum = " + num(rec.footprint_area_sum) + "\n";
      out += prefix + "area_factor = " + num(room.dims.area_factor) + "\n";
      out += prefix + "overall_area_cm2 = " + num(room.dims.overall_area_cm2) + "\n";
      out += prefix + "scene_rotation = " + num(rec.scene_rotation) + "\n";
      out += prefix + "scene_drop_ratio = " + num(rec.scene_drop_ratio) + "\n";
      out += prefix + "confounder_points = " + std::to_string(rec.confounder_points) + "\n";
      out += prefix + "points_before_subsample = " + std::to_string(rec.points_before_subsample) +
             "\n";
    }
  }
  return out;
}

void restore_room_records(SceneContainer& c) {
  if (c.metadata.empty()) return;
  std::map<std::uint32_t, ScenePair*> by_index;
  for (auto& pair : c.pairs) by_index[pair.pair_index] = &pair;
  for (const KeyValue& kv : parse_key_values(c.metadata)) {
    if (kv.key.rfind("room.", 0) != 0) continue;
    std::istringstream parts(kv.key.substr(5));
    std::string index_s, side, field;
    if (!std::getline(parts, index_s, '.') || !std::getline(parts, side, '.') ||
        !std::getline(parts, field))
      continue;
    std::uint32_t index = 0;
    try {
      index = static_cast<std::uint32_t>(std::stoul(index_s));
    } catch (const std::logic_error&) {
      continue;
    }
    auto it = by_index.find(index);
    if (it == by_index.end() || (side != "a" && side != "b")) continue;
    RoomScene& room = side == "a" ? it->second->room_a : it->second->room_b;
    RoomRecord& rec = room.record;
    try {
      if (field == "object_count") rec.object_count = std::stoull(kv.value);
      else if (field == "forced_count") rec.forced_count = std::stoull(kv.value);
      else if (field == "skipped_count") rec.skipped_count = std::stoull(kv.value);
      else if (field == "footprint_area_sum") rec.footprint_area_sum = std::stod(kv.value);
      else if (field == "area_factor") room.dims.area_factor = std::stod(kv.value);
      else if (field == "overall_area_cm2") room.dims.overall_area_cm2 = std::stod(kv.value);
      else if (field == "scene_rotation") rec.scene_rotation = std::stod(kv.value);
      else if (field == "scene_drop_ratio") rec.scene_drop_ratio = std::stod(kv.value);
      else if (field == "confounder_points") rec.confounder_points = std::stoull(kv.value);
      else if (field == "points_before_subsample")
        rec.points_before_subsample = std::stoull(kv.value);
    } catch (const std::logic_error&) {
      fail(ErrorKind::CorruptContainer, "metadata line " + std::to_string(kv.line) +
                                            ": bad value for " + kv.key);
    }
  }
}

}  // namespace roomgen
