#include "roomgen/ply_export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "roomgen/error.hpp"

namespace roomgen {

std::array<std::uint8_t, 3> instance_color(std::uint32_t label) {
  if (label == 0) return {128, 128, 128};
  // Golden-ratio hue walk keeps neighbouring ids visually distinct.
  const double hue = std::fmod(static_cast<double>(label) * 0.618033988749895, 1.0) * 6.0;
  const double s = 0.75;
  const double v = 0.95;
  const int sector = static_cast<int>(hue) % 6;
  const double f = hue - std::floor(hue);
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  double r = v, g = t, b = p;
  switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  auto byte = [](double c) { return static_cast<std::uint8_t>(std::lround(c * 255.0)); };
  return {byte(r), byte(g), byte(b)};
}

std::string scene_to_ply(const RoomScene& scene) {
  if (scene.labels.size() != scene.points.size())
    fail(ErrorKind::InvalidInput, "scene labels and points differ in length");
  std::string out;
  out.reserve(64 * scene.points.size() + 256);
  out += "ply\nformat ascii 1.0\ncomment instance colors, gray = floor/wall\n";
  out += "element vertex " + std::to_string(scene.points.size()) + "\n";
  out += "property float x\nproperty float y\nproperty float z\n";
  out += "property uchar red\nproperty uchar green\nproperty uchar blue\nend_header\n";
  char buf[64];
  auto put_float = [&](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), static_cast<float>(v));
    out.append(buf, ptr);
  };
  for (std::size_t i = 0; i < scene.points.size(); ++i) {
    const Vec3& p = scene.points[i];
    put_float(p.x);
    out += ' ';
    put_float(p.y);
    out += ' ';
    put_float(p.z);
    const auto c = instance_color(scene.labels[i]);
    for (std::uint8_t ch : c) {
      out += ' ';
      out += std::to_string(ch);
    }
    out += '\n';
  }
  return out;
}

void export_ply(const RoomScene& scene, const std::filesystem::path& path) {
  const std::string text = scene_to_ply(scene);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace roomgen
