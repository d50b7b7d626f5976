#include "roomgen/object_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "roomgen/error.hpp"

namespace roomgen {

namespace {

[[noreturn]] void format_error(const std::string& source, std::size_t line,
                               const std::string& what) {
  fail(ErrorKind::FormatError, source + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::optional<double> parse_double(std::string_view tok) {
  double v = 0.0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

Vec3 parse_point(const std::vector<std::string_view>& tokens, std::size_t ix, std::size_t iy,
                 std::size_t iz, const std::string& source, std::size_t line) {
  const std::size_t need = std::max({ix, iy, iz}) + 1;
  if (tokens.size() < need)
    format_error(source, line, "expected at least " + std::to_string(need) + " values, found " +
                                   std::to_string(tokens.size()));
  const auto x = parse_double(tokens[ix]);
  const auto y = parse_double(tokens[iy]);
  const auto z = parse_double(tokens[iz]);
  if (!x || !y || !z) format_error(source, line, "coordinate is not a number");
  const Vec3 p{*x, *y, *z};
  if (!is_finite(p)) format_error(source, line, "non-finite coordinate");
  return p;
}

enum class PlyFormat { Ascii, BinaryLittleEndian };

struct PlyProperty {
  std::string name;
  std::string type;
  bool is_list = false;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

std::size_t ply_type_size(const std::string& type) {
  if (type == "char" || type == "uchar" || type == "int8" || type == "uint8") return 1;
  if (type == "short" || type == "ushort" || type == "int16" || type == "uint16") return 2;
  if (type == "int" || type == "uint" || type == "int32" || type == "uint32" ||
      type == "float" || type == "float32")
    return 4;
  if (type == "double" || type == "float64") return 8;
  return 0;
}

template <typename T>
T load_le(const unsigned char* p) {
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes.begin(), bytes.end());
  T v;
  std::memcpy(&v, bytes.data(), sizeof(T));
  return v;
}

double decode_scalar(const std::string& type, const unsigned char* p) {
  if (type == "char" || type == "int8") return load_le<std::int8_t>(p);
  if (type == "uchar" || type == "uint8") return load_le<std::uint8_t>(p);
  if (type == "short" || type == "int16") return load_le<std::int16_t>(p);
  if (type == "ushort" || type == "uint16") return load_le<std::uint16_t>(p);
  if (type == "int" || type == "int32") return load_le<std::int32_t>(p);
  if (type == "uint" || type == "uint32") return load_le<std::uint32_t>(p);
  if (type == "float" || type == "float32") return load_le<float>(p);
  return load_le<double>(p);
}

}  // namespace

PointCloud read_xyz(std::istream& in, const std::string& source) {
  std::vector<Vec3> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() < 3)
      format_error(source, line_no, "expected 'x y z', got '" + line + "'");
    points.push_back(parse_point(tokens, 0, 1, 2, source, line_no));
  }
  if (points.empty()) fail(ErrorKind::TooFewPoints, source + ": no points");
  return PointCloud(std::move(points));
}

PointCloud read_ply(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != "ply") format_error(source, 1, "missing 'ply' magic");
  std::optional<PlyFormat> format;
  std::vector<PlyElement> elements;
  bool header_done = false;
  while (next_line()) {
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string_view kw = tokens[0];
    if (kw == "comment" || kw == "obj_info") continue;
    if (kw == "end_header") {
      header_done = true;
      break;
    }
    if (kw == "format") {
      if (tokens.size() < 2) format_error(source, line_no, "malformed format line");
      if (tokens[1] == "ascii") format = PlyFormat::Ascii;
      else if (tokens[1] == "binary_little_endian") format = PlyFormat::BinaryLittleEndian;
      else format_error(source, line_no, "unsupported PLY format '" + std::string(tokens[1]) + "'");
    } else if (kw == "element") {
      if (tokens.size() != 3) format_error(source, line_no, "malformed element line");
      std::size_t count = 0;
      auto [ptr, ec] = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), count);
      if (ec != std::errc() || ptr != tokens[2].data() + tokens[2].size())
        format_error(source, line_no, "bad element count");
      elements.push_back({std::string(tokens[1]), count, {}});
    } else if (kw == "property") {
      if (elements.empty()) format_error(source, line_no, "property before any element");
      if (tokens.size() == 5 && tokens[1] == "list") {
        elements.back().properties.push_back({std::string(tokens[4]), std::string(tokens[3]), true});
      } else if (tokens.size() == 3) {
        if (ply_type_size(std::string(tokens[1])) == 0)
          format_error(source, line_no, "unknown property type '" + std::string(tokens[1]) + "'");
        elements.back().properties.push_back({std::string(tokens[2]), std::string(tokens[1]), false});
      } else {
        format_error(source, line_no, "malformed property line");
      }
    } else {
      format_error(source, line_no, "unexpected header keyword '" + std::string(kw) + "'");
    }
  }
  if (!header_done) format_error(source, line_no, "header has no end_header");
  if (!format) format_error(source, line_no, "header has no format line");

  const auto vertex_it = std::find_if(elements.begin(), elements.end(),
                                      [](const PlyElement& e) { return e.name == "vertex"; });
  if (vertex_it == elements.end()) format_error(source, line_no, "no vertex element");
  std::array<std::optional<std::size_t>, 3> axis;
  for (std::size_t k = 0; k < vertex_it->properties.size(); ++k) {
    const auto& p = vertex_it->properties[k];
    for (int a = 0; a < 3; ++a) {
      if (p.name == std::string(1, static_cast<char>('x' + a))) {
        if (p.is_list) format_error(source, line_no, "coordinate declared as a list");
        axis[static_cast<std::size_t>(a)] = k;
      }
    }
  }
  if (!axis[0] || !axis[1] || !axis[2])
    format_error(source, line_no, "vertex element lacks x/y/z properties");

  std::vector<Vec3> points;
  points.reserve(vertex_it->count);

  if (*format == PlyFormat::Ascii) {
    for (auto el = elements.begin(); el != elements.end(); ++el) {
      for (std::size_t r = 0; r < el->count; ++r) {
        if (!next_line()) format_error(source, line_no + 1, "unexpected end of file in " + el->name);
        if (el != vertex_it) continue;
        const auto tokens = split_ws(line);
        if (tokens.size() < vertex_it->properties.size())
          format_error(source, line_no, "vertex row has " + std::to_string(tokens.size()) +
                                            " values, expected " +
                                            std::to_string(vertex_it->properties.size()));
        Vec3 v = parse_point(tokens, *axis[0], *axis[1], *axis[2], source, line_no);
        // float properties hold single-precision values, whatever the text says
        double* dst[3] = {&v.x, &v.y, &v.z};
        for (std::size_t a = 0; a < 3; ++a) {
          const auto& type = vertex_it->properties[*axis[a]].type;
          if (type == "float" || type == "float32") *dst[a] = static_cast<float>(*dst[a]);
        }
        points.push_back(v);
      }
      if (el == vertex_it) break;
    }
  } else {
    std::size_t offset = static_cast<std::size_t>(in.tellg());
    for (auto el = elements.begin(); el != elements.end(); ++el) {
      std::size_t stride = 0;
      std::vector<std::size_t> field_offset;
      for (const auto& p : el->properties) {
        if (p.is_list)
          fail(ErrorKind::FormatError, source + ": binary list property '" + p.name +
                                           "' before vertex data is not supported");
        field_offset.push_back(stride);
        stride += ply_type_size(p.type);
      }
      std::vector<unsigned char> buf(stride);
      for (std::size_t r = 0; r < el->count; ++r) {
        if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(stride)))
          fail(ErrorKind::FormatError, source + ": truncated binary body at byte " +
                                           std::to_string(offset));
        offset += stride;
        if (el != vertex_it) continue;
        Vec3 v;
        double* dst[3] = {&v.x, &v.y, &v.z};
        for (std::size_t a = 0; a < 3; ++a) {
          const auto& p = el->properties[*axis[a]];
          *dst[a] = decode_scalar(p.type, buf.data() + field_offset[*axis[a]]);
        }
        if (!is_finite(v))
          fail(ErrorKind::FormatError, source + ": non-finite vertex " + std::to_string(r));
        points.push_back(v);
      }
      if (el == vertex_it) break;
    }
  }
  if (points.empty()) fail(ErrorKind::TooFewPoints, source + ": no vertices");
  return PointCloud(std::move(points));
}

PointCloud read_object(const std::filesystem::path& path, std::size_t min_points) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open object file " + path.string());
  char magic[4] = {};
  in.read(magic, 3);
  in.clear();
  in.seekg(0);
  const bool is_ply = std::string_view(magic, 3) == "ply";
  PointCloud cloud = is_ply ? read_ply(in, path.string()) : read_xyz(in, path.string());
  if (cloud.size() < min_points)
    fail(ErrorKind::TooFewPoints, path.string() + ": " + std::to_string(cloud.size()) +
                                      " points, need at least " + std::to_string(min_points));
  return cloud;
}

void write_xyz(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out.precision(std::numeric_limits<double>::max_digits10);
  for (const Vec3& p : cloud) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

ObjectCatalog load_catalog(const std::filesystem::path& root, std::size_t min_points) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) fail(ErrorKind::Io, "catalog directory not found: " + root.string());
  ObjectCatalog catalog;
  catalog.root = root;

  const fs::path manifest = root / "manifest.txt";
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto tokens = split_ws(line);
      if (tokens.empty() || tokens.front().front() == '#') continue;
      if (tokens.size() < 2 || tokens.size() > 3)
        format_error(manifest.string(), line_no, "expected '<path> <id> [category]'");
      catalog.entries.push_back({root / fs::path(std::string(tokens[0])), std::string(tokens[1]),
                                 tokens.size() == 3 ? std::string(tokens[2]) : std::string()});
    }
  } else {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root)) {
      const auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".xyz" || ext == ".ply")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) catalog.entries.push_back({f, f.stem().string(), {}});
  }
  if (catalog.entries.empty()) fail(ErrorKind::InvalidInput, "catalog " + root.string() + " is empty");
  catalog.objects.reserve(catalog.entries.size());
  for (const auto& e : catalog.entries) catalog.objects.push_back(read_object(e.path, min_points));
  return catalog;
}

void write_manifest(const std::filesystem::path& root, const std::vector<CatalogEntry>& entries) {
  std::ofstream out(root / "manifest.txt", std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write manifest in " + root.string());
  out << "# path id category\n";
  for (const auto& e : entries) {
    out << std::filesystem::relative(e.path, root).generic_string() << ' ' << e.id;
    if (!e.category.empty()) out << ' ' << e.category;
    out << '\n';
  }
}

}  // namespace roomgen
