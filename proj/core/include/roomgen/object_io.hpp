#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "roomgen/geometry.hpp"

namespace roomgen {

// ASCII "x y z" per line; blank lines and '#' comments skipped, extra
// columns (normals, colors) ignored.
PointCloud read_xyz(std::istream& in, const std::string& source);

// PLY vertex positions. ASCII and binary_little_endian bodies are accepted;
// properties other than x/y/z are skipped.
PointCloud read_ply(std::istream& in, const std::string& source);

// Dispatches on the file content ("ply" magic) and enforces min_points.
PointCloud read_object(const std::filesystem::path& path, std::size_t min_points = 1);

void write_xyz(const std::filesystem::path& path, const PointCloud& cloud);

struct CatalogEntry {
  std::filesystem::path path;
  std::string id;
  std::string category;
};

// Object models available to the generator. Listed by <root>/manifest.txt
// ("<relative path> <id> [category]" per line) or, without a manifest, by
// every *.xyz / *.ply file in the directory sorted by name.
struct ObjectCatalog {
  std::filesystem::path root;
  std::vector<CatalogEntry> entries;
  std::vector<PointCloud> objects;  // parallel to entries
};

ObjectCatalog load_catalog(const std::filesystem::path& root, std::size_t min_points);

void write_manifest(const std::filesystem::path& root, const std::vector<CatalogEntry>& entries);

}  // namespace roomgen
