#pragma once

#include <filesystem>

#include "lidarqa/model.hpp"

namespace lidarqa::io {

/// Minimal little-endian LAS reader: versions 1.2 / 1.4, point record
/// formats 0, 1, 6, 7, no compression. Coordinates decode as
/// stored_int32 * scale + offset from the public header; the pass label is
/// the Point Source ID.
PointCloud read_las(const std::filesystem::path& path);

/// Writes LAS 1.2 for formats 0/1 and LAS 1.4 for formats 6/7, scale 0.001.
/// Round trip through read_las preserves coordinates within one scale
/// quantum and pass labels exactly.
void write_las(const PointCloud& cloud, const std::filesystem::path& path,
               int point_format = 1);

}  // namespace lidarqa::io
