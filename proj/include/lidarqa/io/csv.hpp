#pragma once

#include <filesystem>

#include "lidarqa/model.hpp"

namespace lidarqa::io {

/// Comma-separated, UTF-8, header-driven. Mandatory columns x,y,z,pass_id;
/// optional intensity,gps_time. Malformed records are rejected, not skipped.
PointCloud read_csv(const std::filesystem::path& path);

void write_csv(const PointCloud& cloud, const std::filesystem::path& path);

}  // namespace lidarqa::io
