#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace lidarqa::io {

// Write content to a temp file next to the target, then rename into place.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string read_file(const std::filesystem::path& path);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace lidarqa::io
