#pragma once

namespace lidarqa {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lidarqa
