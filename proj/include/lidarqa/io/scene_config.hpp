#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lidarqa/model.hpp"
#include "lidarqa/simulator.hpp"

namespace lidarqa::io {

struct NamedWall {
  std::string name;
  WallTarget wall;
};

/// Scene and flight configuration, read from a JSON file (see README for
/// the schema). Walls double as simulation occluders and prediction targets.
struct SceneConfig {
  double ground_z = 0.0;
  std::optional<GroundExtent> ground_extent;
  std::vector<NamedWall> walls;
  std::vector<PlanarSurface> surfaces;
  std::vector<ScannerSpec> scanners;
  std::vector<FlightLine> flight_lines;
  NoiseSpec noise;

  Scene scene() const;
  const NamedWall& wall_by_name(const std::string& name) const;
};

SceneConfig load_scene_config(const std::filesystem::path& path);

/// Surfaces-only loader for the metrics pipeline: accepts either a full
/// scene config or a file holding just a "surfaces" list.
std::vector<PlanarSurface> load_surfaces(const std::filesystem::path& path);

}  // namespace lidarqa::io
