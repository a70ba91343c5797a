#include "lidarqa/io/scene_config.hpp"

#include <set>

#include <json.hpp>

#include "lidarqa/io/util.hpp"
#include "lidarqa/errors.hpp"
#include "lidarqa/geometry.hpp"

namespace lidarqa::io {

namespace {

using nlohmann::json;

Eigen::Vector2d vec2(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) {
    throw SchemaError("scene config: " + what + " must be a 2-element array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::Vector3d vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw SchemaError("scene config: " + what + " must be a 3-element array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

WallTarget parse_wall(const json& j) {
  WallTarget w;
  w.base_start = vec2(j.at("base").at(0), "wall base start");
  w.base_end = vec2(j.at("base").at(1), "wall base end");
  w.h_min = j.at("height_range").at(0).get<double>();
  w.h_max = j.at("height_range").at(1).get<double>();
  if (j.contains("facing")) {
    w.facing = vec2(j.at("facing"), "wall facing").normalized();
  } else {
    // Default: left-hand normal of the base segment.
    const Eigen::Vector2d d = (w.base_end - w.base_start).normalized();
    w.facing = {-d.y(), d.x()};
  }
  w.validate();
  return w;
}

PlanarSurface parse_surface(const json& j) {
  const auto& corners = j.at("corners");
  if (!corners.is_array() || corners.size() != 3) {
    throw SchemaError("scene config: surface needs exactly 3 corners");
  }
  std::optional<double> eu;
  std::optional<double> ev;
  if (j.contains("extent_u")) eu = j.at("extent_u").get<double>();
  if (j.contains("extent_v")) ev = j.at("extent_v").get<double>();
  return surface_from_corners(
      vec3(corners[0], "corner"), vec3(corners[1], "corner"),
      vec3(corners[2], "corner"), eu, ev, j.value("label", std::string{}));
}

ScannerSpec parse_scanner(const json& j) {
  ScannerSpec s;
  s.pulse_rate = j.at("pulse_rate").get<double>();
  s.half_angle_deg = j.at("half_angle_deg").get<double>();
  s.angular_step_deg = j.at("angular_step_deg").get<double>();
  s.line_rate = j.at("line_rate").get<double>();
  s.validate();
  return s;
}

FlightLine parse_flight(const json& j) {
  FlightLine f;
  f.start_xy = vec2(j.at("start"), "flight start");
  f.end_xy = vec2(j.at("end"), "flight end");
  f.altitude_agl = j.at("altitude_agl").get<double>();
  f.speed = j.at("speed").get<double>();
  f.pass_id = j.at("pass_id").get<int>();
  f.validate();
  return f;
}

json parse_json_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("scene config: " + path.string() + ": " + e.what());
  }
}

}  // namespace

Scene SceneConfig::scene() const {
  Scene s;
  s.ground_z = ground_z;
  s.ground_extent = ground_extent;
  for (const auto& w : walls) s.walls.push_back(w.wall);
  return s;
}

const NamedWall& SceneConfig::wall_by_name(const std::string& name) const {
  for (const auto& w : walls) {
    if (w.name == name) return w;
  }
  std::string available;
  for (const auto& w : walls) {
    if (!available.empty()) available += ", ";
    available += w.name;
  }
  throw LookupError("unknown wall '" + name + "'; available: [" + available +
                    "]");
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  SceneConfig cfg;
  try {
    cfg.ground_z = j.value("ground_z", 0.0);
    if (j.contains("ground_extent")) {
      const auto& e = j.at("ground_extent");
      cfg.ground_extent = GroundExtent{
          e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>(),
          e.at(3).get<double>()};
    }
    for (const auto& w : j.value("walls", json::array())) {
      cfg.walls.push_back({w.value("name", std::string{}), parse_wall(w)});
    }
    for (const auto& s : j.value("surfaces", json::array())) {
      cfg.surfaces.push_back(parse_surface(s));
    }
    for (const auto& s : j.value("scanners", json::array())) {
      cfg.scanners.push_back(parse_scanner(s));
    }
    std::set<int> pass_ids;
    for (const auto& f : j.value("flight_lines", json::array())) {
      const FlightLine fl = parse_flight(f);
      if (!pass_ids.insert(fl.pass_id).second) {
        throw SchemaError("scene config: duplicate pass_id " +
                          std::to_string(fl.pass_id) + " across flight lines");
      }
      cfg.flight_lines.push_back(fl);
    }
    if (j.contains("noise")) {
      const auto& n = j.at("noise");
      cfg.noise.per_point_sigma = n.value("per_point_sigma", 0.0);
      cfg.noise.seed = n.value("seed", std::uint64_t{0});
      if (n.contains("per_pass_offsets")) {
        for (const auto& [key, val] : n.at("per_pass_offsets").items()) {
          cfg.noise.per_pass_offsets[std::stoi(key)] =
              vec3(val, "per_pass_offset");
        }
      }
    }
  } catch (const json::exception& e) {
    throw SchemaError("scene config: " + path.string() + ": " + e.what());
  }
  return cfg;
}

std::vector<PlanarSurface> load_surfaces(const std::filesystem::path& path) {
  const json j = parse_json_file(path);
  std::vector<PlanarSurface> out;
  try {
    for (const auto& s : j.value("surfaces", json::array())) {
      out.push_back(parse_surface(s));
    }
  } catch (const json::exception& e) {
    throw SchemaError("surfaces file: " + path.string() + ": " + e.what());
  }
  return out;
}

}  // namespace lidarqa::io
