#include "lidarqa/simulator.hpp"

#include <cmath>
#include <random>

#include "lidarqa/errors.hpp"

namespace lidarqa {

namespace {

constexpr double kDeg2Rad = M_PI / 180.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 line_rng(std::uint64_t seed, int pass_id,
                         std::uint64_t line_index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(pass_id));
  h = splitmix64(h ^ line_index);
  return std::mt19937_64(h);
}

struct Hit {
  bool landed = false;
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  std::int32_t surface = -1;  // -1 ground, else wall index
  double wall_along = 0.0;    // distance along the wall base
  double wall_height = 0.0;   // height above ground on the wall face
};

// First intersection of a downward ray with the walls or the ground plane.
Hit trace(const Scene& scene, const Eigen::Vector3d& origin,
          const Eigen::Vector3d& dir) {
  Hit hit;
  if (!(dir.z() < 0.0)) return hit;  // ray never reaches the ground

  double best_t = (origin.z() - scene.ground_z) / -dir.z();
  std::int32_t best_surface = -1;
  double best_along = 0.0;

  for (std::size_t w = 0; w < scene.walls.size(); ++w) {
    const WallTarget& wall = scene.walls[w];
    const Eigen::Vector2d dxy(dir.x(), dir.y());
    const double denom = wall.facing.dot(dxy);
    if (std::abs(denom) < 1e-15) continue;  // ray parallel to the face
    const Eigen::Vector2d oxy(origin.x(), origin.y());
    const double t = wall.facing.dot(wall.base_start - oxy) / denom;
    if (t <= 1e-9 || t >= best_t) continue;
    const Eigen::Vector3d q = origin + t * dir;
    const double z_rel = q.z() - scene.ground_z;
    if (z_rel < wall.h_min || z_rel > wall.h_max) continue;
    const Eigen::Vector2d base_dir =
        (wall.base_end - wall.base_start).normalized();
    const double along = (Eigen::Vector2d(q.x(), q.y()) - wall.base_start)
                             .dot(base_dir);
    if (along < 0.0 || along > wall.base_length()) continue;
    best_t = t;
    best_surface = static_cast<std::int32_t>(w);
    best_along = along;
  }

  const Eigen::Vector3d q = origin + best_t * dir;
  if (best_surface == -1 && scene.ground_extent) {
    const auto& e = *scene.ground_extent;
    if (q.x() < e.min_x || q.x() > e.max_x || q.y() < e.min_y ||
        q.y() > e.max_y) {
      return hit;  // off the mapped ground: no return
    }
  }
  hit.landed = true;
  hit.point = q;
  hit.surface = best_surface;
  if (best_surface >= 0) {
    hit.wall_along = best_along;
    hit.wall_height = q.z() - scene.ground_z;
  }
  return hit;
}

}  // namespace

Region Region::ground(double min_x, double min_y, double max_x, double max_y) {
  Region r;
  r.kind = Kind::ground;
  r.min_x = min_x;
  r.min_y = min_y;
  r.max_x = max_x;
  r.max_y = max_y;
  return r;
}

Region Region::wall(int wall_index, double along_min, double along_max,
                    double h_min, double h_max) {
  Region r;
  r.kind = Kind::wall;
  r.wall_index = wall_index;
  r.along_min = along_min;
  r.along_max = along_max;
  r.h_min = h_min;
  r.h_max = h_max;
  return r;
}

SimulationResult simulate(const Scene& scene, const ScannerSpec& scanner,
                          const std::vector<FlightLine>& flights,
                          const NoiseSpec& noise) {
  scanner.validate();
  for (const auto& w : scene.walls) w.validate();
  if (noise.per_point_sigma < 0.0) {
    throw InvalidInput("simulate: per_point_sigma must be >= 0");
  }

  const int ppl = scanner.pulses_per_line();
  std::vector<double> sin_theta(ppl), cos_theta(ppl);
  for (int j = 0; j < ppl; ++j) {
    const double theta =
        (-scanner.half_angle_deg + j * scanner.angular_step_deg) * kDeg2Rad;
    sin_theta[j] = std::sin(theta);
    cos_theta[j] = std::cos(theta);
  }

  SimulationResult result;
  EmissionLog& log = result.log;
  log.wall_hits.assign(scene.walls.size(), 0);
  std::vector<Point> points;

  for (const auto& flight : flights) {
    flight.validate();
    const Eigen::Vector2d dir2 = (flight.end_xy - flight.start_xy).normalized();
    const Eigen::Vector2d side2(-dir2.y(), dir2.x());
    const double r_along = flight.along_spacing(scanner.line_rate);
    const double length = (flight.end_xy - flight.start_xy).norm();
    const auto n_lines =
        static_cast<std::uint64_t>(std::floor(length / r_along)) + 1;
    const double sensor_z = scene.ground_z + flight.altitude_agl;
    log.swath_width_by_pass[flight.pass_id] =
        2.0 * flight.altitude_agl * std::tan(scanner.half_angle_deg * kDeg2Rad);

    const Eigen::Vector3d offset =
        noise.per_pass_offsets.count(flight.pass_id)
            ? noise.per_pass_offsets.at(flight.pass_id)
            : Eigen::Vector3d::Zero();

    for (std::uint64_t li = 0; li < n_lines; ++li) {
      const Eigen::Vector2d pos2 =
          flight.start_xy + dir2 * (static_cast<double>(li) * r_along);
      const Eigen::Vector3d origin(pos2.x(), pos2.y(), sensor_z);
      auto rng = line_rng(noise.seed, flight.pass_id, li);
      std::normal_distribution<double> gauss(0.0, 1.0);
      const double gps_time = static_cast<double>(li) / scanner.line_rate;

      for (int j = 0; j < ppl; ++j) {
        ++log.pulses_emitted;
        const Eigen::Vector3d dir(side2.x() * sin_theta[j],
                                  side2.y() * sin_theta[j], -cos_theta[j]);
        const Hit hit = trace(scene, origin, dir);
        if (!hit.landed) {
          ++log.no_hit;
          continue;
        }
        Eigen::Vector3d p = hit.point + offset;
        if (noise.per_point_sigma > 0.0) {
          p.x() += gauss(rng) * noise.per_point_sigma;
          p.y() += gauss(rng) * noise.per_point_sigma;
          p.z() += gauss(rng) * noise.per_point_sigma;
        }
        Point point;
        point.x = p.x();
        point.y = p.y();
        point.z = p.z();
        point.pass_id = flight.pass_id;
        point.gps_time = gps_time;
        points.push_back(point);
        log.surface_of_point.push_back(hit.surface);
        if (hit.surface >= 0) {
          ++log.wall_hits[static_cast<std::size_t>(hit.surface)];
        } else {
          ++log.ground_hits;
        }
      }
    }
  }

  result.cloud = PointCloud(std::move(points));
  return result;
}

std::uint64_t expected_counts(const Scene& scene, const ScannerSpec& scanner,
                              const FlightLine& flight, const Region& region) {
  scanner.validate();
  flight.validate();
  const int ppl = scanner.pulses_per_line();
  const Eigen::Vector2d dir2 = (flight.end_xy - flight.start_xy).normalized();
  const Eigen::Vector2d side2(-dir2.y(), dir2.x());
  const double r_along = flight.along_spacing(scanner.line_rate);
  const double length = (flight.end_xy - flight.start_xy).norm();
  const auto n_lines =
      static_cast<std::uint64_t>(std::floor(length / r_along)) + 1;
  const double sensor_z = scene.ground_z + flight.altitude_agl;

  std::uint64_t count = 0;
  for (std::uint64_t li = 0; li < n_lines; ++li) {
    const Eigen::Vector2d pos2 =
        flight.start_xy + dir2 * (static_cast<double>(li) * r_along);
    const Eigen::Vector3d origin(pos2.x(), pos2.y(), sensor_z);
    for (int j = 0; j < ppl; ++j) {
      const double theta =
          (-scanner.half_angle_deg + j * scanner.angular_step_deg) * kDeg2Rad;
      const Eigen::Vector3d dir(side2.x() * std::sin(theta),
                                side2.y() * std::sin(theta), -std::cos(theta));
      const Hit hit = trace(scene, origin, dir);
      if (!hit.landed) continue;
      if (region.kind == Region::Kind::ground) {
        if (hit.surface != -1) continue;
        if (hit.point.x() >= region.min_x && hit.point.x() <= region.max_x &&
            hit.point.y() >= region.min_y && hit.point.y() <= region.max_y) {
          ++count;
        }
      } else {
        if (hit.surface != region.wall_index) continue;
        if (hit.wall_along >= region.along_min &&
            hit.wall_along <= region.along_max &&
            hit.wall_height >= region.h_min &&
            hit.wall_height <= region.h_max) {
          ++count;
        }
      }
    }
  }
  return count;
}

}  // namespace lidarqa
