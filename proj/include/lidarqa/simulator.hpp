#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lidarqa/model.hpp"

namespace lidarqa {

/// Injectable error model: isotropic per-point Gaussian noise realizes the
/// within-pass component, rigid per-pass translations the cross-pass one.
struct NoiseSpec {
  double per_point_sigma = 0.0;  // meters
  std::map<int, Eigen::Vector3d> per_pass_offsets;
  std::uint64_t seed = 0;
};

struct GroundExtent {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
};

/// Ground plane plus opaque wall rectangles rising from it. Without a ground
/// extent the ground plane is unbounded and every ray lands.
struct Scene {
  double ground_z = 0.0;
  std::vector<WallTarget> walls;
  std::optional<GroundExtent> ground_extent;
};

/// Pulse bookkeeping for one simulation. surface_of_point is -1 for ground
/// hits, otherwise the wall index; emitted = landed + no-hit exactly.
struct EmissionLog {
  std::uint64_t pulses_emitted = 0;
  std::uint64_t no_hit = 0;
  std::uint64_t ground_hits = 0;
  std::vector<std::uint64_t> wall_hits;      // per wall index
  std::vector<std::int32_t> surface_of_point;
  std::map<int, double> swath_width_by_pass;  // 2 H tan(theta_max)
};

struct SimulationResult {
  PointCloud cloud;
  EmissionLog log;
};

/// Parallel-line raster scan: sensor positions spaced v / line_rate along
/// each flight line at H AGL; each scan line emits pulses at angles
/// -theta_max .. +theta_max in steps of theta_L in the plane perpendicular
/// to travel. The first intersection with a wall face or the ground yields
/// one single-return point (walls shadow the ground behind them). Per-pass
/// offsets and per-point Gaussian noise are applied afterwards.
/// Deterministic for a fixed seed; per-line RNG streams are derived from
/// (seed, pass_id, line index).
SimulationResult simulate(const Scene& scene, const ScannerSpec& scanner,
                          const std::vector<FlightLine>& flights,
                          const NoiseSpec& noise);

/// Rectangular query region for exact pulse bookkeeping: either a rectangle
/// on the ground plane or a band on one wall face (distance along the base
/// and height above ground).
struct Region {
  enum class Kind { ground, wall };
  Kind kind = Kind::ground;
  // ground
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  // wall
  int wall_index = 0;
  double along_min = 0.0, along_max = 0.0;
  double h_min = 0.0, h_max = 0.0;

  static Region ground(double min_x, double min_y, double max_x, double max_y);
  static Region wall(int wall_index, double along_min, double along_max,
                     double h_min, double h_max);
};

/// Analytic count of pulses whose ideal (noise-free) hit falls in the
/// region, by enumerating sensor positions and emission angles. Exact; no
/// Monte Carlo.
std::uint64_t expected_counts(const Scene& scene, const ScannerSpec& scanner,
                              const FlightLine& flight, const Region& region);

}  // namespace lidarqa
