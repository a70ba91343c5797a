#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lidarqa {

/// One LiDAR return. Coordinates are meters in a projected frame, z up.
/// Every point carries the flight pass that produced it; points without a
/// pass label are rejected at ingestion.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  int pass_id = 0;
  std::optional<double> intensity;
  std::optional<double> gps_time;

  Eigen::Vector3d position() const { return {x, y, z}; }
};

struct Bounds3 {
  Eigen::Vector3d min;
  Eigen::Vector3d max;
  bool valid = false;

  void expand(const Eigen::Vector3d& p);
  bool contains(const Eigen::Vector3d& p) const;
};

/// Immutable columnar point set. Pass labels and bounds are derived from the
/// points at construction and never drift from them.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::vector<Point> points);

  const std::vector<Point>& points() const { return points_; }
  const std::set<int>& pass_ids() const { return pass_ids_; }
  const Bounds3& bounds() const { return bounds_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

 private:
  std::vector<Point> points_;
  std::set<int> pass_ids_;
  Bounds3 bounds_;
};

enum class Orientation { horizontal, vertical, canted };

std::string to_string(Orientation o);

/// Classify a unit normal against the 10-degree bands:
/// horizontal iff |n_z| > cos(10 deg), vertical iff |n_z| < sin(10 deg),
/// canted otherwise. Invariant under negation of the normal.
Orientation classify_orientation(const Eigen::Vector3d& normal);

/// Oriented rectangle in 3-D: origin plus an orthonormal in-plane basis
/// (u_axis, v_axis) with normal = u x v, and positive extents in meters.
struct PlanarSurface {
  Eigen::Vector3d origin;
  Eigen::Vector3d u_axis;
  Eigen::Vector3d v_axis;
  Eigen::Vector3d normal;
  double extent_u = 0.0;
  double extent_v = 0.0;
  std::string label;
  Orientation orientation_class = Orientation::canted;
};

/// Validating constructor; derives normal = u x v and the orientation class.
PlanarSurface make_planar_surface(const Eigen::Vector3d& origin,
                                  const Eigen::Vector3d& u_axis,
                                  const Eigen::Vector3d& v_axis,
                                  double extent_u, double extent_v,
                                  std::string label);

/// Square sample window on a surface. Member points are stored as indices
/// into the parent cloud, grouped by flight pass.
struct Patch {
  std::string surface_label;
  Eigen::Vector2d center_uv;
  double side = 0.0;
  double area = 0.0;  // side^2
  std::map<int, std::vector<std::size_t>> points_by_pass;

  std::size_t total_points() const;
  bool contains_uv(double u, double v) const;
};

/// Nadir scanner parameters. f_scanner is informational when theta_L and
/// line_rate are given; no consistency between them is enforced.
struct ScannerSpec {
  double pulse_rate = 0.0;        // pulses per second
  double half_angle_deg = 0.0;    // operating range is +/- half_angle from nadir
  double angular_step_deg = 0.0;  // angle between consecutive pulses in a line
  double line_rate = 0.0;         // scan lines per second

  int pulses_per_line() const;
  void validate() const;
};

struct FlightLine {
  Eigen::Vector2d start_xy;
  Eigen::Vector2d end_xy;
  double altitude_agl = 0.0;  // meters above ground
  double speed = 0.0;         // m/s
  int pass_id = 0;

  void validate() const;
  double along_spacing(double line_rate) const { return speed / line_rate; }
};

/// Vertical wall face: base segment on the ground, a height interval above
/// ground, and the outward unit normal of the face in the xy plane.
struct WallTarget {
  Eigen::Vector2d base_start;
  Eigen::Vector2d base_end;
  double h_min = 0.0;
  double h_max = 0.0;
  Eigen::Vector2d facing;

  void validate() const;
  double base_length() const { return (base_end - base_start).norm(); }
};

}  // namespace lidarqa
