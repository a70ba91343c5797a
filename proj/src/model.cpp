#include "lidarqa/model.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <limits>

#include "lidarqa/errors.hpp"

namespace lidarqa {

namespace {
constexpr double kDeg2Rad = M_PI / 180.0;
}

void Bounds3::expand(const Eigen::Vector3d& p) {
  if (!valid) {
    min = p;
    max = p;
    valid = true;
    return;
  }
  min = min.cwiseMin(p);
  max = max.cwiseMax(p);
}

bool Bounds3::contains(const Eigen::Vector3d& p) const {
  if (!valid) return false;
  return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
}

PointCloud::PointCloud(std::vector<Point> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw InvalidInput("non-finite coordinate at point index " +
                         std::to_string(i));
    }
    if (p.pass_id < 0) {
      throw InvalidInput("negative pass_id at point index " +
                         std::to_string(i));
    }
    pass_ids_.insert(p.pass_id);
    bounds_.expand(p.position());
  }
}

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::horizontal:
      return "horizontal";
    case Orientation::vertical:
      return "vertical";
    default:
      return "canted";
  }
}

Orientation classify_orientation(const Eigen::Vector3d& normal) {
  if (!normal.allFinite()) {
    throw InvalidInput("classify_orientation: non-finite normal");
  }
  if (std::abs(normal.norm() - 1.0) > 1e-6) {
    throw InvalidInput("classify_orientation: normal is not unit length");
  }
  const double nz = std::abs(normal.z());
  if (nz > std::cos(10.0 * kDeg2Rad)) return Orientation::horizontal;
  if (nz < std::sin(10.0 * kDeg2Rad)) return Orientation::vertical;
  return Orientation::canted;
}

PlanarSurface make_planar_surface(const Eigen::Vector3d& origin,
                                  const Eigen::Vector3d& u_axis,
                                  const Eigen::Vector3d& v_axis,
                                  double extent_u, double extent_v,
                                  std::string label) {
  if (!origin.allFinite() || !u_axis.allFinite() || !v_axis.allFinite()) {
    throw InvalidInput("surface '" + label + "': non-finite geometry");
  }
  if (std::abs(u_axis.norm() - 1.0) > 1e-9 ||
      std::abs(v_axis.norm() - 1.0) > 1e-9) {
    throw InvalidInput("surface '" + label + "': axes must be unit length");
  }
  if (std::abs(u_axis.dot(v_axis)) > 1e-9) {
    throw InvalidInput("surface '" + label + "': axes must be orthogonal");
  }
  if (!(extent_u > 0.0) || !(extent_v > 0.0)) {
    throw InvalidInput("surface '" + label + "': extents must be positive");
  }
  PlanarSurface s;
  s.origin = origin;
  s.u_axis = u_axis;
  s.v_axis = v_axis;
  s.normal = u_axis.cross(v_axis).normalized();
  s.extent_u = extent_u;
  s.extent_v = extent_v;
  s.label = std::move(label);
  s.orientation_class = classify_orientation(s.normal);
  return s;
}

std::size_t Patch::total_points() const {
  std::size_t n = 0;
  for (const auto& [pass, idx] : points_by_pass) n += idx.size();
  return n;
}

bool Patch::contains_uv(double u, double v) const {
  const double half = side / 2.0;
  return u >= center_uv.x() - half && u <= center_uv.x() + half &&
         v >= center_uv.y() - half && v <= center_uv.y() + half;
}

int ScannerSpec::pulses_per_line() const {
  return static_cast<int>(std::floor(2.0 * half_angle_deg / angular_step_deg)) +
         1;
}

void ScannerSpec::validate() const {
  if (!(angular_step_deg > 0.0) || !(angular_step_deg < half_angle_deg)) {
    throw InvalidInput("scanner: need 0 < angular_step < half_angle");
  }
  if (!(half_angle_deg <= 60.0)) {
    throw InvalidInput("scanner: half_angle must be <= 60 degrees");
  }
  if (!(pulse_rate > 0.0)) {
    throw InvalidInput("scanner: pulse_rate must be positive");
  }
  if (!(line_rate > 0.0)) {
    throw InvalidInput("scanner: line_rate must be positive");
  }
}

void FlightLine::validate() const {
  if (!(altitude_agl > 0.0)) {
    throw InvalidInput("flight line: altitude must be positive");
  }
  if (!(speed > 0.0)) {
    throw InvalidInput("flight line: speed must be positive");
  }
  if ((end_xy - start_xy).norm() == 0.0) {
    throw InvalidInput("flight line: start and end coincide");
  }
}

void WallTarget::validate() const {
  if (!(h_min >= 0.0) || !(h_min < h_max)) {
    throw InvalidInput("wall: need 0 <= h_min < h_max");
  }
  if (std::abs(facing.norm() - 1.0) > 1e-9) {
    throw InvalidInput("wall: facing must be a unit vector");
  }
  if (base_length() == 0.0) {
    throw InvalidInput("wall: degenerate base segment");
  }
}

}  // namespace lidarqa
