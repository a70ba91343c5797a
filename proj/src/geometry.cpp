#include "lidarqa/geometry.hpp"

#include <Eigen/Geometry>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "lidarqa/errors.hpp"

namespace lidarqa {

namespace {

// Canonical sign: n_z >= 0, tie broken by n_x >= 0, then n_y >= 0.
Eigen::Vector3d canonical_sign(Eigen::Vector3d n) {
  constexpr double eps = 1e-12;
  if (n.z() < -eps) return -n;
  if (n.z() > eps) return n;
  if (n.x() < -eps) return -n;
  if (n.x() > eps) return n;
  if (n.y() < 0.0) return -n;
  return n;
}

}  // namespace

Plane fit_plane(std::span<const Eigen::Vector3d> points) {
  if (points.size() < 3) {
    throw InsufficientData("fit_plane: need at least 3 points, got " +
                           std::to_string(points.size()));
  }
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());

  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const auto& p : points) {
    const Eigen::Vector3d q = p - centroid;
    scatter += q * q.transpose();
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(scatter);
  const Eigen::Vector3d evals = solver.eigenvalues();  // ascending
  if (evals(1) < 1e-12 * evals(2) || !(evals(2) > 0.0)) {
    throw DegenerateGeometry("fit_plane: points are collinear or coincident");
  }

  Plane plane;
  plane.normal = canonical_sign(solver.eigenvectors().col(0).normalized());
  plane.centroid = centroid;
  plane.d = plane.normal.dot(centroid);
  return plane;
}

double signed_distance(const Plane& plane, const Eigen::Vector3d& p) {
  if (!p.allFinite()) {
    throw InvalidInput("signed_distance: non-finite point");
  }
  return plane.normal.dot(p) - plane.d;
}

PlanarSurface surface_from_corners(const Eigen::Vector3d& c1,
                                   const Eigen::Vector3d& c2,
                                   const Eigen::Vector3d& c3,
                                   std::optional<double> extent_u,
                                   std::optional<double> extent_v,
                                   std::string label) {
  const Eigen::Vector3d du = c2 - c1;
  const Eigen::Vector3d dv = c3 - c1;
  if (du.cross(dv).norm() < 1e-12 * du.norm() * dv.norm() ||
      du.norm() == 0.0 || dv.norm() == 0.0) {
    throw DegenerateGeometry("surface_from_corners: corners are collinear");
  }
  const Eigen::Vector3d u_axis = du.normalized();
  // In-plane direction toward c3, so the projected extent is positive.
  const Eigen::Vector3d v_axis = (dv - dv.dot(u_axis) * u_axis).normalized();
  const double eu = extent_u.value_or(du.norm());
  const double ev = extent_v.value_or(dv.dot(v_axis));
  return make_planar_surface(c1, u_axis, v_axis, eu, ev, std::move(label));
}

Eigen::Vector3d project_to_surface(const PlanarSurface& surface,
                                   const Eigen::Vector3d& p) {
  const Eigen::Vector3d q = p - surface.origin;
  return {q.dot(surface.u_axis), q.dot(surface.v_axis), q.dot(surface.normal)};
}

}  // namespace lidarqa
