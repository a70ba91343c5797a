#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>

#include "lidarqa/model.hpp"

namespace lidarqa {

/// Plane {p : normal . p = d} with the centroid of the fitting points kept
/// for diagnostics. Normal sign is canonical: n_z >= 0, ties broken by
/// n_x >= 0, then n_y >= 0.
struct Plane {
  Eigen::Vector3d normal;
  double d = 0.0;
  Eigen::Vector3d centroid;
};

/// Orthogonal least-squares fit: the normal minimizes the sum of squared
/// perpendicular distances (smallest eigenvector of the scatter matrix).
/// Throws InsufficientData for < 3 points, DegenerateGeometry when the
/// points are collinear or coincident.
Plane fit_plane(std::span<const Eigen::Vector3d> points);

/// normal . p - d; sign follows the stored normal orientation.
double signed_distance(const Plane& plane, const Eigen::Vector3d& p);

/// Build a rectangular surface from three corner picks: origin = c1,
/// u_axis along c2 - c1, v_axis the in-plane direction toward c3. Extents
/// default to |c2 - c1| and the projection of c3 - c1 onto v_axis.
PlanarSurface surface_from_corners(const Eigen::Vector3d& c1,
                                   const Eigen::Vector3d& c2,
                                   const Eigen::Vector3d& c3,
                                   std::optional<double> extent_u = {},
                                   std::optional<double> extent_v = {},
                                   std::string label = {});

/// Surface-frame coordinates (u, v, w) of p; w is the off-plane offset.
Eigen::Vector3d project_to_surface(const PlanarSurface& surface,
                                   const Eigen::Vector3d& p);

}  // namespace lidarqa
