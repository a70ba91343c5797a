#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lidarqa/model.hpp"

namespace lidarqa {

/// Points of a cloud that fall on (a thin band around) a surface, carried
/// in surface-frame coordinates alongside their original cloud indices.
struct SurfacePointSet {
  std::vector<std::size_t> cloud_index;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> w;
  std::vector<int> pass;
  std::vector<Eigen::Vector3d> position;

  std::size_t size() const { return cloud_index.size(); }
};

struct RejectionPolicy {
  enum class Mode { none, exclusion_zones, residual_outlier };

  struct ZoneUV {
    double u_min = 0.0;
    double v_min = 0.0;
    double u_max = 0.0;
    double v_max = 0.0;
  };

  Mode mode = Mode::none;
  std::vector<ZoneUV> exclusion_zones;
  double residual_threshold = 0.0;  // meters; required when mode = residual_outlier
};

struct SamplingPlan {
  double patch_area = 4.0;  // m^2; side = sqrt(area)
  int patch_count = 10000;
  std::uint64_t seed = 0;
  double max_w_offset = 0.25;  // band thickness for surface membership
  int min_points = 4;
  RejectionPolicy rejection;

  double side() const;
};

struct SamplingResult {
  std::vector<Patch> patches;
  std::size_t draws = 0;
  std::size_t rejected = 0;
  bool shortfall = false;
  std::string diagnostic;
};

/// Points with 0 <= u <= extent_u, 0 <= v <= extent_v, |w| <= max_w_offset.
SurfacePointSet collect_surface_points(const PointCloud& cloud,
                                       const PlanarSurface& surface,
                                       double max_w_offset);

/// Random square patches centered on uniformly drawn member points, clamped
/// so the square stays inside the surface rectangle. A patch is accepted iff
/// it has >= min_points members and passes the rejection policy. Patches may
/// overlap. Deterministic for a fixed seed; candidate draws are capped at
/// 100 * patch_count, after which the result carries a shortfall diagnostic.
SamplingResult sample_patches(const SurfacePointSet& surface_points,
                              const PlanarSurface& surface,
                              const SamplingPlan& plan);

/// True iff the patch should be discarded under the policy.
bool reject_patch(const Patch& patch, const RejectionPolicy& policy,
                  std::span<const double> plane_fit_residuals);

}  // namespace lidarqa
