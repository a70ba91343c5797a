#include "lidarqa/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lidarqa/errors.hpp"
#include "lidarqa/geometry.hpp"

namespace lidarqa {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-draw RNG stream derived from (seed, ordinal) so parallel and serial
// evaluation orders agree.
std::mt19937_64 draw_rng(std::uint64_t seed, std::size_t ordinal) {
  return std::mt19937_64(
      splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (ordinal + 1))));
}

// Uniform grid over the surface rectangle for patch membership queries.
class UvGrid {
 public:
  UvGrid(const SurfacePointSet& sp, double extent_u, double extent_v,
         double cell)
      : sp_(sp), cell_(cell) {
    nu_ = std::max<std::size_t>(1, static_cast<std::size_t>(
                                       std::ceil(extent_u / cell)));
    nv_ = std::max<std::size_t>(1, static_cast<std::size_t>(
                                       std::ceil(extent_v / cell)));
    buckets_.resize(nu_ * nv_);
    for (std::size_t i = 0; i < sp.size(); ++i) {
      buckets_[cell_of(sp.u[i], sp.v[i])].push_back(i);
    }
  }

  // Indices into the surface point set whose (u, v) falls in the square.
  std::vector<std::size_t> query(double u0, double u1, double v0,
                                 double v1) const {
    std::vector<std::size_t> out;
    const std::size_t iu0 = clamp_u(u0), iu1 = clamp_u(u1);
    const std::size_t iv0 = clamp_v(v0), iv1 = clamp_v(v1);
    for (std::size_t iv = iv0; iv <= iv1; ++iv) {
      for (std::size_t iu = iu0; iu <= iu1; ++iu) {
        for (std::size_t k : buckets_[iv * nu_ + iu]) {
          const double u = sp_.u[k];
          const double v = sp_.v[k];
          if (u >= u0 && u <= u1 && v >= v0 && v <= v1) out.push_back(k);
        }
      }
    }
    return out;
  }

 private:
  std::size_t clamp_u(double u) const {
    const auto i = static_cast<long long>(std::floor(u / cell_));
    return static_cast<std::size_t>(
        std::clamp<long long>(i, 0, static_cast<long long>(nu_) - 1));
  }
  std::size_t clamp_v(double v) const {
    const auto i = static_cast<long long>(std::floor(v / cell_));
    return static_cast<std::size_t>(
        std::clamp<long long>(i, 0, static_cast<long long>(nv_) - 1));
  }
  std::size_t cell_of(double u, double v) const {
    return clamp_v(v) * nu_ + clamp_u(u);
  }

  const SurfacePointSet& sp_;
  double cell_;
  std::size_t nu_ = 0;
  std::size_t nv_ = 0;
  std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace

double SamplingPlan::side() const { return std::sqrt(patch_area); }

SurfacePointSet collect_surface_points(const PointCloud& cloud,
                                       const PlanarSurface& surface,
                                       double max_w_offset) {
  if (!(max_w_offset > 0.0)) {
    throw InvalidInput("collect_surface_points: max_w_offset must be > 0");
  }
  SurfacePointSet out;
  const auto& pts = cloud.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Eigen::Vector3d p = pts[i].position();
    const Eigen::Vector3d uvw = project_to_surface(surface, p);
    if (uvw.x() < 0.0 || uvw.x() > surface.extent_u) continue;
    if (uvw.y() < 0.0 || uvw.y() > surface.extent_v) continue;
    if (std::abs(uvw.z()) > max_w_offset) continue;
    out.cloud_index.push_back(i);
    out.u.push_back(uvw.x());
    out.v.push_back(uvw.y());
    out.w.push_back(uvw.z());
    out.pass.push_back(pts[i].pass_id);
    out.position.push_back(p);
  }
  return out;
}

bool reject_patch(const Patch& patch, const RejectionPolicy& policy,
                  std::span<const double> plane_fit_residuals) {
  switch (policy.mode) {
    case RejectionPolicy::Mode::none:
      return false;
    case RejectionPolicy::Mode::exclusion_zones: {
      const double half = patch.side / 2.0;
      const double u0 = patch.center_uv.x() - half;
      const double u1 = patch.center_uv.x() + half;
      const double v0 = patch.center_uv.y() - half;
      const double v1 = patch.center_uv.y() + half;
      for (const auto& z : policy.exclusion_zones) {
        if (u1 >= z.u_min && u0 <= z.u_max && v1 >= z.v_min && v0 <= z.v_max) {
          return true;
        }
      }
      return false;
    }
    case RejectionPolicy::Mode::residual_outlier: {
      if (!(policy.residual_threshold > 0.0)) {
        throw InvalidInput("rejection: residual_threshold must be > 0");
      }
      for (double r : plane_fit_residuals) {
        if (std::abs(r) > policy.residual_threshold) return true;
      }
      return false;
    }
  }
  return false;
}

SamplingResult sample_patches(const SurfacePointSet& surface_points,
                              const PlanarSurface& surface,
                              const SamplingPlan& plan) {
  if (!(plan.patch_area > 0.0)) {
    throw InvalidInput("sampling: patch_area must be > 0");
  }
  if (plan.patch_count <= 0) {
    throw InvalidInput("sampling: patch_count must be > 0");
  }
  const double side = plan.side();
  if (side > std::min(surface.extent_u, surface.extent_v) * (1.0 + 1e-12)) {
    throw InvalidInput("sampling: patch side " + std::to_string(side) +
                       " exceeds surface extent of '" + surface.label + "'");
  }

  SamplingResult result;
  if (surface_points.size() == 0) {
    result.diagnostic = "surface '" + surface.label + "' has no member points";
    return result;
  }

  const UvGrid grid(surface_points, surface.extent_u, surface.extent_v, side);
  const double half = side / 2.0;
  const std::size_t draw_cap =
      static_cast<std::size_t>(plan.patch_count) * 100;
  std::uniform_int_distribution<std::size_t> pick(0,
                                                  surface_points.size() - 1);

  const bool needs_residuals =
      plan.rejection.mode == RejectionPolicy::Mode::residual_outlier;

  while (result.patches.size() <
             static_cast<std::size_t>(plan.patch_count) &&
         result.draws < draw_cap) {
    auto rng = draw_rng(plan.seed, result.draws);
    ++result.draws;

    const std::size_t k = pick(rng);
    // Clamp the center so the square fits inside the rectangle.
    const double cu = std::clamp(surface_points.u[k], half,
                                 surface.extent_u - half);
    const double cv = std::clamp(surface_points.v[k], half,
                                 surface.extent_v - half);

    const auto members =
        grid.query(cu - half, cu + half, cv - half, cv + half);
    if (members.size() < static_cast<std::size_t>(plan.min_points)) {
      ++result.rejected;
      continue;
    }

    Patch patch;
    patch.surface_label = surface.label;
    patch.center_uv = {cu, cv};
    patch.side = side;
    patch.area = side * side;
    for (std::size_t m : members) {
      patch.points_by_pass[surface_points.pass[m]].push_back(
          surface_points.cloud_index[m]);
    }

    std::vector<double> residuals;
    if (needs_residuals && members.size() >= 4) {
      std::vector<Eigen::Vector3d> pos;
      pos.reserve(members.size());
      for (std::size_t m : members) pos.push_back(surface_points.position[m]);
      const Plane fit = fit_plane(pos);
      residuals.reserve(pos.size());
      for (const auto& p : pos) residuals.push_back(signed_distance(fit, p));
    }

    if (reject_patch(patch, plan.rejection, residuals)) {
      ++result.rejected;
      continue;
    }
    result.patches.push_back(std::move(patch));
  }

  if (result.patches.size() < static_cast<std::size_t>(plan.patch_count)) {
    result.shortfall = true;
    result.diagnostic =
        "sampling shortfall on '" + surface.label + "': accepted " +
        std::to_string(result.patches.size()) + " of " +
        std::to_string(plan.patch_count) + " after " +
        std::to_string(result.draws) + " draws";
  }
  return result;
}

}  // namespace lidarqa
