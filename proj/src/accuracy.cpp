#include "lidarqa/accuracy.hpp"

#include <cmath>
#include <map>

#include "lidarqa/errors.hpp"
#include "lidarqa/geometry.hpp"

namespace lidarqa {

ErrorDecomposition decompose_patch(const Patch& patch,
                                   const PointCloud& cloud) {
  const std::size_t n_total = patch.total_points();
  if (n_total < 4) {
    throw InsufficientData("decompose_patch: need >= 4 points, got " +
                           std::to_string(n_total));
  }

  std::vector<Eigen::Vector3d> positions;
  positions.reserve(n_total);
  for (const auto& [pass, idx] : patch.points_by_pass) {
    for (std::size_t i : idx) positions.push_back(cloud.points()[i].position());
  }
  const Plane plane = fit_plane(positions);

  ErrorDecomposition out;
  out.n_total = n_total;
  const double denom = static_cast<double>(n_total) - 1.0;

  double sum_z2 = 0.0;
  double sum_nh2 = 0.0;
  double sum_nmse = 0.0;
  for (const auto& [pass, idx] : patch.points_by_pass) {
    if (idx.empty()) continue;
    const auto n_k = static_cast<double>(idx.size());
    double mean = 0.0;
    std::vector<double> z;
    z.reserve(idx.size());
    for (std::size_t i : idx) {
      const double zi = signed_distance(plane, cloud.points()[i].position());
      z.push_back(zi);
      mean += zi;
      sum_z2 += zi * zi;
    }
    mean /= n_k;
    double mse = 0.0;
    for (double zi : z) mse += (zi - mean) * (zi - mean);
    mse /= n_k;  // divisor n_k, required for the exact identity

    out.per_pass.push_back({pass, idx.size(), mean, mse});
    sum_nh2 += n_k * mean * mean;
    sum_nmse += n_k * mse;
  }

  out.rmse = std::sqrt(sum_z2 / denom);
  out.c = std::sqrt(sum_nh2 / denom);
  out.w = std::sqrt(sum_nmse / denom);
  if (out.w > 0.0) out.c_over_w = out.c / out.w;
  return out;
}

ErrorDecomposition summarize_accuracy(
    std::span<const ErrorDecomposition> decompositions) {
  if (decompositions.empty()) {
    throw InsufficientData("summarize_accuracy: no decompositions");
  }

  double weight = 0.0;
  double rmse2 = 0.0;
  double c2 = 0.0;
  double w2 = 0.0;
  std::map<int, ErrorDecomposition::PassStats> pooled;
  std::size_t n_total = 0;

  for (const auto& d : decompositions) {
    const double wgt = static_cast<double>(d.n_total) - 1.0;
    weight += wgt;
    rmse2 += wgt * d.rmse * d.rmse;
    c2 += wgt * d.c * d.c;
    w2 += wgt * d.w * d.w;
    n_total += d.n_total;
    for (const auto& ps : d.per_pass) {
      auto& agg = pooled[ps.pass_id];
      agg.pass_id = ps.pass_id;
      const auto n_old = static_cast<double>(agg.n);
      const auto n_new = static_cast<double>(ps.n);
      agg.h_hat = (agg.h_hat * n_old + ps.h_hat * n_new) / (n_old + n_new);
      agg.mse = (agg.mse * n_old + ps.mse * n_new) / (n_old + n_new);
      agg.n += ps.n;
    }
  }

  ErrorDecomposition out;
  out.n_total = n_total;
  out.rmse = std::sqrt(rmse2 / weight);
  out.c = std::sqrt(c2 / weight);
  out.w = std::sqrt(w2 / weight);
  if (out.w > 0.0) out.c_over_w = out.c / out.w;
  out.per_pass.reserve(pooled.size());
  for (const auto& [pass, ps] : pooled) out.per_pass.push_back(ps);
  return out;
}

PassOffsetProfile pass_offset_profile(
    std::span<const ErrorDecomposition> decompositions) {
  std::map<int, std::pair<double, std::size_t>> acc;  // pass -> (sum|h|, count)
  for (const auto& d : decompositions) {
    for (const auto& ps : d.per_pass) {
      auto& [sum, count] = acc[ps.pass_id];
      sum += std::abs(ps.h_hat);
      ++count;
    }
  }
  PassOffsetProfile profile;
  profile.entries.reserve(acc.size());
  for (const auto& [pass, sc] : acc) {
    profile.entries.push_back(
        {pass, sc.first / static_cast<double>(sc.second), sc.second});
  }
  return profile;
}

}  // namespace lidarqa
