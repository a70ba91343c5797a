#include "lidarqa/density.hpp"

#include <cmath>

#include "lidarqa/errors.hpp"

namespace lidarqa {

double patch_density(const Patch& patch) {
  return static_cast<double>(patch.total_points()) / patch.area;
}

int overlap_count(const Patch& patch) {
  int n = 0;
  for (const auto& [pass, idx] : patch.points_by_pass) {
    if (!idx.empty()) ++n;
  }
  return n;
}

DensitySummary summarize_density(std::span<const Patch> patches) {
  if (patches.empty()) {
    throw InsufficientData("summarize_density: no patches");
  }
  const auto n = static_cast<double>(patches.size());
  double sum = 0.0;
  double overlap_sum = 0.0;
  for (const auto& p : patches) {
    sum += patch_density(p);
    overlap_sum += overlap_count(p);
  }
  DensitySummary s;
  s.patch_count = patches.size();
  s.anpd = sum / n;
  s.avg_overlapping_passes = overlap_sum / n;
  s.avg_density_per_pass = s.avg_overlapping_passes > 0.0
                               ? s.anpd / s.avg_overlapping_passes
                               : 0.0;
  if (patches.size() == 1) {
    s.single_patch = true;
    s.anpd_sd = 0.0;
  } else {
    double ss = 0.0;
    for (const auto& p : patches) {
      const double d = patch_density(p) - s.anpd;
      ss += d * d;
    }
    s.anpd_sd = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

double eta_hv(const DensitySummary& horizontal,
              const DensitySummary& vertical) {
  if (!(vertical.anpd > 0.0)) {
    throw DomainError("eta_hv: vertical density is zero");
  }
  return horizontal.anpd / vertical.anpd;
}

}  // namespace lidarqa
