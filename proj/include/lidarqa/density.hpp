#pragma once

#include <span>

#include "lidarqa/model.hpp"

namespace lidarqa {

/// Aggregate density over sampled patches. ANPD is the mean of per-patch
/// densities (the SD only exists for a per-patch mean).
struct DensitySummary {
  double anpd = 0.0;                    // pts/m^2
  double anpd_sd = 0.0;                 // SD over patches
  double avg_overlapping_passes = 0.0;  // mean of per-patch overlap counts
  double avg_density_per_pass = 0.0;    // anpd / avg_overlapping_passes
  std::size_t patch_count = 0;
  bool single_patch = false;  // SD undefined, reported as 0
};

/// Total member points divided by patch area.
double patch_density(const Patch& patch);

/// Number of distinct passes with at least one member point.
int overlap_count(const Patch& patch);

/// Throws InsufficientData on an empty patch list.
DensitySummary summarize_density(std::span<const Patch> patches);

/// Horizontal-to-vertical density ratio. Throws DomainError when the
/// vertical density is zero.
double eta_hv(const DensitySummary& horizontal, const DensitySummary& vertical);

}  // namespace lidarqa
