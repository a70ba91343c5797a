#pragma once

#include <span>
#include <vector>

#include "lidarqa/io/report.hpp"
#include "lidarqa/model.hpp"
#include "lidarqa/sampling.hpp"

namespace lidarqa {

/// Full ingestion-to-report pipeline: sample patches on every surface, group
/// results by orientation class, and compute the density block, the accuracy
/// block, the pass-offset profile, and eta_HV. Surfaces with no member
/// points produce a per-surface diagnostic, not an error. The run block of
/// the returned report is left for the caller to fill.
io::MetricsReport compute_metrics(const PointCloud& cloud,
                                  std::span<const PlanarSurface> surfaces,
                                  const SamplingPlan& plan);

}  // namespace lidarqa
