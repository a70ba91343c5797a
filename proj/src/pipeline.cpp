#include "lidarqa/pipeline.hpp"

#include "lidarqa/accuracy.hpp"
#include "lidarqa/density.hpp"
#include "lidarqa/errors.hpp"

namespace lidarqa {

namespace {

struct ClassAccumulator {
  std::vector<Patch> patches;
  std::vector<ErrorDecomposition> decompositions;
  std::size_t surface_count = 0;
  std::vector<std::string> diagnostics;
};

io::OrientationBlock finalize(const PointCloud& cloud, ClassAccumulator& acc) {
  io::OrientationBlock block;
  block.surface_count = acc.surface_count;
  block.diagnostics = std::move(acc.diagnostics);
  if (acc.patches.empty()) {
    if (acc.surface_count > 0) {
      block.diagnostics.push_back("no accepted patches; metrics are null");
    }
    return block;
  }
  block.density = summarize_density(acc.patches);
  for (const auto& patch : acc.patches) {
    if (patch.total_points() < 4) continue;
    try {
      acc.decompositions.push_back(decompose_patch(patch, cloud));
    } catch (const DegenerateGeometry&) {
      // A perfectly collinear patch carries no plane; skip it.
    }
  }
  if (!acc.decompositions.empty()) {
    block.accuracy = summarize_accuracy(acc.decompositions);
    block.per_pass_offsets =
        pass_offset_profile(acc.decompositions).entries;
  } else {
    block.diagnostics.push_back("no patch supported a plane fit");
  }
  return block;
}

}  // namespace

io::MetricsReport compute_metrics(const PointCloud& cloud,
                                  std::span<const PlanarSurface> surfaces,
                                  const SamplingPlan& plan) {
  ClassAccumulator horizontal, vertical, canted;
  io::MetricsReport report;

  for (const auto& surface : surfaces) {
    ClassAccumulator* acc = nullptr;
    switch (surface.orientation_class) {
      case Orientation::horizontal:
        acc = &horizontal;
        break;
      case Orientation::vertical:
        acc = &vertical;
        break;
      default:
        acc = &canted;
        break;
    }
    ++acc->surface_count;

    const SurfacePointSet sp =
        collect_surface_points(cloud, surface, plan.max_w_offset);
    if (sp.size() == 0) {
      acc->diagnostics.push_back("surface '" + surface.label +
                                 "' has no member points");
      continue;
    }
    SamplingResult sampled = sample_patches(sp, surface, plan);
    if (!sampled.diagnostic.empty()) {
      acc->diagnostics.push_back(sampled.diagnostic);
    }
    for (auto& p : sampled.patches) acc->patches.push_back(std::move(p));
  }

  report.horizontal = finalize(cloud, horizontal);
  report.vertical = finalize(cloud, vertical);
  report.canted = finalize(cloud, canted);
  if (report.horizontal.density && report.vertical.density &&
      report.vertical.density->anpd > 0.0) {
    report.eta_hv =
        eta_hv(*report.horizontal.density, *report.vertical.density);
  }
  return report;
}

}  // namespace lidarqa
