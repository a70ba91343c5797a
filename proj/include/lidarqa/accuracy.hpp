#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lidarqa/model.hpp"

namespace lidarqa {

/// Exact split of patch RMSE into a cross-pass component C (weighted mean of
/// squared per-pass plane offsets) and a within-pass component W (weighted
/// mean of per-pass MSEs): rmse^2 = c^2 + w^2 holds to rounding.
struct ErrorDecomposition {
  struct PassStats {
    int pass_id = 0;
    std::size_t n = 0;      // points from this pass
    double h_hat = 0.0;     // signed mean orthogonal offset, meters
    double mse = 0.0;       // mean squared deviation about h_hat (divisor n)
  };

  double rmse = 0.0;
  double c = 0.0;
  double w = 0.0;
  std::optional<double> c_over_w;  // absent when w = 0
  std::vector<PassStats> per_pass;
  std::size_t n_total = 0;
};

struct PassOffsetProfile {
  struct Entry {
    int pass_id = 0;
    double mean_abs_offset = 0.0;   // mean over supporting patches of |h_hat|
    std::size_t patch_support = 0;  // patches containing the pass
  };
  std::vector<Entry> entries;  // ordered by pass_id
};

/// Fit a plane to all patch points, measure signed orthogonal distances, and
/// decompose. Requires >= 4 points; per-pass MSE uses divisor n_k and the
/// global divisor is N-1, which together make the identity exact.
ErrorDecomposition decompose_patch(const Patch& patch, const PointCloud& cloud);

/// Pool per-patch decompositions: each squared component is averaged with
/// weight (N-1), so the identity is preserved by construction.
ErrorDecomposition summarize_accuracy(
    std::span<const ErrorDecomposition> decompositions);

PassOffsetProfile pass_offset_profile(
    std::span<const ErrorDecomposition> decompositions);

}  // namespace lidarqa
