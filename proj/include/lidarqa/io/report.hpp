#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lidarqa/accuracy.hpp"
#include "lidarqa/density.hpp"

namespace lidarqa::io {

enum class ReportFormat { json, csv };

struct RunInfo {
  std::string version;
  std::uint64_t seed = 0;
  std::string config_hash;  // hex FNV-1a of the inputs
};

/// Metrics for one orientation class. Absent metrics (no patches) serialize
/// as nulls alongside a diagnostics note.
struct OrientationBlock {
  std::optional<DensitySummary> density;
  std::optional<ErrorDecomposition> accuracy;
  std::vector<PassOffsetProfile::Entry> per_pass_offsets;
  std::size_t surface_count = 0;
  std::vector<std::string> diagnostics;
};

struct MetricsReport {
  RunInfo run;
  OrientationBlock horizontal;
  OrientationBlock vertical;
  OrientationBlock canted;
  std::optional<double> eta_hv;
  std::vector<std::string> diagnostics;
};

/// Stable field names, numbers at full precision, byte-identical output for
/// identical reports. Written atomically (temp then rename).
void write_report(const MetricsReport& report,
                  const std::filesystem::path& path, ReportFormat format);

std::string render_report(const MetricsReport& report, ReportFormat format);

}  // namespace lidarqa::io
