#include "lidarqa/io/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "lidarqa/io/util.hpp"
#include "lidarqa/errors.hpp"

namespace lidarqa::io {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json block_to_json(const OrientationBlock& b) {
  ordered_json j;
  if (b.density) {
    j["anpd"] = b.density->anpd;
    j["anpd_sd"] = b.density->anpd_sd;
    j["avg_passes"] = b.density->avg_overlapping_passes;
    j["per_pass_density"] = b.density->avg_density_per_pass;
    j["patch_count"] = b.density->patch_count;
    j["single_patch"] = b.density->single_patch;
  } else {
    j["anpd"] = nullptr;
    j["anpd_sd"] = nullptr;
    j["avg_passes"] = nullptr;
    j["per_pass_density"] = nullptr;
    j["patch_count"] = 0;
  }
  if (b.accuracy) {
    j["rmse"] = b.accuracy->rmse;
    j["c"] = b.accuracy->c;
    j["w"] = b.accuracy->w;
    if (b.accuracy->c_over_w) {
      j["c_over_w"] = *b.accuracy->c_over_w;
    } else {
      j["c_over_w"] = nullptr;
    }
  } else {
    j["rmse"] = nullptr;
    j["c"] = nullptr;
    j["w"] = nullptr;
    j["c_over_w"] = nullptr;
  }
  ordered_json offsets = ordered_json::object();
  for (const auto& e : b.per_pass_offsets) {
    ordered_json entry;
    entry["mean_abs_offset"] = e.mean_abs_offset;
    entry["patch_support"] = e.patch_support;
    offsets[std::to_string(e.pass_id)] = entry;
  }
  j["per_pass_offsets"] = offsets;
  j["surface_count"] = b.surface_count;
  j["diagnostics"] = b.diagnostics;
  return j;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void block_to_csv(std::ostringstream& out, const std::string& section,
                  const OrientationBlock& b) {
  auto row = [&](const std::string& key, const std::string& value) {
    out << section << ',' << key << ',' << value << "\n";
  };
  auto num = [&](const std::string& key, std::optional<double> v) {
    row(key, v ? format_number(*v) : "");
  };
  num("anpd", b.density ? std::optional(b.density->anpd) : std::nullopt);
  num("anpd_sd", b.density ? std::optional(b.density->anpd_sd) : std::nullopt);
  num("avg_passes",
      b.density ? std::optional(b.density->avg_overlapping_passes)
                : std::nullopt);
  num("per_pass_density",
      b.density ? std::optional(b.density->avg_density_per_pass)
                : std::nullopt);
  row("patch_count",
      std::to_string(b.density ? b.density->patch_count : std::size_t{0}));
  num("rmse", b.accuracy ? std::optional(b.accuracy->rmse) : std::nullopt);
  num("c", b.accuracy ? std::optional(b.accuracy->c) : std::nullopt);
  num("w", b.accuracy ? std::optional(b.accuracy->w) : std::nullopt);
  num("c_over_w", b.accuracy ? b.accuracy->c_over_w : std::nullopt);
  for (const auto& e : b.per_pass_offsets) {
    row("per_pass_offset." + std::to_string(e.pass_id),
        format_number(e.mean_abs_offset));
  }
  for (const auto& d : b.diagnostics) row("diagnostic", d);
}

}  // namespace

std::string render_report(const MetricsReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    ordered_json j;
    j["run"] = {{"version", report.run.version},
                {"seed", report.run.seed},
                {"config_hash", report.run.config_hash}};
    j["horizontal"] = block_to_json(report.horizontal);
    j["vertical"] = block_to_json(report.vertical);
    j["canted"] = block_to_json(report.canted);
    if (report.eta_hv) {
      j["eta_hv"] = *report.eta_hv;
    } else {
      j["eta_hv"] = nullptr;
    }
    j["diagnostics"] = report.diagnostics;
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "section,key,value\n";
  out << "run,version," << report.run.version << "\n";
  out << "run,seed," << report.run.seed << "\n";
  out << "run,config_hash," << report.run.config_hash << "\n";
  block_to_csv(out, "horizontal", report.horizontal);
  block_to_csv(out, "vertical", report.vertical);
  block_to_csv(out, "canted", report.canted);
  out << "summary,eta_hv,"
      << (report.eta_hv ? format_number(*report.eta_hv) : "") << "\n";
  for (const auto& d : report.diagnostics) out << "summary,diagnostic," << d << "\n";
  return out.str();
}

void write_report(const MetricsReport& report,
                  const std::filesystem::path& path, ReportFormat format) {
  write_file_atomic(path, render_report(report, format));
}

}  // namespace lidarqa::io
