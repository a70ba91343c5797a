#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <string>

#include "lidarqa/io/util.hpp"
#include "lidarqa/errors.hpp"
#include "lidarqa/io/csv.hpp"
#include "lidarqa/io/las.hpp"
#include "lidarqa/io/report.hpp"
#include "lidarqa/io/scene_config.hpp"
#include "lidarqa/pipeline.hpp"
#include "lidarqa/predictor.hpp"
#include "lidarqa/simulator.hpp"
#include "lidarqa/version.hpp"

namespace {

using namespace lidarqa;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

PointCloud load_cloud(const std::filesystem::path& path) {
  if (path.extension() == ".las") return io::read_las(path);
  return io::read_csv(path);
}

int run_simulate(const std::string& scene_path, const std::string& out_path,
                 const std::string& format, std::uint64_t seed,
                 bool seed_given) {
  const io::SceneConfig cfg = io::load_scene_config(scene_path);
  if (cfg.scanners.empty()) {
    throw SchemaError("scene config has no scanners");
  }
  if (cfg.flight_lines.empty()) {
    throw SchemaError("scene config has no flight lines");
  }
  NoiseSpec noise = cfg.noise;
  if (seed_given) noise.seed = seed;

  const SimulationResult result =
      simulate(cfg.scene(), cfg.scanners.front(), cfg.flight_lines, noise);

  if (format == "las") {
    io::write_las(result.cloud, out_path);
  } else {
    io::write_csv(result.cloud, out_path);
  }

  nlohmann::ordered_json log;
  log["version"] = kVersion;
  log["seed"] = noise.seed;
  log["pulses_emitted"] = result.log.pulses_emitted;
  log["points_landed"] = result.cloud.size();
  log["no_hit"] = result.log.no_hit;
  log["ground_hits"] = result.log.ground_hits;
  log["wall_hits"] = result.log.wall_hits;
  nlohmann::ordered_json swaths = nlohmann::ordered_json::object();
  for (const auto& [pass, width] : result.log.swath_width_by_pass) {
    swaths[std::to_string(pass)] = width;
  }
  log["swath_width_by_pass"] = swaths;
  io::write_file_atomic(out_path + ".log.json", log.dump(2) + "\n");
  return 0;
}

int run_metrics(const std::string& cloud_path, const std::string& surfaces_path,
                double patch_area, int patches, std::uint64_t seed,
                double max_w_offset, int min_points,
                const std::string& out_path, const std::string& format) {
  const PointCloud cloud = load_cloud(cloud_path);
  const auto surfaces = io::load_surfaces(surfaces_path);
  if (surfaces.empty()) {
    throw SchemaError("surfaces file lists no surfaces: " + surfaces_path);
  }

  SamplingPlan plan;
  plan.patch_area = patch_area;
  plan.patch_count = patches;
  plan.seed = seed;
  plan.max_w_offset = max_w_offset;
  plan.min_points = min_points;

  io::MetricsReport report = compute_metrics(cloud, surfaces, plan);
  report.run.version = kVersion;
  report.run.seed = seed;
  const std::string params = surfaces_path + "|" + std::to_string(patch_area) +
                             "|" + std::to_string(patches) + "|" +
                             std::to_string(max_w_offset) + "|" +
                             std::to_string(min_points);
  report.run.config_hash =
      hex64(io::fnv1a64(io::read_file(surfaces_path) + params));

  io::write_report(report, out_path,
                   format == "csv" ? io::ReportFormat::csv
                                   : io::ReportFormat::json);
  for (const auto& d : report.diagnostics) std::cerr << d << "\n";
  return 0;
}

int run_predict(const std::string& scene_path, const std::string& wall_name,
                double bin_height, int pass, bool pass_given,
                const std::string& out_path) {
  const io::SceneConfig cfg = io::load_scene_config(scene_path);
  if (cfg.scanners.empty()) {
    throw SchemaError("scene config has no scanners");
  }
  if (cfg.flight_lines.empty()) {
    throw SchemaError("scene config has no flight lines");
  }
  const io::NamedWall& wall = cfg.wall_by_name(wall_name);

  const FlightLine* flight = &cfg.flight_lines.front();
  if (pass_given) {
    flight = nullptr;
    for (const auto& f : cfg.flight_lines) {
      if (f.pass_id == pass) flight = &f;
    }
    if (!flight) {
      throw LookupError("no flight line with pass_id " + std::to_string(pass));
    }
  }

  const ScannerSpec& scanner = cfg.scanners.front();
  const WallProfile profile =
      wall_profile(scanner, *flight, wall.wall, bin_height);
  const TheoreticalSummary summary =
      theoretical_summary(scanner, *flight, wall.wall, bin_height);

  std::ostringstream out;
  char buf[64];
  out << "h_bin,rho_w\n";
  for (const auto& b : profile.bins) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g\n", b.h_center, b.rho_w);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "# rho_flat_nadir=%.9g\n",
                summary.rho_flat_nadir);
  out << buf;
  std::snprintf(buf, sizeof(buf), "# rho_wall_avg=%.9g\n", summary.rho_wall_avg);
  out << buf;
  std::snprintf(buf, sizeof(buf), "# eta_hv_predicted=%.9g\n",
                summary.eta_hv_predicted);
  out << buf;
  io::write_file_atomic(out_path, out.str());

  if (profile.truncated) {
    std::cerr << "warning: wall '" << wall_name
              << "' leaves the operating range; profile is partial\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-pass aerial LiDAR density and accuracy toolkit"};
  app.set_version_flag("--version", lidarqa::kVersion);
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run the synthetic scanner");
  std::string sim_scene, sim_out, sim_format = "csv";
  std::uint64_t sim_seed = 0;
  sim->add_option("--scene", sim_scene, "Scene config (JSON)")->required();
  sim->add_option("--out", sim_out, "Output point cloud path")->required();
  sim->add_option("--format", sim_format, "Output format")
      ->check(CLI::IsMember({"csv", "las"}));
  auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "Noise seed");

  // metrics
  auto* met = app.add_subcommand("metrics", "Compute density/accuracy report");
  std::string met_cloud, met_surfaces, met_out, met_format = "json";
  double met_area = 4.0, met_maxw = 0.25;
  int met_patches = 10000, met_min_points = 4;
  std::uint64_t met_seed = 0;
  met->add_option("--cloud", met_cloud, "Point cloud (.las or .csv)")
      ->required();
  met->add_option("--surfaces", met_surfaces, "Surface definitions (JSON)")
      ->required();
  met->add_option("--patch-area", met_area, "Patch area, m^2");
  met->add_option("--patches", met_patches, "Patches per surface");
  met->add_option("--seed", met_seed, "Sampling seed");
  met->add_option("--max-w-offset", met_maxw, "Off-plane band, meters");
  met->add_option("--min-points", met_min_points, "Minimum points per patch");
  met->add_option("--out", met_out, "Report path")->required();
  met->add_option("--format", met_format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  // predict
  auto* pre = app.add_subcommand("predict", "Predicted wall density profile");
  std::string pre_scene, pre_wall, pre_out;
  double pre_bin = 1.0;
  int pre_pass = 0;
  pre->add_option("--scene", pre_scene, "Scene config (JSON)")->required();
  pre->add_option("--wall", pre_wall, "Wall name")->required();
  pre->add_option("--bin", pre_bin, "Height bin, meters");
  auto* pre_pass_opt = pre->add_option("--pass", pre_pass, "Flight pass id");
  pre->add_option("--out", pre_out, "Profile CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) {
      return run_simulate(sim_scene, sim_out, sim_format, sim_seed,
                          sim_seed_opt->count() > 0);
    }
    if (met->parsed()) {
      return run_metrics(met_cloud, met_surfaces, met_area, met_patches,
                         met_seed, met_maxw, met_min_points, met_out,
                         met_format);
    }
    if (pre->parsed()) {
      return run_predict(pre_scene, pre_wall, pre_bin, pre_pass,
                         pre_pass_opt->count() > 0, pre_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
