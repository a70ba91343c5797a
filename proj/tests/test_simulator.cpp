#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lidarqa/accuracy.hpp"
#include "lidarqa/simulator.hpp"

using namespace lidarqa;

namespace {

constexpr double kDeg2Rad = M_PI / 180.0;

// Patch spanning the whole cloud, for direct decomposition checks.
Patch whole_cloud_patch(const PointCloud& cloud) {
  Patch p;
  p.side = 1e9;
  p.area = 1.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    p.points_by_pass[cloud.points()[i].pass_id].push_back(i);
  }
  return p;
}

}  // namespace

TEST_CASE("flat ground with no noise lands every point on the ground plane") {
  Scene scene;
  scene.ground_z = 2.5;
  ScannerSpec scanner{0.0, 30.0, 0.5, 50.0};
  scanner.pulse_rate = scanner.pulses_per_line() * scanner.line_rate;
  const std::vector<FlightLine> flights = {{{0, 0}, {50, 0}, 100.0, 25.0, 3}};
  const auto result = simulate(scene, scanner, flights, {});
  CHECK(result.cloud.size() > 0);
  for (const auto& p : result.cloud.points()) {
    CHECK(p.z == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(p.pass_id == 3);
    CHECK(p.gps_time.has_value());
  }
  CHECK(result.log.no_hit == 0);
  CHECK(result.log.ground_hits == result.cloud.size());
  CHECK(result.log.swath_width_by_pass.at(3) ==
        doctest::Approx(2.0 * 100.0 * std::tan(30.0 * kDeg2Rad)));
}

TEST_CASE("a wall shadows the ground strip behind it") {
  Scene scene;
  // Wall at y = 20, 30 m tall, facing back toward the flight track.
  scene.walls.push_back({{-50, 20}, {150, 20}, 0.0, 30.0, {0, -1}});
  ScannerSpec scanner{0.0, 45.0, 0.1, 50.0};
  scanner.pulse_rate = scanner.pulses_per_line() * scanner.line_rate;
  FlightLine flight{{0, 0}, {100, 0}, 100.0, 25.0, 0};
  const auto result = simulate(scene, scanner, {flight}, {});

  // Rays grazing the wall top land at y = 20 * 100 / 70 = 28.57; the strip
  // between the wall base and that line is in full shadow.
  for (std::size_t i = 0; i < result.cloud.size(); ++i) {
    if (result.log.surface_of_point[i] != -1) continue;
    const auto& p = result.cloud.points()[i];
    const bool in_shadow = p.y > 20.0 + 1e-9 && p.y < 28.57;
    CHECK(!in_shadow);
  }
  CHECK(expected_counts(scene, scanner, flight,
                        Region::ground(10.0, 20.1, 90.0, 28.4)) == 0);
  CHECK(result.log.wall_hits.at(0) > 0);
}

TEST_CASE("pulse conservation is exact") {
  Scene scene;
  scene.ground_extent = GroundExtent{-30.0, -30.0, 80.0, 30.0};
  scene.walls.push_back({{0, 15}, {50, 15}, 0.0, 10.0, {0, -1}});
  ScannerSpec scanner{0.0, 40.0, 0.2, 50.0};
  scanner.pulse_rate = scanner.pulses_per_line() * scanner.line_rate;
  const std::vector<FlightLine> flights = {{{0, 0}, {50, 0}, 60.0, 25.0, 0},
                                           {{0, 5}, {50, 5}, 60.0, 25.0, 1}};
  const auto result = simulate(scene, scanner, flights, {});
  CHECK(result.log.no_hit > 0);  // swath wider than the mapped ground
  std::uint64_t landed = result.log.ground_hits;
  for (auto h : result.log.wall_hits) landed += h;
  CHECK(result.log.pulses_emitted == landed + result.log.no_hit);
  CHECK(landed == result.cloud.size());
  CHECK(result.log.surface_of_point.size() == result.cloud.size());
}

TEST_CASE("expected_counts agrees exactly with a noise-free simulation") {
  Scene scene;
  scene.walls.push_back({{-20, 25}, {120, 25}, 0.0, 20.0, {0, -1}});
  ScannerSpec scanner{0.0, 35.0, 0.25, 50.0};
  scanner.pulse_rate = scanner.pulses_per_line() * scanner.line_rate;
  FlightLine flight{{0, 0}, {60, 0}, 80.0, 25.0, 0};
  const auto result = simulate(scene, scanner, {flight}, {});

  const std::vector<Region> regions = {
      Region::ground(10.0, -10.0, 40.0, 10.0),
      Region::ground(0.0, -60.0, 60.0, 60.0),
      Region::ground(500.0, 500.0, 600.0, 600.0),  // outside the swath
      Region::wall(0, 10.0, 50.0, 0.0, 5.0),
      Region::wall(0, 0.0, 140.0, 0.0, 20.0),
  };
  for (const auto& region : regions) {
    std::uint64_t sim_count = 0;
    for (std::size_t i = 0; i < result.cloud.size(); ++i) {
      const auto& p = result.cloud.points()[i];
      if (region.kind == Region::Kind::ground) {
        if (result.log.surface_of_point[i] != -1) continue;
        if (p.x >= region.min_x && p.x <= region.max_x &&
            p.y >= region.min_y && p.y <= region.max_y) {
          ++sim_count;
        }
      } else {
        if (result.log.surface_of_point[i] != region.wall_index) continue;
        const double along = p.x - (-20.0);
        const double height = p.z;
        if (along >= region.along_min && along <= region.along_max &&
            height >= region.h_min && height <= region.h_max) {
          ++sim_count;
        }
      }
    }
    CHECK(expected_counts(scene, scanner, flight, region) == sim_count);
  }
  CHECK(expected_counts(scene, scanner, flight,
                        Region::ground(500.0, 500.0, 600.0, 600.0)) == 0);
}

TEST_CASE("one scan line over flat ground lands pulses_per_line points") {
  Scene scene;
  ScannerSpec scanner{0.0, 30.0, 0.5, 50.0};
  scanner.pulse_rate = scanner.pulses_per_line() * scanner.line_rate;
  // Flight shorter than one along-track spacing: a single scan line.
  FlightLine flight{{0, 0}, {0.1, 0}, 100.0, 25.0, 0};
  const auto result = simulate(scene, scanner, {flight}, {});
  CHECK(result.cloud.size() ==
        static_cast<std::size_t>(scanner.pulses_per_line()));
  const double half_swath = 100.0 * std::tan(30.0 * kDeg2Rad);
  CHECK(expected_counts(scene, scanner, flight,
                        Region::ground(-1.0, -half_swath - 1.0, 1.0,
                                       half_swath + 1.0)) ==
        static_cast<std::uint64_t>(scanner.pulses_per_line()));
}

TEST_CASE("identical seeds give byte-identical clouds") {
  Scene scene;
  scene.walls.push_back({{0, 30}, {60, 30}, 0.0, 15.0, {0, -1}});
  ScannerSpec scanner{0.0, 40.0, 0.2, 50.0};
  scanner.pulse_rate = scanner.pulses_per_line() * scanner.line_rate;
  const std::vector<FlightLine> flights = {{{0, 0}, {60, 0}, 100.0, 25.0, 0},
                                           {{0, 10}, {60, 10}, 100.0, 25.0, 1}};
  NoiseSpec noise;
  noise.per_point_sigma = 0.02;
  noise.seed = 1234;
  const auto a = simulate(scene, scanner, flights, noise);
  const auto b = simulate(scene, scanner, flights, noise);
  REQUIRE(a.cloud.size() == b.cloud.size());
  for (std::size_t i = 0; i < a.cloud.size(); ++i) {
    CHECK(a.cloud.points()[i].x == b.cloud.points()[i].x);
    CHECK(a.cloud.points()[i].y == b.cloud.points()[i].y);
    CHECK(a.cloud.points()[i].z == b.cloud.points()[i].z);
  }
  NoiseSpec other = noise;
  other.seed = 4321;
  const auto c = simulate(scene, scanner, flights, other);
  bool all_equal = true;
  for (std::size_t i = 0; i < a.cloud.size(); ++i) {
    if (a.cloud.points()[i].z != c.cloud.points()[i].z) all_equal = false;
  }
  CHECK(!all_equal);
}

TEST_CASE("flat-ground density matches the pulse-rate formula within 2%") {
  Scene scene;
  ScannerSpec scanner{0.0, 30.0, 0.05, 100.0};
  scanner.pulse_rate = scanner.pulses_per_line() * scanner.line_rate;
  FlightLine flight{{0, 0}, {25, 0}, 300.0, 25.0, 0};  // one second of flight
  const auto result = simulate(scene, scanner, {flight}, {});

  const double swath = 2.0 * 300.0 * std::tan(30.0 * kDeg2Rad);
  const double rho_flat = scanner.pulse_rate / (swath * flight.speed);

  // Interior slab one spacing in from the line ends avoids the fencepost.
  const auto count = expected_counts(
      scene, scanner, flight,
      Region::ground(5.1, -swath / 2.0, 20.1, swath / 2.0));
  const double measured = static_cast<double>(count) / (15.0 * swath);
  CHECK(std::abs(measured - rho_flat) / rho_flat < 0.02);
}

TEST_CASE("per-point noise drives the within-pass component toward sigma") {
  Scene scene;
  ScannerSpec scanner{0.0, 5.0, 0.05, 100.0};
  scanner.pulse_rate = scanner.pulses_per_line() * scanner.line_rate;
  FlightLine flight{{0, 0}, {30, 0}, 300.0, 25.0, 0};
  NoiseSpec noise;
  noise.per_point_sigma = 0.01;
  noise.seed = 7;
  const auto result = simulate(scene, scanner, {flight}, noise);
  REQUIRE(result.cloud.size() >= 10000);
  const auto d = decompose_patch(whole_cloud_patch(result.cloud), result.cloud);
  CHECK(d.c < 1e-9);
  CHECK(std::abs(d.w - noise.per_point_sigma) / noise.per_point_sigma < 0.05);
}

TEST_CASE("injected symmetric pass offsets are recovered as C") {
  Scene scene;
  ScannerSpec scanner{0.0, 10.0, 0.1, 100.0};
  scanner.pulse_rate = scanner.pulses_per_line() * scanner.line_rate;
  const std::vector<FlightLine> flights = {{{0, 0}, {20, 0}, 300.0, 25.0, 0},
                                           {{0, 0}, {20, 0}, 300.0, 25.0, 1}};
  NoiseSpec noise;
  noise.per_pass_offsets[0] = {0.0, 0.0, 0.01};
  noise.per_pass_offsets[1] = {0.0, 0.0, -0.01};
  const auto result = simulate(scene, scanner, flights, noise);
  const auto d = decompose_patch(whole_cloud_patch(result.cloud), result.cloud);

  const auto n = static_cast<double>(result.cloud.size());
  const double expected_c = std::sqrt(n * 1e-4 / (n - 1.0));
  CHECK(d.w == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(d.c == doctest::Approx(expected_c).epsilon(1e-6));
  REQUIRE(d.per_pass.size() == 2);
  CHECK(d.per_pass[0].h_hat == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(d.per_pass[1].h_hat == doctest::Approx(-0.01).epsilon(1e-6));
}
