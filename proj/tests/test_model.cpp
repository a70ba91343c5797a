#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lidarqa/errors.hpp"
#include "lidarqa/model.hpp"

using namespace lidarqa;

TEST_CASE("point cloud derives pass_ids and bounds from points") {
  std::vector<Point> pts = {
      {1.0, 2.0, 3.0, 0}, {4.0, -1.0, 0.5, 3}, {-2.0, 7.0, 1.0, 0}};
  const PointCloud cloud(pts);
  CHECK(cloud.size() == 3);
  CHECK(cloud.pass_ids() == std::set<int>{0, 3});
  CHECK(cloud.bounds().min == Eigen::Vector3d(-2.0, -1.0, 0.5));
  CHECK(cloud.bounds().max == Eigen::Vector3d(4.0, 7.0, 3.0));
}

TEST_CASE("re-deriving pass_ids and bounds reproduces stored values") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  std::uniform_int_distribution<int> pass(0, 5);
  std::vector<Point> pts;
  for (int i = 0; i < 500; ++i) {
    pts.push_back({coord(rng), coord(rng), coord(rng), pass(rng)});
  }
  const PointCloud cloud(pts);

  std::set<int> expected_passes;
  Bounds3 expected_bounds;
  for (const auto& p : cloud.points()) {
    expected_passes.insert(p.pass_id);
    expected_bounds.expand(p.position());
    CHECK(cloud.bounds().contains(p.position()));
  }
  CHECK(cloud.pass_ids() == expected_passes);
  CHECK(cloud.bounds().min == expected_bounds.min);
  CHECK(cloud.bounds().max == expected_bounds.max);
}

TEST_CASE("non-finite coordinates are rejected at ingestion") {
  std::vector<Point> pts = {{1.0, std::nan(""), 0.0, 0}};
  CHECK_THROWS_AS(PointCloud{pts}, InvalidInput);
  std::vector<Point> neg = {{0.0, 0.0, 0.0, -1}};
  CHECK_THROWS_AS(PointCloud{neg}, InvalidInput);
}

TEST_CASE("classify_orientation thresholds") {
  CHECK(classify_orientation({0, 0, 1}) == Orientation::horizontal);
  CHECK(classify_orientation({1, 0, 0}) == Orientation::vertical);
  const double s = std::sin(M_PI / 4.0);
  CHECK(classify_orientation({0, s, s}) == Orientation::canted);

  // Just inside / outside the 10-degree bands.
  auto tilted = [](double deg) {
    const double r = deg * M_PI / 180.0;
    return Eigen::Vector3d(std::sin(r), 0.0, std::cos(r));
  };
  CHECK(classify_orientation(tilted(9.9)) == Orientation::horizontal);
  CHECK(classify_orientation(tilted(10.1)) == Orientation::canted);
  CHECK(classify_orientation(tilted(79.9)) == Orientation::canted);
  CHECK(classify_orientation(tilted(80.1)) == Orientation::vertical);
}

TEST_CASE("classify_orientation invariant under negation") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Eigen::Vector3d n(gauss(rng), gauss(rng), gauss(rng));
    if (n.norm() < 1e-6) continue;
    n.normalize();
    CHECK(classify_orientation(n) == classify_orientation(-n));
  }
}

TEST_CASE("classify_orientation rejects invalid normals") {
  CHECK_THROWS_AS(classify_orientation({0, 0, 2}), InvalidInput);
  CHECK_THROWS_AS(classify_orientation({0, 0, std::nan("")}), InvalidInput);
}

TEST_CASE("planar surface invariants") {
  const auto s = make_planar_surface({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 10.0,
                                     4.0, "lot");
  CHECK(s.normal == Eigen::Vector3d(0, 0, 1));
  CHECK(s.orientation_class == Orientation::horizontal);

  CHECK_THROWS_AS(
      make_planar_surface({0, 0, 0}, {1, 0, 0}, {1, 0, 0}, 1.0, 1.0, "bad"),
      InvalidInput);
  CHECK_THROWS_AS(
      make_planar_surface({0, 0, 0}, {2, 0, 0}, {0, 1, 0}, 1.0, 1.0, "bad"),
      InvalidInput);
  CHECK_THROWS_AS(
      make_planar_surface({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 0.0, 1.0, "bad"),
      InvalidInput);
}

TEST_CASE("scanner spec validation and pulses per line") {
  ScannerSpec s{400000.0, 30.0, 0.02, 100.0};
  s.validate();
  CHECK(s.pulses_per_line() == 3001);

  ScannerSpec bad = s;
  bad.angular_step_deg = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = s;
  bad.half_angle_deg = 61.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = s;
  bad.line_rate = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("flight line and wall validation") {
  FlightLine f{{0, 0}, {0, 0}, 300.0, 25.0, 0};
  CHECK_THROWS_AS(f.validate(), InvalidInput);
  f.end_xy = {100, 0};
  f.validate();

  WallTarget w{{0, 0}, {10, 0}, 0.0, 30.0, {0, 1}};
  w.validate();
  w.h_max = 0.0;
  CHECK_THROWS_AS(w.validate(), InvalidInput);
}

TEST_CASE("patch area and membership helpers") {
  Patch p;
  p.center_uv = {2.0, 2.0};
  p.side = 2.0;
  p.area = 4.0;
  p.points_by_pass[0] = {0, 1, 2};
  p.points_by_pass[4] = {3};
  CHECK(p.total_points() == 4);
  CHECK(p.contains_uv(1.0, 1.0));
  CHECK(!p.contains_uv(0.5, 2.0));
}
