#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lidarqa/density.hpp"
#include "lidarqa/errors.hpp"
#include "lidarqa/sampling.hpp"

using namespace lidarqa;

namespace {

Patch make_patch(double area, std::vector<std::pair<int, std::size_t>> counts) {
  Patch p;
  p.side = std::sqrt(area);
  p.area = area;
  std::size_t next = 0;
  for (const auto& [pass, n] : counts) {
    auto& idx = p.points_by_pass[pass];
    for (std::size_t i = 0; i < n; ++i) idx.push_back(next++);
  }
  return p;
}

}  // namespace

TEST_CASE("patch_density examples") {
  CHECK(patch_density(make_patch(4.0, {{0, 8}})) == doctest::Approx(2.0));
  CHECK(patch_density(make_patch(1.0, {})) == doctest::Approx(0.0));
}

TEST_CASE("overlap_count examples") {
  CHECK(overlap_count(make_patch(4.0, {{2, 5}})) == 1);
  CHECK(overlap_count(make_patch(4.0, {})) == 0);
  CHECK(overlap_count(make_patch(4.0, {{0, 1}, {1, 3}, {5, 2}})) == 3);
}

TEST_CASE("summarize_density of a hand-built patch set") {
  std::vector<Patch> patches = {make_patch(4.0, {{0, 8}}),
                                make_patch(4.0, {{0, 4}, {1, 12}})};
  const auto s = summarize_density(patches);
  CHECK(s.patch_count == 2);
  CHECK(s.anpd == doctest::Approx(3.0));  // mean of 2.0 and 4.0
  CHECK(s.anpd_sd == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.avg_overlapping_passes == doctest::Approx(1.5));
  CHECK(s.avg_density_per_pass == doctest::Approx(2.0));
  CHECK(!s.single_patch);
}

TEST_CASE("per-pass density matches published table arithmetic") {
  // anpd / avg passes pairs reported for horizontal and vertical blocks.
  DensitySummary h;
  h.anpd = 510.49;
  h.avg_overlapping_passes = 19.80;
  CHECK(h.anpd / h.avg_overlapping_passes == doctest::Approx(25.78).epsilon(0.001));
  DensitySummary v;
  v.anpd = 49.74;
  v.avg_overlapping_passes = 9.49;
  CHECK(v.anpd / v.avg_overlapping_passes == doctest::Approx(5.24).epsilon(0.001));
}

TEST_CASE("single patch reports zero SD and the single-patch flag") {
  std::vector<Patch> one = {make_patch(4.0, {{0, 10}})};
  const auto s = summarize_density(one);
  CHECK(s.anpd == doctest::Approx(2.5));
  CHECK(s.anpd_sd == 0.0);
  CHECK(s.single_patch);
}

TEST_CASE("summarize_density rejects an empty patch list") {
  CHECK_THROWS_AS(summarize_density(std::vector<Patch>{}), InsufficientData);
}

TEST_CASE("summarize_density is permutation invariant") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> count(0, 40);
  std::uniform_int_distribution<int> pass(0, 4);
  std::vector<Patch> patches;
  for (int i = 0; i < 50; ++i) {
    patches.push_back(make_patch(
        4.0, {{pass(rng), count(rng)}, {pass(rng) + 5, count(rng)}}));
  }
  const auto a = summarize_density(patches);
  std::shuffle(patches.begin(), patches.end(), rng);
  const auto b = summarize_density(patches);
  CHECK(a.anpd == doctest::Approx(b.anpd).epsilon(1e-12));
  CHECK(a.anpd_sd == doctest::Approx(b.anpd_sd).epsilon(1e-12));
  CHECK(a.avg_overlapping_passes ==
        doctest::Approx(b.avg_overlapping_passes).epsilon(1e-12));
}

TEST_CASE("eta_hv anchors") {
  DensitySummary h, v;
  h.anpd = 510.49;
  v.anpd = 49.74;
  CHECK(eta_hv(h, v) == doctest::Approx(10.26).epsilon(0.001));
  h.anpd = 290.96;
  v.anpd = 24.84;
  CHECK(eta_hv(h, v) == doctest::Approx(11.71).epsilon(0.001));
  h.anpd = 7.5;
  v.anpd = 7.5;
  CHECK(eta_hv(h, v) == doctest::Approx(1.0));
}

TEST_CASE("eta_hv reciprocal property") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> d(0.1, 1000.0);
  for (int i = 0; i < 100; ++i) {
    DensitySummary a, b;
    a.anpd = d(rng);
    b.anpd = d(rng);
    CHECK(eta_hv(a, b) * eta_hv(b, a) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("eta_hv rejects zero vertical density") {
  DensitySummary h, v;
  h.anpd = 10.0;
  v.anpd = 0.0;
  CHECK_THROWS_AS(eta_hv(h, v), DomainError);
}

TEST_CASE("anpd over uniform synthetic patches matches true density") {
  // Sample patches on a uniform cloud; the mean density estimator must land
  // within 3 standard errors of the true density.
  const double true_density = 80.0;
  const auto surface = make_planar_surface({0, 0, 0}, {1, 0, 0}, {0, 1, 0},
                                           30.0, 30.0, "g");
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coord(0.0, 30.0);
  std::vector<Point> pts;
  const auto n = static_cast<std::size_t>(30.0 * 30.0 * true_density);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({coord(rng), coord(rng), 0.0, 0});
  }
  const PointCloud cloud(pts);
  const auto set = collect_surface_points(cloud, surface, 0.25);
  SamplingPlan plan;
  plan.patch_count = 2000;
  plan.seed = 8;
  const auto result = sample_patches(set, surface, plan);
  const auto s = summarize_density(result.patches);
  // Centers are drawn from member points, so each patch is guaranteed one
  // member: expected density is true + 1/area (size-biased sampling).
  const double expected = true_density + 1.0 / plan.patch_area;
  const double sem = s.anpd_sd / std::sqrt(static_cast<double>(s.patch_count));
  CHECK(std::abs(s.anpd - expected) < 3.0 * sem + 1e-9);
}
