#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qcover/errors.hpp"
#include "qcover/geometry.hpp"
#include "qcover/rng.hpp"
#include "qcover/voronoi.hpp"
#include "support/oracles.hpp"

using namespace qcover;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::array<double, 3>> octahedron() {
  return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

std::vector<std::array<double, 3>> cube() {
  std::vector<std::array<double, 3>> pts;
  const double s = 1.0 / std::sqrt(3.0);
  for (int a = -1; a <= 1; a += 2)
    for (int b = -1; b <= 1; b += 2)
      for (int c = -1; c <= 1; c += 2) pts.push_back({a * s, b * s, c * s});
  return pts;
}

std::vector<std::array<double, 3>> tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  return {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
}

std::vector<std::array<double, 3>> random_sphere_points(int n, Rng& rng) {
  std::vector<std::array<double, 3>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x, y, z, nrm;
    do {
      x = rng.normal();
      y = rng.normal();
      z = rng.normal();
      nrm = std::sqrt(x * x + y * y + z * z);
    } while (nrm < 1e-6);
    pts.push_back({x / nrm, y / nrm, z / nrm});
  }
  return pts;
}

EmbeddedSet as_embedded(const std::vector<std::array<double, 3>>& pts) {
  EmbeddedSet set;
  set.ambient_dim = 3;
  set.basis_rank = 3;
  set.embedding = EmbeddingKind::Bloch;
  for (const auto& p : pts) set.points.push_back({p[0], p[1], p[2]});
  return set;
}

}  // namespace

TEST_SUITE("voronoi") {
  TEST_CASE("octahedron: eight facets dual to the cube corners") {
    const auto sv = spherical_delaunay(octahedron());
    CHECK(sv.delaunay_facets.size() == 8);
    CHECK(sv.voronoi_vertices.size() == 8);
    const double want = 1.0 / std::sqrt(3.0);
    for (const auto& v : sv.voronoi_vertices) {
      CHECK(std::abs(std::abs(v[0]) - want) < 1e-12);
      CHECK(std::abs(std::abs(v[1]) - want) < 1e-12);
      CHECK(std::abs(std::abs(v[2]) - want) < 1e-12);
    }
    validate(sv);
    const auto est = alpha_from_voronoi(sv);
    CHECK(est.value == doctest::Approx(std::acos(1.0 / std::sqrt(3.0))).epsilon(1e-12));
  }

  TEST_CASE("cube corners: coplanar quads merge into six face vertices") {
    const auto sv = spherical_delaunay(cube());
    CHECK(sv.delaunay_facets.size() == 12);  // six quads split in two
    CHECK(sv.voronoi_vertices.size() == 6);  // merged to the face centers
    for (const auto& v : sv.voronoi_vertices) {
      int axis_hits = 0;
      for (int k = 0; k < 3; ++k)
        if (std::abs(std::abs(v[static_cast<std::size_t>(k)]) - 1.0) < 1e-9) ++axis_hits;
      CHECK(axis_hits == 1);
    }
    validate(sv);
    const auto est = alpha_from_voronoi(sv);
    CHECK(est.value == doctest::Approx(std::acos(1.0 / std::sqrt(3.0))).epsilon(1e-9));
  }

  TEST_CASE("tetrahedron: vertices at the antipodes of the corners") {
    const auto sv = spherical_delaunay(tetrahedron());
    CHECK(sv.delaunay_facets.size() == 4);
    CHECK(sv.voronoi_vertices.size() == 4);
    validate(sv);
    const auto est = alpha_from_voronoi(sv);
    CHECK(est.value == doctest::Approx(std::acos(1.0 / 3.0)).epsilon(1e-12));
  }

  TEST_CASE("duplicate points are rejected") {
    auto pts = octahedron();
    pts.push_back({1.0, 0.0, 0.0});
    CHECK_THROWS_AS(spherical_delaunay(pts), InputError);
  }

  TEST_CASE("degenerate span is rejected") {
    std::vector<std::array<double, 3>> ring;
    for (int k = 0; k < 8; ++k)
      ring.push_back({std::cos(kPi * k / 4.0), std::sin(kPi * k / 4.0), 0.0});
    CHECK_THROWS_AS(spherical_delaunay(ring), NumericError);
  }

  TEST_CASE("random sets: structure checks and the upper-bound property") {
    Rng rng(2718);
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 4 + static_cast<int>(rng.below(200));
      const auto pts = random_sphere_points(n, rng);
      SphericalVoronoi sv;
      try {
        sv = spherical_delaunay(pts);
      } catch (const NumericError&) {
        continue;  // tiny random sets can be near-degenerate
      }
      validate(sv);
      const auto est = alpha_from_voronoi(sv);

      // No point of the sphere is farther than alpha from the samples.
      for (int t = 0; t < 500; ++t) {
        const auto probe = random_sphere_points(1, rng)[0];
        double best = kPi;
        for (const auto& s : pts) {
          double d = 0.0;
          for (int k = 0; k < 3; ++k) d += probe[static_cast<std::size_t>(k)] * s[static_cast<std::size_t>(k)];
          best = std::min(best, std::acos(std::clamp(d, -1.0, 1.0)));
        }
        CHECK(best <= est.value + 1e-9);
      }
    }
  }

  TEST_CASE("monte carlo covering radius") {
    // A single sample covers the sphere within pi.
    EmbeddedSet single;
    single.ambient_dim = 3;
    single.basis_rank = 1;
    single.points = {{0.0, 0.0, 1.0}};
    const auto est = alpha_monte_carlo(single, 20000, 1);
    CHECK(est.value > kPi - 0.05);
    CHECK(est.value <= kPi);
    CHECK_FALSE(est.is_upper_bound_estimate);

    // Octahedron: approaches the exact covering radius from below.
    const auto oct = as_embedded(octahedron());
    const auto oct_est = alpha_monte_carlo(oct, 1000000, 7);
    const double want = std::acos(1.0 / std::sqrt(3.0));
    CHECK(oct_est.value <= want + 1e-9);
    CHECK(oct_est.value > want - 0.01);

    // Great circle samples: poles are pi/2 away.
    std::vector<std::array<double, 3>> circle;
    for (int k = 0; k < 64; ++k)
      circle.push_back({std::cos(2.0 * kPi * k / 64), std::sin(2.0 * kPi * k / 64), 0.0});
    const auto circle_est = alpha_monte_carlo(as_embedded(circle), 100000, 3);
    CHECK(circle_est.value >= kPi / 2 - 0.02);
    CHECK(circle_est.value <= kPi / 2 + 1e-9);
  }

  TEST_CASE("latitude bands: exactly cocircular rings survive construction") {
    for (int n : {20, 100, 400}) {
      const auto pts = latitude_band_points(n, 3);
      std::vector<std::array<double, 3>> p3;
      for (const auto& p : pts) p3.push_back({p[0], p[1], p[2]});
      const auto sv = spherical_delaunay(p3);
      validate(sv, 1e-9);
      // Cocircular splits merge, so there are at most as many vertices as facets.
      CHECK(sv.voronoi_vertices.size() <= sv.delaunay_facets.size());
      const auto est = alpha_from_voronoi(sv);
      const double d1 = kPi / std::llround(kPi / std::sqrt(4.0 * kPi / n));
      CHECK(est.value < 1.1 * d1);  // quasi-equidistant points cover well
      CHECK(est.value > 0.3 * d1);
    }
  }

  TEST_CASE("sparse clustered sets: covering radius peaks off the vertices") {
    // Two tight clusters; the farthest point of the sphere sits in the
    // interior of a Voronoi edge, which the mid-point completion captures.
    Rng rng(999);
    std::vector<std::array<double, 3>> pts;
    for (int k = 0; k < 4; ++k)
      pts.push_back({std::cos(0.05 * k), std::sin(0.05 * k), 0.0});
    for (int k = 0; k < 4; ++k) {
      const double a = 0.05 * k;
      pts.push_back({0.0, std::cos(a) / std::sqrt(2.0), std::sqrt(1.0 - 0.5 * std::cos(a) * std::cos(a))});
    }
    // renormalize defensively
    for (auto& p : pts) {
      const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
      p = {p[0] / n, p[1] / n, p[2] / n};
    }
    const auto est = alpha_from_voronoi(spherical_delaunay(pts));
    const auto mc = alpha_monte_carlo(as_embedded(pts), 200000, 5);
    CHECK(mc.value <= est.value + 1e-9);
    CHECK(est.value - mc.value < 0.01);  // MC approaches the true radius
  }

  TEST_CASE("monte carlo never exceeds the exact Voronoi value") {
    Rng rng(31415);
    for (int trial = 0; trial < 5; ++trial) {
      const auto pts = random_sphere_points(64, rng);
      const auto exact = alpha_from_voronoi(spherical_delaunay(pts));
      const auto mc = alpha_monte_carlo(as_embedded(pts), 20000, trial);
      CHECK(mc.value <= exact.value + 1e-9);
    }
  }

  TEST_CASE("rate fits") {
    std::vector<std::pair<double, double>> series;
    for (int k = 6; k <= 13; ++k) {
      const double n = std::pow(2.0, k);
      series.emplace_back(n, 2.0 * std::pow(n, -0.5));
    }
    const auto fit = fit_rate(series);
    CHECK(fit.prefactor == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-12));

    std::vector<std::pair<double, double>> constant;
    for (int k = 1; k <= 4; ++k) constant.emplace_back(std::pow(2.0, k), 0.7);
    CHECK(fit_rate(constant).exponent == doctest::Approx(0.0).epsilon(1e-12));

    std::vector<std::pair<double, double>> bad{{10.0, 0.1}, {20.0, -0.1}, {40.0, 0.2}};
    CHECK_THROWS_AS(fit_rate(bad), InputError);
    std::vector<std::pair<double, double>> few{{10.0, 0.1}, {20.0, 0.05}};
    CHECK_THROWS_AS(fit_rate(few), InputError);
  }
}
