#include <doctest.h>

#include <cmath>

#include "qcover/dea.hpp"
#include "qcover/errors.hpp"
#include "qcover/geometry.hpp"
#include "qcover/rng.hpp"
#include "qcover/special_functions.hpp"
#include "qcover/volume.hpp"
#include "support/oracles.hpp"

using namespace qcover;

namespace {
constexpr double kPi = 3.14159265358979323846;

double elliptic_oracle(double m) {
  return testing::adaptive_simpson(
      [m](double t) {
        const double s = std::sin(t);
        return std::sqrt(1.0 - m * s * s);
      },
      0.0, kPi / 2.0, 1e-13);
}
}  // namespace

TEST_SUITE("volume") {
  TEST_CASE("elliptic integral against the quadrature oracle") {
    CHECK(elliptic_E(0.0) == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(elliptic_E(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (double m : {-256.0, -64.0, -16.0, -4.0, -1.0, -0.5, 0.3, 0.9, 0.999}) {
      const double want = elliptic_oracle(m);
      CHECK(std::abs(elliptic_E(m) - want) <= 1e-10 * std::abs(want));
    }
    // Reference value frozen from the oracle.
    CHECK(elliptic_E(-4.0) == doctest::Approx(2.6351835815956299).epsilon(1e-12));
    CHECK_THROWS_AS(elliptic_E(1.5), InputError);
  }

  TEST_CASE("gamma function at half integers") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-12));
    CHECK(gamma_fn(4.0) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(sphere_surface_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(sphere_surface_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    CHECK(sphere_surface_area(1) == doctest::Approx(2.0).epsilon(1e-12));  // S^0
  }

  TEST_CASE("spiral Bloch image follows the closed form") {
    for (int n : {0, 1, 3}) {
      const auto c = spiral_circuit(n);
      Rng rng(50 + static_cast<std::uint64_t>(n));
      for (int t = 0; t < 20; ++t) {
        const double theta = rng.uniform(0.0, kPi);
        const auto b = bloch_project(evaluate(c, std::vector<double>{theta}));
        const double tm = std::fmod(theta, kPi);
        CHECK(b[0] == doctest::Approx(std::sin(tm) * std::cos(2.0 * n * theta)).epsilon(1e-10));
        CHECK(b[1] == doctest::Approx(std::sin(tm) * std::sin(2.0 * n * theta)).epsilon(1e-10));
        CHECK(b[2] == doctest::Approx(std::cos(tm)).epsilon(1e-10));

        // The second half period visits the antipode of the curve point.
        const auto b2 = bloch_project(evaluate(c, std::vector<double>{theta + kPi}));
        CHECK(b2[0] == doctest::Approx(-std::sin(tm) * std::cos(2.0 * n * theta)).epsilon(1e-10));
        CHECK(b2[2] == doctest::Approx(-std::cos(tm)).epsilon(1e-10));
      }
    }
    // Named examples.
    auto b = bloch_project(evaluate(spiral_circuit(0), std::vector<double>{kPi / 2}));
    CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-12));
    b = bloch_project(evaluate(spiral_circuit(1), std::vector<double>{kPi / 2}));
    CHECK(b[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(b[1]) < 1e-12);
  }

  TEST_CASE("Bloch-gauge det g matches 1 + 4 n^2 sin^2(theta mod pi)") {
    Rng rng(60);
    for (int n : {0, 1, 2, 8}) {
      const auto c = spiral_circuit(n);
      for (int t = 0; t < 50; ++t) {
        const double theta = rng.uniform(0.0, 2.0 * kPi);
        const auto m = metric_sample(c, std::vector<double>{theta}, MetricGauge::Bloch);
        const double s = std::sin(std::fmod(theta, kPi));
        const double want = 1.0 + 4.0 * n * n * s * s;
        CHECK(std::abs(linalg::determinant(m.g.entries) - want) < 1e-9);
      }
    }
  }

  TEST_CASE("single-slot great circle has unit Bloch speed") {
    const auto c = spiral_circuit(0);
    for (double theta : {0.3, 1.9, 4.4}) {
      const auto g = metric(c, std::vector<double>{theta}, MetricGauge::Bloch);
      CHECK(g.entries(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("redundant parameters make the metric singular") {
    ParametricCircuit c;
    c.num_qubits = 1;
    c.num_params = 2;
    c.gates = {axis_rotation_gate(Axis::X, 0, 0), axis_rotation_gate(Axis::X, 0, 1)};
    Rng rng(61);
    for (int t = 0; t < 10; ++t) {
      const auto theta = testing::random_theta(c, rng);
      const auto g = metric(c, theta, MetricGauge::Hilbert);
      CHECK(std::abs(linalg::determinant(g.entries)) < 1e-14);
    }
  }

  TEST_CASE("Hilbert metric equals the Jacobian Gram matrix") {
    ParametricCircuit c;
    c.num_qubits = 1;
    c.num_params = 2;
    c.gates = {axis_rotation_gate(Axis::Y, 0, 0), axis_rotation_gate(Axis::Z, 0, 1)};
    Rng rng(62);
    const auto theta = testing::random_theta(c, rng);
    const auto g = metric(c, theta, MetricGauge::Hilbert);
    const std::vector<int> slots{0, 1};
    const auto s = jacobian_gram(c, theta, slots);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(g.entries(a, b) == doctest::Approx(s.entries(a, b)).epsilon(1e-12));
  }

  TEST_CASE("spiral volumes equal 4 E(-4 n^2)") {
    // n = 0: the circumference of a great circle.
    const auto flat = volume(spiral_circuit(0), QuadratureSpec::Trapezoid(256),
                             MetricGauge::Bloch);
    CHECK(std::abs(flat.volume - 2.0 * kPi) < 1e-9);

    const auto v2 = volume(spiral_circuit(2), QuadratureSpec::Trapezoid(4096),
                           MetricGauge::Bloch);
    const double want = 4.0 * elliptic_E(-16.0);
    CHECK(std::abs(v2.volume - want) <= 1e-6 * want);
  }

  TEST_CASE("trapezoid refinement converges") {
    const double want = 4.0 * elliptic_E(-4.0 * 64.0);
    const auto c = spiral_circuit(8);
    double prev_err = 1e300;
    for (int k : {256, 1024, 4096}) {
      const auto rep = volume(c, QuadratureSpec::Trapezoid(k), MetricGauge::Bloch);
      const double err = std::abs(rep.volume - want) / want;
      CHECK(err <= prev_err + 1e-12);
      prev_err = err;
    }
    CHECK(prev_err <= 1e-6);
  }

  TEST_CASE("zero-volume image integrates to zero") {
    ParametricCircuit c;
    c.num_qubits = 1;
    c.num_params = 1;
    // Rotation about Z fixes |0>: the image is a point.
    c.gates = {axis_rotation_gate(Axis::Z, 0, 0)};
    const auto rep = volume(c, QuadratureSpec::Trapezoid(64), MetricGauge::Bloch);
    CHECK(rep.volume == doctest::Approx(0.0));
    CHECK(rep.alpha_lower_bound == doctest::Approx(kPi));
  }

  TEST_CASE("QMC quadrature agrees with the tensor rule") {
    const auto c = spiral_circuit(1);
    const auto trap = volume(c, QuadratureSpec::Trapezoid(4096), MetricGauge::Bloch);
    const auto qmc = volume(c, QuadratureSpec::Qmc(20000, 3), MetricGauge::Bloch);
    CHECK(std::abs(qmc.volume - trap.volume) / trap.volume < 1e-3);
  }

  TEST_CASE("optimal covering radius formula") {
    CHECK(alpha_opt(1024.0, 3) == doctest::Approx(std::sqrt(3.0 * kPi / 1024.0)).epsilon(1e-12));
    CHECK(alpha_opt(1024.0, 3) == doctest::Approx(0.09594).epsilon(1e-4));
    CHECK(alpha_opt(7.0, 2) == doctest::Approx(kPi * std::sqrt(2.0) / 7.0).epsilon(1e-12));
    CHECK_THROWS_AS(alpha_opt(0.0, 3), InputError);
  }

  TEST_CASE("greedy path bounds and their ratio") {
    // alpha = pi/4 snaps to two bands: length pi/2 + 2 pi cot(pi/4).
    const auto b = greedy_path_bounds(kPi / 4.0, 1);
    CHECK(b.bands == 2);
    CHECK(b.v1 == doctest::Approx(2.0 * (kPi / 2.0 + 2.0 * kPi)).epsilon(1e-12));

    for (double alpha : {1e-2, 1e-3, 1e-4}) {
      const auto g = greedy_path_bounds(alpha, 1);
      CHECK(g.v1 / g.v2 == doctest::Approx(2.0 / kPi).epsilon(0.02));
    }

    // Degenerate single band at alpha >= pi/2.
    const auto deg = greedy_path_bounds(2.0, 1);
    CHECK(deg.bands == 1);
    CHECK(deg.v1 == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  }

  TEST_CASE("volume lower bound for the covering radius") {
    CHECK(alpha_lower_bound_from_volume(4.0, 1) == doctest::Approx(4.0 * kPi / 4.0).epsilon(1e-12));
    // Identity: bound(4 E(-4 n^2), 1) = pi / E(-4 n^2).
    for (int n : {1, 2, 4, 8}) {
      const double e = elliptic_E(-4.0 * n * n);
      CHECK(alpha_lower_bound_from_volume(4.0 * e, 1) ==
            doctest::Approx(kPi / e).epsilon(1e-12));
    }
    // The spiral n=1 bound, frozen from the oracle-checked elliptic value.
    CHECK(alpha_lower_bound_from_volume(4.0 * elliptic_E(-4.0), 1) ==
          doctest::Approx(1.1921722173479570).epsilon(1e-10));
    CHECK(alpha_lower_bound_from_volume(1e9, 1) < 1e-6);
    CHECK(alpha_lower_bound_from_volume(1e-9, 1) == doctest::Approx(kPi));
    CHECK_THROWS_AS(alpha_lower_bound_from_volume(0.0, 1), InputError);
  }
}
