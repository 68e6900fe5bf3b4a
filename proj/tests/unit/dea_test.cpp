#include <doctest.h>

#include <cmath>

#include "qcover/dea.hpp"
#include "qcover/errors.hpp"
#include "qcover/mmec.hpp"
#include "qcover/rng.hpp"
#include "support/oracles.hpp"

using namespace qcover;

namespace {

ParametricCircuit c1_circuit() {
  ParametricCircuit c;
  c.num_qubits = 1;
  c.num_params = 3;
  c.gates = {axis_rotation_gate(Axis::X, 0, 0), axis_rotation_gate(Axis::Z, 0, 1),
             axis_rotation_gate(Axis::Y, 0, 2)};
  return c;
}

ParametricCircuit double_rx_circuit() {
  // R_X(t2) R_X(t1)|0>: commuting generators, slot 1 redundant.
  ParametricCircuit c;
  c.num_qubits = 1;
  c.num_params = 2;
  c.gates = {axis_rotation_gate(Axis::X, 0, 0), axis_rotation_gate(Axis::X, 0, 1)};
  return c;
}

}  // namespace

TEST_SUITE("dea") {
  TEST_CASE("single slot Gram is [1/4]") {
    ParametricCircuit c;
    c.num_qubits = 1;
    c.num_params = 1;
    c.gates = {axis_rotation_gate(Axis::Y, 0, 0)};
    const std::vector<int> slots{0};
    const auto g = jacobian_gram(c, std::vector<double>{1.234}, slots);
    CHECK(g.entries(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
  }

  TEST_CASE("commuting generators give the singular quarter matrix") {
    const auto c = double_rx_circuit();
    const std::vector<int> slots{0, 1};
    const auto g = jacobian_gram(c, std::vector<double>{0.7, 1.9}, slots);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(g.entries(a, b) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_FALSE(is_independent(g, 1e-8));
  }

  TEST_CASE("full single-qubit circuit has invertible S3 at the reference probe") {
    const auto c = c1_circuit();
    const std::vector<int> slots{0, 1, 2};
    const std::vector<double> probe{0.3, 0.7, 1.1};
    const auto g = jacobian_gram(c, probe, slots);

    // Independent oracle: finite-difference Jacobian Gram.
    const auto fd = testing::fd_jacobian_gram(c, probe);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(g.entries(a, b) == doctest::Approx(fd(a, b)).epsilon(1e-6));

    const auto eig = linalg::symmetric_eigenvalues(g.entries);
    CHECK(eig.front() > 1e-3);
    CHECK(is_independent(g, 1e-8));
  }

  TEST_CASE("is_independent on trivial matrices") {
    GramMatrix id{linalg::Matrix::identity(3), GramKind::Jacobian};
    CHECK(is_independent(id, 1e-8));
    GramMatrix sing{linalg::Matrix(2, 2), GramKind::Jacobian};
    sing.entries(0, 0) = sing.entries(0, 1) = sing.entries(1, 0) = sing.entries(1, 1) = 0.25;
    CHECK_FALSE(is_independent(sing, 1e-8));
  }

  TEST_CASE("gram matrices are symmetric PSD") {
    Rng rng(21);
    const auto c2 = build({2, PhaseMode::WithGlobalPhase, CompileMode::NativeControls});
    std::vector<int> slots(static_cast<std::size_t>(c2.num_params));
    for (int s = 0; s < c2.num_params; ++s) slots[static_cast<std::size_t>(s)] = s;
    for (int t = 0; t < 5; ++t) {
      const auto g = jacobian_gram(c2, testing::random_theta(c2, rng), slots);
      CHECK(is_symmetric_psd(g));
    }
  }

  TEST_CASE("scan keeps all slots of the minimal single-qubit circuit") {
    const auto report = scan(c1_circuit(), std::vector<double>{0.3, 0.7, 1.1}, 1e-8);
    CHECK(report.independent_slots == std::vector<int>{0, 1, 2});
    CHECK(report.redundant_slots.empty());
  }

  TEST_CASE("scan freezes the second commuting rotation") {
    const auto report = scan(double_rx_circuit(), std::vector<double>{0.7, 1.9}, 1e-8);
    CHECK(report.independent_slots == std::vector<int>{0});
    REQUIRE(report.redundant_slots.size() == 1);
    CHECK(report.redundant_slots[0].first == 1);
    CHECK(report.redundant_slots[0].second == doctest::Approx(1.9));
  }

  TEST_CASE("scan keeps all seven slots of the two-qubit construction") {
    const auto c2 = build({2, PhaseMode::WithGlobalPhase, CompileMode::NativeControls});
    Rng rng(31);
    const auto report = scan(c2, testing::random_theta(c2, rng), 1e-8);
    CHECK(report.independent_slots.size() == 7);
    CHECK(report.redundant_slots.empty());
  }

  TEST_CASE("scan partition is stable under tolerance dithering") {
    Rng rng(77);
    for (double tol : {1e-10, 1e-8, 1e-6}) {
      const auto ok = scan(c1_circuit(), std::vector<double>{0.3, 0.7, 1.1}, tol);
      CHECK(ok.redundant_slots.empty());
      const auto red = scan(double_rx_circuit(), std::vector<double>{0.7, 1.9}, tol);
      CHECK(red.independent_slots == std::vector<int>{0});
    }
  }

  TEST_CASE("shot-mode scan reproduces the exact partition with heavy statistics") {
    int matches = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto a = scan(c1_circuit(), std::vector<double>{0.3, 0.7, 1.1}, 0.0,
                          DeaMode::Shots(1000000, seed));
      const auto b = scan(double_rx_circuit(), std::vector<double>{0.7, 1.9}, 0.0,
                          DeaMode::Shots(1000000, seed + 1000));
      if (a.redundant_slots.empty() && b.independent_slots == std::vector<int>{0} &&
          b.redundant_slots.size() == 1)
        ++matches;
    }
    CHECK(matches >= 9);
  }

  TEST_CASE("minimality certificate") {
    Rng rng(13);
    std::vector<std::vector<double>> probes;
    for (int t = 0; t < 20; ++t) probes.push_back(testing::random_theta(c1_circuit(), rng));
    const auto cert = minimality_certificate(c1_circuit(), probes);
    CHECK(cert.min_eigenvalue > 0.0);
    CHECK(cert.per_probe.size() == 20);

    std::vector<std::vector<double>> probes2;
    for (int t = 0; t < 20; ++t) probes2.push_back(testing::random_theta(double_rx_circuit(), rng));
    const auto bad = minimality_certificate(double_rx_circuit(), probes2);
    CHECK(bad.min_eigenvalue <= 1e-10);

    CHECK_THROWS_AS(minimality_certificate(c1_circuit(), {}), InputError);
  }
}
