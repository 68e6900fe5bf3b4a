#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qcover/circuit.hpp"
#include "qcover/errors.hpp"
#include "qcover/pipeline.hpp"
#include "qcover/special_functions.hpp"
#include "qcover/volume.hpp"

using namespace qcover;

namespace {
constexpr double kPi = 3.14159265358979323846;

ParametricCircuit great_circle_circuit() {
  ParametricCircuit c;
  c.num_qubits = 1;
  c.num_params = 1;
  c.gates = {axis_rotation_gate(Axis::Y, 0, 0)};
  return c;
}
}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("great-circle circuit fails the rank gate with the pi/2 floor") {
    AlphaRunConfig cfg;
    cfg.samples = 64;
    cfg.seed = 1;
    const auto report = run_alpha_estimate(great_circle_circuit(), cfg);
    CHECK_FALSE(report.rank_gate_passed);
    CHECK(report.rank == 2);
    CHECK(report.required_rank == 3);
    CHECK(report.alpha_lower_bound == doctest::Approx(kPi / 2));
    CHECK_FALSE(report.alpha.has_value());
    CHECK(report.embedding == "bloch");

    const auto text = to_json(report);
    CHECK(text.find("alpha_lower_bound") != std::string::npos);
  }

  TEST_CASE("full-sphere circuit passes and lands near the optimal radius") {
    AlphaRunConfig cfg;
    cfg.samples = 1024;
    cfg.seed = 2;
    cfg.embedding = EmbeddingChoice::Bloch;
    cfg.ranges = std::vector<SlotRange>{{0.0, kPi}, {0.0, 2.0 * kPi}};
    const auto report = run_alpha_estimate(full_bloch_circuit(), cfg);
    CHECK(report.rank_gate_passed);
    REQUIRE(report.alpha.has_value());
    const double ratio = report.alpha->value / alpha_opt(1024.0, 3);
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.8);
    CHECK(report.alpha->method == AlphaEstimate::Method::VoronoiExact);

    // Monte Carlo lower estimate of the same covering radius.
    const auto samples = pipeline_samples(full_bloch_circuit(), cfg);
    const auto mc = alpha_monte_carlo(samples.embedded, 20000, 9);
    CHECK(mc.value <= report.alpha->value + 1e-9);
    CHECK(mc.value > 0.5 * report.alpha->value);
  }

  TEST_CASE("real embedding routes to the Monte Carlo fallback") {
    AlphaRunConfig cfg;
    cfg.samples = 256;
    cfg.seed = 5;
    cfg.embedding = EmbeddingChoice::Real;
    cfg.mc_test_points = 4000;
    const auto report = run_alpha_estimate(full_bloch_circuit(), cfg);
    CHECK(report.rank_gate_passed);
    CHECK(report.ambient_dim == 4);
    REQUIRE(report.alpha.has_value());
    CHECK(report.alpha->method == AlphaEstimate::Method::MonteCarlo);
    CHECK_FALSE(report.alpha->is_upper_bound_estimate);
  }

  TEST_CASE("extended periods double the sampling box") {
    AlphaRunConfig cfg;
    cfg.samples = 512;
    cfg.seed = 8;
    cfg.extend_periods = true;
    const auto samples = pipeline_samples(great_circle_circuit(), cfg);
    double max_theta = 0.0;
    for (const auto& t : samples.thetas.thetas) max_theta = std::max(max_theta, t[0]);
    CHECK(max_theta > 2.0 * kPi);
    CHECK(max_theta < 4.0 * kPi);
  }

  TEST_CASE("reports are byte-identical across reruns") {
    AlphaRunConfig cfg;
    cfg.samples = 256;
    cfg.seed = 11;
    cfg.embedding = EmbeddingChoice::Bloch;
    cfg.ranges = std::vector<SlotRange>{{0.0, kPi}, {0.0, 2.0 * kPi}};
    auto a = run_alpha_estimate(full_bloch_circuit(), cfg);
    auto b = run_alpha_estimate(full_bloch_circuit(), cfg);
    a.runtime_seconds = b.runtime_seconds = 0.0;
    CHECK(to_json(a) == to_json(b));
  }

  TEST_CASE("convergence study fits a decaying rate") {
    const auto report = run_bloch_study({64, 128, 256, 512}, 3);
    REQUIRE(report.rows.size() == 4);
    for (std::size_t i = 1; i < report.rows.size(); ++i)
      CHECK(report.rows[i].alpha < report.rows[i - 1].alpha * 1.1);
    CHECK(report.fit.exponent < -0.3);
    CHECK(report.fit.exponent > -0.7);

    const auto csv = to_csv(report);
    CHECK(csv.find("N,alpha,alpha_opt") != std::string::npos);
    CHECK(csv.find("fit: alpha ~") != std::string::npos);
  }

  TEST_CASE("spiral study rows carry volume, bound, and Voronoi radius") {
    const auto rows = run_spiral_study({1, 2}, 4096, 1);
    REQUIRE(rows.size() == 2);
    const double e = elliptic_E(-16.0);
    CHECK(rows[1].volume == doctest::Approx(4.0 * e).epsilon(1e-6));
    CHECK(rows[1].bound == doctest::Approx(kPi / e).epsilon(1e-6));
    CHECK(rows[1].alpha_voronoi > rows[1].bound - 1e-3);
    CHECK(rows[1].alpha_voronoi < kPi / 2);
    // Denser winding covers the sphere better.
    CHECK(rows[0].alpha_voronoi > rows[1].alpha_voronoi);
  }

  TEST_CASE("init guess export writes every sample with the alpha header") {
    AlphaRunConfig cfg;
    cfg.samples = 128;
    cfg.seed = 4;
    const auto bank = export_init_guesses(spiral_circuit(4), cfg);
    CHECK(bank.kept == 128);
    CHECK_FALSE(bank.degenerate);
    CHECK(bank.csv.find("alpha=") != std::string::npos);
    // one comment header + one provenance header + 128 rows
    CHECK(std::count(bank.csv.begin(), bank.csv.end(), '\n') == 130);

    AlphaRunConfig one;
    one.samples = 1;
    const auto degenerate = export_init_guesses(spiral_circuit(4), one);
    CHECK(degenerate.degenerate);
    CHECK(degenerate.alpha == doctest::Approx(kPi));
  }

  TEST_CASE("cost filter keeps only near-optimal guesses") {
    // Diagonal observable |1><1|: cost = |<1|psi>|^2, minimized near |0>.
    const std::vector<double> diag{0.0, 1.0};
    AlphaRunConfig cfg;
    cfg.samples = 256;
    cfg.seed = 6;
    const auto all = export_init_guesses(full_bloch_circuit(), cfg);
    const auto banked = export_init_guesses(full_bloch_circuit(), cfg, &diag, 0.1);
    CHECK(banked.kept < all.kept);
    CHECK(banked.kept > 0);
    CHECK(banked.json.find("cost") != std::string::npos);
  }

  TEST_CASE("dea report serialization") {
    DeaReport report;
    report.independent_slots = {0, 2};
    report.redundant_slots = {{1, 0.25}};
    report.probe_theta = {0.1, 0.25, 0.5};
    report.tolerance = 1e-8;
    const auto table = dea_table(report);
    CHECK(table.find("redundant") != std::string::npos);
    CHECK(table.find("independent: 2, redundant: 1") != std::string::npos);
    const auto j = to_json(report, "circuit.json");
    CHECK(j.find("\"frozen_value\"") != std::string::npos);
    CHECK(j.find("circuit.json") != std::string::npos);
  }
}
