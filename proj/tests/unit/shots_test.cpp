#include <doctest.h>

#include <cmath>

#include "qcover/circuit.hpp"
#include "qcover/errors.hpp"
#include "qcover/mmec.hpp"
#include "qcover/rng.hpp"
#include "qcover/shots.hpp"
#include "support/oracles.hpp"

using namespace qcover;

namespace {

ParametricCircuit eq13_circuit() {
  ParametricCircuit c;
  c.num_qubits = 1;
  c.num_params = 2;
  c.gates = {axis_rotation_gate(Axis::Y, 0, 0), axis_rotation_gate(Axis::Z, 0, 1)};
  return c;
}

}  // namespace

TEST_SUITE("shots") {
  TEST_CASE("equal branches give ancilla probability one") {
    InterferenceJob job;
    job.base = eq13_circuit();
    job.theta = {0.8, 1.3};
    job.mode = InterferenceJob::DerivativePair{1, 1};
    CHECK(prob_anc0_exact(job) == doctest::Approx(1.0).epsilon(1e-12));

    job.mode = InterferenceJob::CircuitPair{eq13_circuit(), {0.8, 1.3}};
    CHECK(prob_anc0_exact(job) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("interference circuit output equals the branch superposition") {
    InterferenceJob job;
    job.base = eq13_circuit();
    job.theta = {0.9, 2.1};
    job.mode = InterferenceJob::DerivativePair{0, 1};

    const auto circuit = build_interference_circuit(job);
    CHECK(circuit.num_qubits == job.base.num_qubits + 1);
    CHECK(circuit.gates.size() == job.base.gates.size() + 6);
    // The additions are two Hadamards, two X gates, two controlled generators.
    int hadamards = 0, plain_x = 0, controlled_gens = 0;
    for (const auto& g : circuit.gates) {
      if (g.kind == Gate::Kind::Hadamard) ++hadamards;
      if (g.kind == Gate::Kind::PauliApply && g.gen.controls.empty()) ++plain_x;
      if (g.kind == Gate::Kind::PauliApply && !g.gen.controls.empty()) ++controlled_gens;
    }
    CHECK(hadamards == 2);
    CHECK(plain_x == 2);
    CHECK(controlled_gens == 2);

    const auto state = evaluate(circuit, interference_theta(job));
    const auto g0 = derivative_state(job.base, job.theta, 0);
    const auto g1 = derivative_state(job.base, job.theta, 1);
    // (|0>(g0+g1) + |1>(g0-g1)) / 2
    double err = 0.0;
    const std::size_t half = state.amplitudes.size() / 2;
    for (std::size_t k = 0; k < half; ++k) {
      err = std::max(err, std::abs(state.amplitudes[k] -
                                   0.5 * (g0.amplitudes[k] + g1.amplitudes[k])));
      err = std::max(err, std::abs(state.amplitudes[half + k] -
                                   0.5 * (g0.amplitudes[k] - g1.amplitudes[k])));
    }
    CHECK(err < 1e-12);
  }

  TEST_CASE("ancilla probability equals (1 + Re<gm,gn>)/2 for all pairs") {
    Rng rng(11);
    for (const auto& circuit :
         {eq13_circuit(), build({2, PhaseMode::WithGlobalPhase, CompileMode::NativeControls})}) {
      const auto theta = testing::random_theta(circuit, rng);
      for (int m = 0; m < circuit.num_params; ++m)
        for (int n = m; n < circuit.num_params; ++n) {
          InterferenceJob job;
          job.base = circuit;
          job.theta = theta;
          job.mode = InterferenceJob::DerivativePair{m, n};
          const double want =
              0.5 * (1.0 + real_inner(derivative_state(circuit, theta, m),
                                      derivative_state(circuit, theta, n)));
          CHECK(prob_anc0_exact(job) == doctest::Approx(want).epsilon(1e-10));
        }
    }
  }

  TEST_CASE("circuit pair mode measures Re<C1, C2>") {
    InterferenceJob job;
    job.base = eq13_circuit();
    job.theta = {0.4, 0.9};
    job.mode = InterferenceJob::CircuitPair{eq13_circuit(), {2.2, 5.1}};
    const double want = 0.5 * (1.0 + real_inner(evaluate(job.base, job.theta),
                                                evaluate(eq13_circuit(),
                                                         std::vector<double>{2.2, 5.1})));
    CHECK(prob_anc0_exact(job) == doctest::Approx(want).epsilon(1e-12));
  }

  TEST_CASE("orthogonal derivative branches interfere to probability one half") {
    // R_Y |0> at theta = 0: gamma0 = i|1>, and its own slot pairs to 1.
    ParametricCircuit c;
    c.num_qubits = 1;
    c.num_params = 2;
    c.gates = {axis_rotation_gate(Axis::Y, 0, 0), axis_rotation_gate(Axis::Z, 0, 1)};
    InterferenceJob job;
    job.base = c;
    job.theta = {0.0, 0.0};
    job.mode = InterferenceJob::DerivativePair{0, 1};
    // gamma_Y = Y|0> = i|1>, gamma_Z = Z|0> = |0>: Re<i|1>, |0>> = 0.
    CHECK(prob_anc0_exact(job) == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("invalid jobs are rejected") {
    InterferenceJob job;
    job.base = eq13_circuit();
    job.theta = {0.1, 0.2};
    job.mode = InterferenceJob::DerivativePair{0, 5};  // slot out of range
    CHECK_THROWS_AS(build_interference_circuit(job), InputError);

    job.mode = InterferenceJob::DerivativePair{0, 1};
    job.shots = 0;
    CHECK_THROWS_AS(estimate_real_inner(job), InputError);

    // Circuit pair with mismatched initial states.
    auto other = eq13_circuit();
    other.initial_state = basis_state(1, 1);
    job.shots = 1;
    job.mode = InterferenceJob::CircuitPair{other, {0.3, 0.4}};
    CHECK_THROWS_AS(build_interference_circuit(job), InputError);
  }

  TEST_CASE("estimator is deterministic and unbiased at p = 1") {
    InterferenceJob job;
    job.base = eq13_circuit();
    job.theta = {1.0, 1.0};
    job.mode = InterferenceJob::DerivativePair{0, 0};
    job.shots = 512;
    job.rng_seed = 99;
    const auto a = estimate_real_inner(job);
    const auto b = estimate_real_inner(job);
    CHECK(a.estimate == 1.0);
    CHECK(a.std_error == 0.0);
    CHECK(a.estimate == b.estimate);
  }

  TEST_CASE("zero inner product estimated within the binomial band") {
    InterferenceJob job;
    job.base = eq13_circuit();
    job.theta = {0.0, 0.0};
    job.mode = InterferenceJob::DerivativePair{0, 1};  // exact value 0
    job.shots = 10000;
    job.rng_seed = 4242;
    const auto est = estimate_real_inner(job);
    CHECK(std::abs(est.estimate) < 0.06);
  }

  TEST_CASE("coverage: |estimate - exact| <= 4 std errors in nearly all trials") {
    InterferenceJob job;
    job.base = eq13_circuit();
    job.mode = InterferenceJob::DerivativePair{0, 1};
    job.shots = 2000;
    Rng rng(5);
    int ok = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
      job.theta = testing::random_theta(job.base, rng);
      job.rng_seed = mix_seed(17, static_cast<std::uint64_t>(t));
      const double exact = 2.0 * prob_anc0_exact(job) - 1.0;
      const auto est = estimate_real_inner(job);
      if (std::abs(est.estimate - exact) <= 4.0 * std::max(est.std_error, 1e-12)) ++ok;
    }
    CHECK(ok >= trials - 3);
  }
}
