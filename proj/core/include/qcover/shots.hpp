#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qcover/circuit.hpp"

namespace qcover {

/// A request to estimate one real inner product by ancilla interferometry.
/// DerivativePair measures Re<gamma_m, gamma_n> for two parameter slots of
/// the base circuit; CircuitPair measures Re<C1(theta), C2(other_theta)> for
/// two circuits on the same qubit count with the same initial state.
struct InterferenceJob {
  struct DerivativePair {
    int m = 0;
    int n = 0;
  };
  struct CircuitPair {
    ParametricCircuit other;
    std::vector<double> other_theta;
  };

  ParametricCircuit base;
  std::vector<double> theta;
  std::variant<DerivativePair, CircuitPair> mode = DerivativePair{};
  long long shots = 1;
  std::uint64_t rng_seed = 0;
};

/// Builds the (Q+1)-qubit interference circuit: the ancilla (qubit 0) is put
/// in (|0>+|1>)/sqrt(2), the two branch preparations are conditioned on the
/// ancilla value, and a final Hadamard interferes them. The output state is
///   (|0> (b0 + b1) + |1> (b0 - b1)) / 2
/// where b0, b1 are the two branch states. In derivative mode the additions
/// relative to the base circuit are exactly one ancilla and six gates: two
/// Hadamards, two X gates, and two controlled generators.
ParametricCircuit build_interference_circuit(const InterferenceJob& job);

/// Parameter vector the interference circuit expects for this job
/// (base theta, plus the other circuit's theta in CircuitPair mode).
std::vector<double> interference_theta(const InterferenceJob& job);

/// Exact marginal probability of measuring the ancilla in |0>:
///   prob = (1 + Re<b0, b1>) / 2.
double prob_anc0_exact(const InterferenceJob& job);

struct ShotEstimate {
  double estimate = 0.0;   // 2 * frequency(anc = 0) - 1
  double std_error = 0.0;  // 2 * sqrt(p_hat (1 - p_hat) / shots)
};

/// Draws `shots` Bernoulli samples of the ancilla outcome and returns the
/// inner-product estimate with its binomial standard error. Deterministic
/// for a fixed rng_seed.
ShotEstimate estimate_real_inner(const InterferenceJob& job);

}  // namespace qcover
