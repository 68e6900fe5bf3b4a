#include "qcover/shots.hpp"

#include <cmath>
#include <string>

#include "qcover/errors.hpp"
#include "qcover/rng.hpp"

namespace qcover {

namespace {

constexpr int kAncilla = 0;

Gate shift_and_control(Gate g, bool on_one) {
  for (PauliTerm& t : g.gen.paulis) ++t.qubit;
  for (ControlBit& c : g.gen.controls) ++c.qubit;
  if (g.kind == Gate::Kind::Hadamard) ++g.target;
  g.gen.controls.push_back({kAncilla, on_one});
  return g;
}

Gate shift_only(Gate g) {
  for (PauliTerm& t : g.gen.paulis) ++t.qubit;
  for (ControlBit& c : g.gen.controls) ++c.qubit;
  if (g.kind == Gate::Kind::Hadamard) ++g.target;
  return g;
}

Gate shift_offset_slots(Gate g, int offset) {
  g = shift_and_control(std::move(g), true);
  if (g.kind == Gate::Kind::Rotation && g.slot) *g.slot += offset;
  return g;
}

int find_single_driving_gate(const ParametricCircuit& c, int slot) {
  detail::require(slot >= 0 && slot < c.num_params, "interference slot out of range");
  int found = -1;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (g.kind == Gate::Kind::Rotation && g.slot && *g.slot == slot) {
      detail::require(found < 0, "interference slot drives several rotation gates");
      detail::require(g.multiplier == 1.0, "interference slot has non-unit multiplier");
      found = static_cast<int>(i);
    }
  }
  detail::require(found >= 0, "interference slot not driven by any rotation");
  return found;
}

StateVector combined_initial(const ParametricCircuit& base) {
  const StateVector init =
      base.initial_state ? *base.initial_state : basis_state(base.num_qubits);
  StateVector out;
  out.amplitudes.assign(std::size_t{2} << base.num_qubits, Complex{0.0, 0.0});
  // Ancilla is the most significant bit; anc = 0 block holds the base init.
  for (std::size_t k = 0; k < init.amplitudes.size(); ++k)
    out.amplitudes[k] = init.amplitudes[k];
  return out;
}

}  // namespace

ParametricCircuit build_interference_circuit(const InterferenceJob& job) {
  detail::require(job.shots >= 1, "shots must be >= 1");
  validate(job.base);
  detail::require(static_cast<int>(job.theta.size()) == job.base.num_params,
                  "job theta has wrong length");

  ParametricCircuit out;
  out.num_qubits = job.base.num_qubits + 1;
  out.initial_state = combined_initial(job.base);

  if (const auto* dp = std::get_if<InterferenceJob::DerivativePair>(&job.mode)) {
    const int gm = find_single_driving_gate(job.base, dp->m);
    const int gn = find_single_driving_gate(job.base, dp->n);

    out.num_params = job.base.num_params;
    out.param_periods = job.base.param_periods;

    out.gates.push_back(hadamard_gate(kAncilla));
    for (std::size_t i = 0; i < job.base.gates.size(); ++i) {
      out.gates.push_back(shift_only(job.base.gates[i]));
      if (static_cast<int>(i) == gm) {
        // X_anc C G_m X_anc: the controlled generator fires when anc = 0.
        Gate cg = job.base.gates[static_cast<std::size_t>(gm)];
        cg.kind = Gate::Kind::PauliApply;
        cg.slot.reset();
        out.gates.push_back(x_gate(kAncilla));
        out.gates.push_back(shift_and_control(std::move(cg), true));
        out.gates.push_back(x_gate(kAncilla));
      }
      if (static_cast<int>(i) == gn) {
        Gate cg = job.base.gates[static_cast<std::size_t>(gn)];
        cg.kind = Gate::Kind::PauliApply;
        cg.slot.reset();
        out.gates.push_back(shift_and_control(std::move(cg), true));
      }
    }
    out.gates.push_back(hadamard_gate(kAncilla));
  } else {
    const auto& cp = std::get<InterferenceJob::CircuitPair>(job.mode);
    validate(cp.other);
    detail::require(cp.other.num_qubits == job.base.num_qubits,
                    "circuit pair must act on the same qubit count");
    detail::require(static_cast<int>(cp.other_theta.size()) == cp.other.num_params,
                    "other_theta has wrong length");
    const StateVector init_a =
        job.base.initial_state ? *job.base.initial_state : basis_state(job.base.num_qubits);
    const StateVector init_b =
        cp.other.initial_state ? *cp.other.initial_state : basis_state(cp.other.num_qubits);
    double diff = 0.0;
    for (std::size_t k = 0; k < init_a.amplitudes.size(); ++k)
      diff += std::abs(init_a.amplitudes[k] - init_b.amplitudes[k]);
    detail::require(diff < 1e-10, "circuit pair must share the initial state");

    out.num_params = job.base.num_params + cp.other.num_params;
    out.param_periods.reserve(static_cast<std::size_t>(out.num_params));
    for (int s = 0; s < job.base.num_params; ++s)
      out.param_periods.push_back(job.base.period(s));
    for (int s = 0; s < cp.other.num_params; ++s)
      out.param_periods.push_back(cp.other.period(s));

    out.gates.push_back(hadamard_gate(kAncilla));
    for (const Gate& g : job.base.gates)
      out.gates.push_back(shift_and_control(g, false));  // branch anc = 0
    for (const Gate& g : cp.other.gates)
      out.gates.push_back(shift_offset_slots(g, job.base.num_params));  // branch anc = 1
    out.gates.push_back(hadamard_gate(kAncilla));
  }

  validate(out);
  return out;
}

std::vector<double> interference_theta(const InterferenceJob& job) {
  std::vector<double> theta = job.theta;
  if (const auto* cp = std::get_if<InterferenceJob::CircuitPair>(&job.mode))
    theta.insert(theta.end(), cp->other_theta.begin(), cp->other_theta.end());
  return theta;
}

double prob_anc0_exact(const InterferenceJob& job) {
  const ParametricCircuit circuit = build_interference_circuit(job);
  const std::vector<double> theta = interference_theta(job);
  const StateVector state = evaluate(circuit, theta);
  const std::size_t half = state.amplitudes.size() / 2;
  double p = 0.0;
  for (std::size_t k = 0; k < half; ++k) p += std::norm(state.amplitudes[k]);
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  return p;
}

ShotEstimate estimate_real_inner(const InterferenceJob& job) {
  detail::require(job.shots >= 1, "shots must be >= 1");
  const double p = prob_anc0_exact(job);
  Rng rng(job.rng_seed);
  long long hits = 0;
  for (long long s = 0; s < job.shots; ++s)
    if (rng.uniform() < p) ++hits;
  const double p_hat = static_cast<double>(hits) / static_cast<double>(job.shots);
  ShotEstimate est;
  est.estimate = 2.0 * p_hat - 1.0;
  est.std_error = 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(job.shots));
  return est;
}

}  // namespace qcover
