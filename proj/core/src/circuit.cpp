#include "qcover/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qcover/errors.hpp"

namespace qcover {

namespace {

constexpr double kUnitNormTol = 1e-12;

std::size_t bit_mask(int num_qubits, int qubit) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

void check_qubit(int q, int num_qubits, const char* what) {
  if (q < 0 || q >= num_qubits)
    throw InputError(std::string(what) + ": qubit index " + std::to_string(q) +
                     " out of range for " + std::to_string(num_qubits) + " qubits");
}

}  // namespace

Gate rotation_gate(Generator gen, int slot, double multiplier) {
  Gate g;
  g.kind = Gate::Kind::Rotation;
  g.gen = std::move(gen);
  g.slot = slot;
  g.multiplier = multiplier;
  return g;
}

Gate fixed_rotation_gate(Generator gen, double angle) {
  Gate g;
  g.kind = Gate::Kind::Rotation;
  g.gen = std::move(gen);
  g.angle = angle;
  return g;
}

Gate pauli_gate(Generator gen) {
  Gate g;
  g.kind = Gate::Kind::PauliApply;
  g.gen = std::move(gen);
  return g;
}

Gate hadamard_gate(int qubit, std::vector<ControlBit> controls) {
  Gate g;
  g.kind = Gate::Kind::Hadamard;
  g.target = qubit;
  g.gen.controls = std::move(controls);
  return g;
}

Gate x_gate(int qubit) { return pauli_gate({{{qubit, Axis::X}}, {}}); }

Gate cnot_gate(int control, int target) {
  return pauli_gate({{{target, Axis::X}}, {{control, true}}});
}

Gate toffoli_gate(int control1, int control2, int target) {
  return pauli_gate({{{target, Axis::X}}, {{control1, true}, {control2, true}}});
}

Gate axis_rotation_gate(Axis axis, int qubit, int slot, double multiplier,
                        std::vector<ControlBit> controls) {
  return rotation_gate({{{qubit, axis}}, std::move(controls)}, slot, multiplier);
}

Gate fixed_axis_rotation_gate(Axis axis, int qubit, double angle,
                              std::vector<ControlBit> controls) {
  return fixed_rotation_gate({{{qubit, axis}}, std::move(controls)}, angle);
}

int StateVector::num_qubits() const {
  int q = 0;
  while ((std::size_t{1} << q) < amplitudes.size()) ++q;
  return q;
}

StateVector basis_state(int num_qubits, std::size_t index) {
  StateVector s;
  s.amplitudes.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  s.amplitudes.at(index) = Complex{1.0, 0.0};
  return s;
}

double norm(const StateVector& s) {
  double sum = 0.0;
  for (const Complex& a : s.amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

Complex inner(const StateVector& a, const StateVector& b) {
  detail::require(a.amplitudes.size() == b.amplitudes.size(),
                  "inner: state dimensions differ");
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < a.amplitudes.size(); ++k)
    sum += std::conj(a.amplitudes[k]) * b.amplitudes[k];
  return sum;
}

double real_inner(const StateVector& a, const StateVector& b) { return inner(a, b).real(); }

double ParametricCircuit::period(int slot) const {
  if (slot < 0 || slot >= num_params) throw InputError("period: slot out of range");
  if (param_periods.empty()) return 6.283185307179586476925286766559;
  return param_periods[static_cast<std::size_t>(slot)];
}

void validate(const ParametricCircuit& circuit) {
  detail::require(circuit.num_qubits >= 1, "circuit must have at least one qubit");
  detail::require(circuit.num_params >= 0, "negative parameter count");
  if (!circuit.param_periods.empty()) {
    detail::require(static_cast<int>(circuit.param_periods.size()) == circuit.num_params,
                    "param_periods size does not match num_params");
    for (double p : circuit.param_periods)
      detail::require(p > 0.0 && std::isfinite(p), "param periods must be positive and finite");
  }

  std::vector<char> slot_used(static_cast<std::size_t>(circuit.num_params), 0);
  for (const Gate& g : circuit.gates) {
    if (g.kind == Gate::Kind::Hadamard) {
      check_qubit(g.target, circuit.num_qubits, "hadamard");
    } else {
      detail::require(!g.gen.paulis.empty(), "generator needs at least one Pauli factor");
      int prev = -1;
      for (const PauliTerm& t : g.gen.paulis) {
        check_qubit(t.qubit, circuit.num_qubits, "generator");
        detail::require(t.qubit > prev, "Pauli factors must have strictly increasing qubits");
        prev = t.qubit;
      }
    }
    for (const ControlBit& c : g.gen.controls) {
      check_qubit(c.qubit, circuit.num_qubits, "control");
      for (const PauliTerm& t : g.gen.paulis)
        detail::require(c.qubit != t.qubit, "control qubit overlaps generator support");
      if (g.kind == Gate::Kind::Hadamard)
        detail::require(c.qubit != g.target, "control qubit overlaps Hadamard target");
    }
    if (g.kind == Gate::Kind::Rotation && g.slot) {
      detail::require(*g.slot >= 0 && *g.slot < circuit.num_params,
                      "rotation references slot out of range");
      slot_used[static_cast<std::size_t>(*g.slot)] = 1;
    }
  }
  for (int s = 0; s < circuit.num_params; ++s)
    detail::require(slot_used[static_cast<std::size_t>(s)] != 0,
                    "parameter slot " + std::to_string(s) + " is not driven by any rotation");

  if (circuit.initial_state) {
    detail::require(circuit.initial_state->amplitudes.size() ==
                        (std::size_t{1} << circuit.num_qubits),
                    "initial state dimension does not match qubit count");
    detail::require(std::abs(norm(*circuit.initial_state) - 1.0) < kUnitNormTol,
                    "initial state is not unit norm");
  }
}

namespace detail {

namespace {

struct GeneratorAction {
  std::size_t flip = 0;           // XOR mask over amplitude indices
  std::size_t control_mask = 0;   // bits that must match control_value
  std::size_t control_value = 0;
  std::size_t y_mask = 0;         // Y factors (phase depends on bit, flips)
  std::size_t z_mask = 0;         // Z factors (sign depends on bit)
};

GeneratorAction compile_action(const Generator& gen, int num_qubits) {
  GeneratorAction act;
  for (const PauliTerm& t : gen.paulis) {
    const std::size_t m = bit_mask(num_qubits, t.qubit);
    switch (t.axis) {
      case Axis::X: act.flip |= m; break;
      case Axis::Y: act.flip |= m; act.y_mask |= m; break;
      case Axis::Z: act.z_mask |= m; break;
    }
  }
  for (const ControlBit& c : gen.controls) {
    const std::size_t m = bit_mask(num_qubits, c.qubit);
    act.control_mask |= m;
    if (c.on_one) act.control_value |= m;
  }
  return act;
}

// Phase of G|k> = phase * |k ^ flip>:  Y gives +i on bit 0 and -i on bit 1,
// Z gives -1 on bit 1.
Complex generator_phase(const GeneratorAction& act, std::size_t k) {
  const int y_ones = std::popcount(k & act.y_mask);
  const int y_total = std::popcount(act.y_mask);
  const int z_ones = std::popcount(k & act.z_mask);
  // i^(y_total) * (-1)^(y_ones + z_ones)
  static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex phase = i_pow[y_total & 3];
  if ((y_ones + z_ones) & 1) phase = -phase;
  return phase;
}

}  // namespace

void apply_generator(std::vector<Complex>& amps, int num_qubits, const Generator& gen) {
  const GeneratorAction act = compile_action(gen, num_qubits);
  const std::size_t dim = amps.size();
  if (act.flip == 0) {
    for (std::size_t k = 0; k < dim; ++k) {
      if ((k & act.control_mask) != act.control_value) continue;
      amps[k] *= generator_phase(act, k);
    }
    return;
  }
  for (std::size_t k = 0; k < dim; ++k) {
    const std::size_t j = k ^ act.flip;
    if (k >= j) continue;  // visit each pair once
    if ((k & act.control_mask) != act.control_value) continue;
    const Complex pk = generator_phase(act, k);
    const Complex pj = generator_phase(act, j);
    const Complex ak = amps[k];
    amps[k] = pj * amps[j];
    amps[j] = pk * ak;
  }
}

void apply_gate(std::vector<Complex>& amps, int num_qubits, const Gate& gate,
                std::span<const double> theta) {
  const std::size_t dim = amps.size();
  switch (gate.kind) {
    case Gate::Kind::PauliApply:
      apply_generator(amps, num_qubits, gate.gen);
      return;
    case Gate::Kind::Hadamard: {
      const GeneratorAction act = compile_action(gate.gen, num_qubits);
      const std::size_t tm = bit_mask(num_qubits, gate.target);
      const double inv_sqrt2 = 0.70710678118654752440084436210485;
      for (std::size_t k = 0; k < dim; ++k) {
        if (k & tm) continue;
        if ((k & act.control_mask) != act.control_value) continue;
        const std::size_t j = k | tm;
        const Complex lo = amps[k];
        const Complex hi = amps[j];
        amps[k] = (lo + hi) * inv_sqrt2;
        amps[j] = (lo - hi) * inv_sqrt2;
      }
      return;
    }
    case Gate::Kind::Rotation: {
      double angle = gate.angle;
      if (gate.slot) {
        if (*gate.slot < 0 || static_cast<std::size_t>(*gate.slot) >= theta.size())
          throw InputError("rotation slot out of range of parameter vector");
        angle = gate.multiplier * theta[static_cast<std::size_t>(*gate.slot)];
      }
      if (!std::isfinite(angle)) throw InputError("non-finite rotation angle");
      const double c = std::cos(0.5 * angle);
      const double s = std::sin(0.5 * angle);
      const Complex mis{0.0, -s};  // -i sin(angle/2)
      const GeneratorAction act = compile_action(gate.gen, num_qubits);
      if (act.flip == 0) {
        for (std::size_t k = 0; k < dim; ++k) {
          if ((k & act.control_mask) != act.control_value) continue;
          amps[k] *= (c + mis * generator_phase(act, k));
        }
        return;
      }
      for (std::size_t k = 0; k < dim; ++k) {
        const std::size_t j = k ^ act.flip;
        if (k >= j) continue;
        if ((k & act.control_mask) != act.control_value) continue;
        const Complex pk = generator_phase(act, k);
        const Complex pj = generator_phase(act, j);
        const Complex ak = amps[k];
        const Complex aj = amps[j];
        amps[k] = c * ak + mis * pj * aj;
        amps[j] = c * aj + mis * pk * ak;
      }
      return;
    }
  }
}

}  // namespace detail

StateVector evaluate(const ParametricCircuit& circuit, std::span<const double> theta) {
  detail::require(static_cast<int>(theta.size()) == circuit.num_params,
                  "evaluate: parameter vector has wrong length");
  for (double t : theta) detail::require(std::isfinite(t), "evaluate: non-finite angle");

  StateVector state =
      circuit.initial_state ? *circuit.initial_state : basis_state(circuit.num_qubits);
  detail::require(state.amplitudes.size() == (std::size_t{1} << circuit.num_qubits),
                  "evaluate: initial state dimension mismatch");
  for (const Gate& g : circuit.gates)
    detail::apply_gate(state.amplitudes, circuit.num_qubits, g, theta);
  return state;
}

StateVector derivative_state(const ParametricCircuit& circuit, std::span<const double> theta,
                             int slot) {
  detail::require(slot >= 0 && slot < circuit.num_params,
                  "derivative_state: slot index out of range");
  int driving = 0;
  for (const Gate& g : circuit.gates)
    if (g.kind == Gate::Kind::Rotation && g.slot && *g.slot == slot) ++driving;
  if (driving != 1)
    throw InputError("derivative_state: slot " + std::to_string(slot) +
                     " drives " + std::to_string(driving) +
                     " rotation gates; exactly one is supported");

  detail::require(static_cast<int>(theta.size()) == circuit.num_params,
                  "derivative_state: parameter vector has wrong length");
  StateVector state =
      circuit.initial_state ? *circuit.initial_state : basis_state(circuit.num_qubits);
  for (const Gate& g : circuit.gates) {
    detail::apply_gate(state.amplitudes, circuit.num_qubits, g, theta);
    if (g.kind == Gate::Kind::Rotation && g.slot && *g.slot == slot) {
      detail::require(g.multiplier == 1.0,
                      "derivative_state: slot has non-unit multiplier; use parameter_tangent");
      detail::apply_generator(state.amplitudes, circuit.num_qubits, g.gen);
    }
  }
  return state;
}

std::vector<Complex> parameter_tangent(const ParametricCircuit& circuit,
                                       std::span<const double> theta, int slot) {
  detail::require(slot >= 0 && slot < circuit.num_params,
                  "parameter_tangent: slot index out of range");
  detail::require(static_cast<int>(theta.size()) == circuit.num_params,
                  "parameter_tangent: parameter vector has wrong length");

  const std::size_t dim = std::size_t{1} << circuit.num_qubits;
  std::vector<Complex> tangent(dim, Complex{0.0, 0.0});
  for (std::size_t gi = 0; gi < circuit.gates.size(); ++gi) {
    const Gate& g = circuit.gates[gi];
    if (g.kind != Gate::Kind::Rotation || !g.slot || *g.slot != slot) continue;

    StateVector state =
        circuit.initial_state ? *circuit.initial_state : basis_state(circuit.num_qubits);
    for (std::size_t gj = 0; gj < circuit.gates.size(); ++gj) {
      detail::apply_gate(state.amplitudes, circuit.num_qubits, circuit.gates[gj], theta);
      if (gj == gi) detail::apply_generator(state.amplitudes, circuit.num_qubits, g.gen);
    }
    const Complex weight{0.0, -0.5 * g.multiplier};  // -i/2 * multiplier
    for (std::size_t k = 0; k < dim; ++k) tangent[k] += weight * state.amplitudes[k];
  }
  bool driven = false;
  for (const Gate& g : circuit.gates)
    if (g.kind == Gate::Kind::Rotation && g.slot && *g.slot == slot) driven = true;
  detail::require(driven, "parameter_tangent: slot not driven by any rotation");
  return tangent;
}

}  // namespace qcover
