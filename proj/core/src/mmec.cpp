#include "qcover/mmec.hpp"

#include <cmath>
#include <optional>

#include "qcover/dea.hpp"
#include "qcover/errors.hpp"
#include "qcover/linalg.hpp"
#include "qcover/rng.hpp"

namespace qcover {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

Gate embed(Gate g, int qubit_shift, int slot_shift, std::optional<ControlBit> extra_control) {
  for (PauliTerm& t : g.gen.paulis) t.qubit += qubit_shift;
  for (ControlBit& c : g.gen.controls) c.qubit += qubit_shift;
  if (g.kind == Gate::Kind::Hadamard) g.target += qubit_shift;
  if (g.kind == Gate::Kind::Rotation && g.slot) *g.slot += slot_shift;
  if (extra_control) g.gen.controls.push_back(*extra_control);
  return g;
}

ParametricCircuit base_circuit(PhaseMode phase_mode) {
  ParametricCircuit c;
  c.num_qubits = 1;
  if (phase_mode == PhaseMode::WithGlobalPhase) {
    c.num_params = 3;
    c.gates = {axis_rotation_gate(Axis::X, 0, 0), axis_rotation_gate(Axis::Z, 0, 1),
               axis_rotation_gate(Axis::Y, 0, 2)};
  } else {
    c.num_params = 2;
    c.gates = {axis_rotation_gate(Axis::X, 0, 0), axis_rotation_gate(Axis::Z, 0, 1)};
  }
  c.param_periods.assign(static_cast<std::size_t>(c.num_params), kTwoPi);
  return c;
}

ParametricCircuit extend_by_one_qubit(const ParametricCircuit& prev, PhaseMode phase_mode) {
  const int p = prev.num_params;
  ParametricCircuit c;
  c.num_qubits = prev.num_qubits + 1;

  const ControlBit on_new{0, true};
  int slot_base = 1;

  c.gates.push_back(axis_rotation_gate(Axis::X, 0, 0));
  if (phase_mode == PhaseMode::PhaseFree) {
    // Relative phase between the two branches; acts on the still-cleared
    // register inside the first conditioned block.
    c.gates.push_back(axis_rotation_gate(Axis::Z, 1, 1, 1.0, {on_new}));
    slot_base = 2;
  }
  for (const Gate& g : prev.gates) c.gates.push_back(embed(g, 1, slot_base, on_new));
  c.gates.push_back(x_gate(0));
  for (const Gate& g : prev.gates) c.gates.push_back(embed(g, 1, slot_base + p, on_new));

  c.num_params = slot_base + 2 * p;
  c.param_periods.assign(static_cast<std::size_t>(c.num_params), kTwoPi);
  return c;
}

}  // namespace

int mmec_param_count(const MmecSpec& spec) {
  const long long full = (2ll << spec.num_qubits) - 1;  // 2^(Q+1) - 1
  return static_cast<int>(spec.phase_mode == PhaseMode::WithGlobalPhase ? full : full - 1);
}

ParametricCircuit build(const MmecSpec& spec) {
  detail::require(spec.num_qubits >= 1, "build: need at least one qubit");
  ParametricCircuit c = base_circuit(spec.phase_mode);
  for (int q = 1; q < spec.num_qubits; ++q) c = extend_by_one_qubit(c, spec.phase_mode);
  validate(c);
  if (spec.compile_mode == CompileMode::CnotBasis) c = compile_to_cnot_basis(c);
  return c;
}

int expressivity_check(const ParametricCircuit& circuit, int target_dim, int probes,
                       std::uint64_t seed) {
  detail::require(probes >= 1, "expressivity_check: need at least one probe");
  (void)target_dim;
  std::vector<int> all_slots(static_cast<std::size_t>(circuit.num_params));
  for (int s = 0; s < circuit.num_params; ++s) all_slots[static_cast<std::size_t>(s)] = s;

  Rng rng(mix_seed(seed, 0x8d2e));
  int best = 0;
  for (int p = 0; p < probes; ++p) {
    std::vector<double> theta(static_cast<std::size_t>(circuit.num_params));
    for (int s = 0; s < circuit.num_params; ++s)
      theta[static_cast<std::size_t>(s)] = rng.uniform(0.0, circuit.period(s));
    const GramMatrix g = jacobian_gram(circuit, theta, all_slots);
    best = std::max(best, linalg::numeric_rank(g.entries, 1e-9));
  }
  return best;
}

namespace {

// Angle of a rotation leg: either a fixed value or coeff * theta[slot].
struct AngleSource {
  std::optional<int> slot;
  double value = 0.0;  // fixed angle, or multiplier when slot is set

  AngleSource scaled(double f) const { return {slot, value * f}; }
  AngleSource negated() const { return scaled(-1.0); }
};

class CnotCompiler {
 public:
  explicit CnotCompiler(std::vector<Gate>& out) : out_(out) {}

  void rotation(Axis axis, int target, const AngleSource& angle,
                std::vector<int> controls) {
    if (controls.empty()) {
      emit_rotation(axis, target, angle);
      return;
    }
    if (controls.size() == 1) {
      single_controlled(axis, target, controls[0], angle);
      return;
    }
    // Barenco split with V = R(angle/2): CV on the last control, a
    // multi-controlled X toggling that control, CV^dagger, toggle back,
    // then the recursion on one fewer control.
    const int last = controls.back();
    std::vector<int> rest(controls.begin(), controls.end() - 1);
    rotation(axis, target, angle.scaled(0.5), {last});
    multi_controlled_x(last, rest);
    rotation(axis, target, angle.scaled(-0.5), {last});
    multi_controlled_x(last, rest);
    rotation(axis, target, angle.scaled(0.5), rest);
  }

  void multi_controlled_x(int target, std::vector<int> controls) {
    if (controls.empty()) {
      out_.push_back(x_gate(target));
      return;
    }
    if (controls.size() == 1) {
      out_.push_back(cnot_gate(controls[0], target));
      return;
    }
    // X = i R_X(pi): the rotation supplies the flip, the phase i on the
    // all-ones control subspace is a multi-controlled phase on the controls.
    multi_phase(controls, kPi / 2.0);
    rotation(Axis::X, target, {std::nullopt, kPi}, controls);
  }

  /// Diagonal phase e^{i phi} on the all-ones subspace of `qubits`.
  void multi_phase(std::vector<int> qubits, double phi) {
    if (qubits.empty()) return;  // global phase
    if (qubits.size() == 1) {
      // diag(1, e^{i phi}) = e^{i phi/2} R_Z(phi)
      emit_rotation(Axis::Z, qubits[0], {std::nullopt, phi});
      return;
    }
    const int t = qubits.back();
    std::vector<int> rest(qubits.begin(), qubits.end() - 1);
    multi_phase(rest, phi / 2.0);
    multi_phase({t}, phi / 2.0);
    multi_controlled_x(t, rest);
    multi_phase({t}, -phi / 2.0);
    multi_controlled_x(t, rest);
  }

 private:
  void emit_rotation(Axis axis, int target, const AngleSource& angle) {
    if (angle.slot)
      out_.push_back(axis_rotation_gate(axis, target, *angle.slot, angle.value));
    else
      out_.push_back(fixed_axis_rotation_gate(axis, target, angle.value));
  }

  void single_controlled(Axis axis, int target, int control, const AngleSource& angle) {
    if (axis == Axis::X) {
      // R_X = H R_Z H on the target.
      out_.push_back(hadamard_gate(target));
      single_controlled(Axis::Z, target, control, angle);
      out_.push_back(hadamard_gate(target));
      return;
    }
    // C R(theta) = R(theta/2), CNOT, R(-theta/2), CNOT for axes Y and Z.
    emit_rotation(axis, target, angle.scaled(0.5));
    out_.push_back(cnot_gate(control, target));
    emit_rotation(axis, target, angle.scaled(-0.5));
    out_.push_back(cnot_gate(control, target));
  }

  std::vector<Gate>& out_;
};

}  // namespace

ParametricCircuit compile_to_cnot_basis(const ParametricCircuit& circuit) {
  validate(circuit);
  ParametricCircuit out;
  out.num_qubits = circuit.num_qubits;
  out.num_params = circuit.num_params;
  out.param_periods = circuit.param_periods;
  out.initial_state = circuit.initial_state;

  CnotCompiler compiler(out.gates);
  for (const Gate& g : circuit.gates) {
    // Control-on-zero is handled by an X sandwich on those control qubits.
    std::vector<int> controls;
    std::vector<int> zero_controls;
    for (const ControlBit& c : g.gen.controls) {
      controls.push_back(c.qubit);
      if (!c.on_one) zero_controls.push_back(c.qubit);
    }
    for (int q : zero_controls) out.gates.push_back(x_gate(q));

    switch (g.kind) {
      case Gate::Kind::Hadamard:
        if (!controls.empty())
          throw InputError("compile_to_cnot_basis: controlled Hadamard is unsupported");
        out.gates.push_back(hadamard_gate(g.target));
        break;
      case Gate::Kind::Rotation: {
        if (g.gen.paulis.size() != 1)
          throw InputError("compile_to_cnot_basis: multi-qubit Pauli rotation is unsupported");
        const AngleSource angle =
            g.slot ? AngleSource{*g.slot, g.multiplier} : AngleSource{std::nullopt, g.angle};
        if (controls.empty())
          out.gates.push_back(g);
        else
          compiler.rotation(g.gen.paulis[0].axis, g.gen.paulis[0].qubit, angle, controls);
        break;
      }
      case Gate::Kind::PauliApply: {
        if (g.gen.paulis.size() != 1)
          throw InputError("compile_to_cnot_basis: multi-qubit Pauli apply is unsupported");
        const PauliTerm& t = g.gen.paulis[0];
        if (controls.empty()) {
          Gate kept = g;
          kept.gen.controls.clear();
          out.gates.push_back(kept);
        } else if (t.axis == Axis::X) {
          compiler.multi_controlled_x(t.qubit, controls);
        } else {
          // Controlled Y or Z Pauli: P = i R_P(pi).
          compiler.multi_phase(controls, kPi / 2.0);
          compiler.rotation(t.axis, t.qubit, {std::nullopt, kPi}, controls);
        }
        break;
      }
    }

    for (int q : zero_controls) out.gates.push_back(x_gate(q));
  }

  validate(out);
  return out;
}

bool is_cnot_basis(const ParametricCircuit& circuit) {
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case Gate::Kind::Hadamard:
        if (!g.gen.controls.empty()) return false;
        break;
      case Gate::Kind::Rotation:
        if (g.gen.paulis.size() != 1 || !g.gen.controls.empty()) return false;
        break;
      case Gate::Kind::PauliApply: {
        if (g.gen.paulis.size() != 1) return false;
        const bool is_cnot = g.gen.controls.size() == 1 &&
                             g.gen.controls[0].on_one && g.gen.paulis[0].axis == Axis::X;
        if (!g.gen.controls.empty() && !is_cnot) return false;
        break;
      }
    }
  }
  return true;
}

ParametricCircuit add_phase_parameter(const ParametricCircuit& circuit,
                                      const std::vector<Gate>& u_init) {
  validate(circuit);
  // u_init must prepare the circuit's initial state from |0...0>.
  StateVector prepared = basis_state(circuit.num_qubits);
  for (const Gate& g : u_init)
    detail::apply_gate(prepared.amplitudes, circuit.num_qubits, g, {});
  const StateVector target =
      circuit.initial_state ? *circuit.initial_state : basis_state(circuit.num_qubits);
  double diff = 0.0;
  for (std::size_t k = 0; k < prepared.amplitudes.size(); ++k)
    diff += std::norm(prepared.amplitudes[k] - target.amplitudes[k]);
  if (std::sqrt(diff) > 1e-10)
    throw InputError("add_phase_parameter: u_init does not prepare the initial state");

  ParametricCircuit out;
  out.num_qubits = circuit.num_qubits;
  out.num_params = circuit.num_params + 1;
  out.param_periods.reserve(static_cast<std::size_t>(out.num_params));
  out.param_periods.push_back(2.0 * kTwoPi);  // phase orbit closes after 4*pi
  for (int s = 0; s < circuit.num_params; ++s) out.param_periods.push_back(circuit.period(s));

  out.gates.push_back(axis_rotation_gate(Axis::Z, 0, 0));
  for (const Gate& g : u_init) out.gates.push_back(g);
  for (const Gate& g : circuit.gates) {
    Gate shifted = g;
    if (shifted.kind == Gate::Kind::Rotation && shifted.slot) *shifted.slot += 1;
    out.gates.push_back(shifted);
  }
  validate(out);
  return out;
}

}  // namespace qcover
