#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qcover {

using Complex = std::complex<double>;

enum class Axis : std::uint8_t { X, Y, Z };

struct PauliTerm {
  int qubit = 0;
  Axis axis = Axis::X;
};

struct ControlBit {
  int qubit = 0;
  bool on_one = true;  // false = control on |0>
};

/// A self-inverse generator: a Pauli string on one or more qubits, optionally
/// conditioned on control qubits. Squaring any such generator gives the
/// identity on its support, which is what makes exp(-i theta/2 G) a rotation.
struct Generator {
  std::vector<PauliTerm> paulis;      // non-identity factors, increasing qubit index
  std::vector<ControlBit> controls;   // disjoint from the Pauli support
};

/// One circuit element. Rotations implement exp(-i angle/2 G) on the
/// control-matching subspace and the identity elsewhere; PauliApply applies
/// the (controlled) generator itself; Hadamard is kept as its own kind since
/// it is not a Pauli string.
struct Gate {
  enum class Kind : std::uint8_t { Rotation, PauliApply, Hadamard };

  Kind kind = Kind::Rotation;
  Generator gen;              // Rotation / PauliApply payload; Hadamard uses controls only
  int target = -1;            // Hadamard target qubit
  std::optional<int> slot;    // Rotation: parameter slot; nullopt = fixed angle
  double angle = 0.0;         // fixed angle (radians) when slot is empty
  double multiplier = 1.0;    // applied angle = multiplier * theta[slot]
};

Gate rotation_gate(Generator gen, int slot, double multiplier = 1.0);
Gate fixed_rotation_gate(Generator gen, double angle);
Gate pauli_gate(Generator gen);
Gate hadamard_gate(int qubit, std::vector<ControlBit> controls = {});
Gate x_gate(int qubit);
Gate cnot_gate(int control, int target);
Gate toffoli_gate(int control1, int control2, int target);

/// Helper for single-qubit rotation gates about a Pauli axis.
Gate axis_rotation_gate(Axis axis, int qubit, int slot, double multiplier = 1.0,
                        std::vector<ControlBit> controls = {});
Gate fixed_axis_rotation_gate(Axis axis, int qubit, double angle,
                              std::vector<ControlBit> controls = {});

/// Unit-norm complex amplitude vector of length 2^Q. Qubit 0 is the most
/// significant bit of the amplitude index, so |q0 q1 ... q_{Q-1}> reads
/// left to right.
struct StateVector {
  std::vector<Complex> amplitudes;

  int num_qubits() const;
};

StateVector basis_state(int num_qubits, std::size_t index = 0);

double norm(const StateVector& s);
Complex inner(const StateVector& a, const StateVector& b);

/// Re <a, b>. Symmetric, and in [-1, 1] for unit vectors.
double real_inner(const StateVector& a, const StateVector& b);

struct ParametricCircuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  int num_params = 0;
  std::vector<double> param_periods;        // per slot, radians; empty = all 2*pi
  std::optional<StateVector> initial_state; // default |0...0>

  double period(int slot) const;
};

/// Structural validation: qubit indices in range, every slot driven by at
/// least one rotation, controls disjoint from Pauli support, periods positive,
/// initial state (if any) unit norm. Throws InputError on violation.
void validate(const ParametricCircuit& circuit);

/// Applies the circuit's gates in order to the initial state. Norm is
/// preserved to machine precision; no renormalization is performed.
StateVector evaluate(const ParametricCircuit& circuit, std::span<const double> theta);

/// The unit-norm state obtained by inserting the generator of slot `slot`
/// immediately after its rotation gate: d/dtheta C = -(i/2) * result.
/// Requires the slot to drive exactly one rotation gate with multiplier 1.
StateVector derivative_state(const ParametricCircuit& circuit, std::span<const double> theta,
                             int slot);

/// Exact parameter derivative d/dtheta_slot C(theta) as a raw complex vector.
/// Unlike derivative_state this supports slots driving several gates and
/// non-unit multipliers (sum of weighted single insertions).
std::vector<Complex> parameter_tangent(const ParametricCircuit& circuit,
                                       std::span<const double> theta, int slot);

namespace detail {
void apply_gate(std::vector<Complex>& amps, int num_qubits, const Gate& gate,
                std::span<const double> theta);
void apply_generator(std::vector<Complex>& amps, int num_qubits, const Generator& gen);
}  // namespace detail

}  // namespace qcover
