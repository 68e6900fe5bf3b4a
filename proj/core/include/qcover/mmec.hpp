#pragma once

#include <cstdint>
#include <vector>

#include "qcover/circuit.hpp"

namespace qcover {

enum class PhaseMode : std::uint8_t {
  WithGlobalPhase,  // parametrizes the full Hilbert sphere, 2^(Q+1)-1 slots
  PhaseFree,        // fixes the global phase choice, 2^(Q+1)-2 slots
};

enum class CompileMode : std::uint8_t {
  NativeControls,  // multi-controlled rotations kept as single gates
  CnotBasis,       // only single-qubit gates and CNOT
};

struct MmecSpec {
  int num_qubits = 1;
  PhaseMode phase_mode = PhaseMode::WithGlobalPhase;
  CompileMode compile_mode = CompileMode::NativeControls;
};

/// Number of parameter slots build() produces for this spec.
int mmec_param_count(const MmecSpec& spec);

/// Builds the minimal, maximally expressive circuit on spec.num_qubits
/// qubits by the inductive doubling construction: the base single-qubit
/// circuit is R_Y R_Z R_X |0> (or R_Z R_X |0> phase-free), and each added
/// qubit receives R_X(theta_1) followed by two copies of the previous
/// circuit conditioned on the new qubit, separated by an X.
ParametricCircuit build(const MmecSpec& spec);

/// Max Jacobian Gram rank over random probes; maximal expressivity evidence
/// is this reaching target_dim at some probe.
int expressivity_check(const ParametricCircuit& circuit, int target_dim, int probes,
                       std::uint64_t seed = 0);

/// Rewrites the circuit using only single-qubit gates and CNOT. Supports
/// (multi-)controlled single-qubit rotations and (multi-)controlled X
/// chains; anything else throws InputError. The compiled circuit prepares
/// the same state as the input up to a global phase at every parameter
/// value.
ParametricCircuit compile_to_cnot_basis(const ParametricCircuit& circuit);

/// True iff every gate is a single-qubit gate or a CNOT.
bool is_cnot_basis(const ParametricCircuit& circuit);

/// Prepends an artificial phase parameter phi: the returned circuit prepares
/// U(theta) U_init R_Z(phi) U_init^dagger |init>, where u_init must map
/// |0...0> to the circuit's initial state (checked numerically). At phi = 0
/// the new circuit equals the original; phi has period 4*pi so the full
/// phase circle of each state is reachable.
ParametricCircuit add_phase_parameter(const ParametricCircuit& circuit,
                                      const std::vector<Gate>& u_init);

}  // namespace qcover
