#pragma once

#include <string>

#include "qcover/circuit.hpp"

namespace qcover {

/// Parses a circuit description from JSON text. Format:
///
///   {
///     "num_qubits": 2,
///     "params": [{"period": 6.283185307179586}, ...],
///     "gates": [
///       {"type": "rot", "pauli": "XI", "slot": 0},
///       {"type": "rot", "pauli": "IZ", "angle": 0.25},
///       {"type": "rot", "pauli": "IX", "slot": 1,
///        "controls": [{"q": 0, "polarity": 1}], "mult": 2},
///       {"type": "cnot", "qubits": [0, 1]},
///       {"type": "x", "qubits": [0]},
///       {"type": "h", "qubits": [1]},
///       {"type": "toffoli", "qubits": [0, 1, 2]}
///     ]
///   }
///
/// Pauli strings have one character per qubit ("I", "X", "Y", "Z"); angles
/// are radians. "mult" scales the slot angle and defaults to 1.
ParametricCircuit parse_circuit(const std::string& json_text);

ParametricCircuit read_circuit(const std::string& path);

std::string circuit_to_json(const ParametricCircuit& circuit);

void write_circuit(const ParametricCircuit& circuit, const std::string& path);

}  // namespace qcover
