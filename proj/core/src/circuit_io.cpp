#include "qcover/circuit_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcover/errors.hpp"

namespace qcover {

using nlohmann::json;

namespace {

Axis axis_from_char(char c) {
  switch (c) {
    case 'X': return Axis::X;
    case 'Y': return Axis::Y;
    case 'Z': return Axis::Z;
    default: throw InputError(std::string("invalid Pauli character '") + c + "'");
  }
}

char axis_to_char(Axis a) {
  switch (a) {
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    default: return 'Z';
  }
}

Generator parse_generator(const json& jg, int num_qubits) {
  Generator gen;
  const std::string pauli = jg.at("pauli").get<std::string>();
  if (static_cast<int>(pauli.size()) != num_qubits)
    throw InputError("pauli string length must equal num_qubits");
  for (int q = 0; q < num_qubits; ++q) {
    const char c = pauli[static_cast<std::size_t>(q)];
    if (c == 'I') continue;
    gen.paulis.push_back({q, axis_from_char(c)});
  }
  if (jg.contains("controls")) {
    for (const json& jc : jg.at("controls")) {
      ControlBit cb;
      cb.qubit = jc.at("q").get<int>();
      cb.on_one = jc.at("polarity").get<int>() != 0;
      gen.controls.push_back(cb);
    }
  }
  return gen;
}

std::vector<int> gate_qubits(const json& jg, std::size_t expected) {
  const auto qs = jg.at("qubits").get<std::vector<int>>();
  if (qs.size() != expected)
    throw InputError("gate expects " + std::to_string(expected) + " qubit indices");
  return qs;
}

}  // namespace

ParametricCircuit parse_circuit(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("circuit JSON parse failure: ") + e.what());
  }

  ParametricCircuit circuit;
  try {
    circuit.num_qubits = j.at("num_qubits").get<int>();
    if (j.contains("params")) {
      for (const json& jp : j.at("params")) {
        circuit.param_periods.push_back(
            jp.contains("period") ? jp.at("period").get<double>()
                                  : 6.283185307179586476925286766559);
      }
    }
    circuit.num_params = static_cast<int>(circuit.param_periods.size());

    for (const json& jg : j.at("gates")) {
      const std::string type = jg.at("type").get<std::string>();
      if (type == "rot") {
        Generator gen = parse_generator(jg, circuit.num_qubits);
        const double mult = jg.contains("mult") ? jg.at("mult").get<double>() : 1.0;
        if (jg.contains("slot")) {
          circuit.gates.push_back(rotation_gate(std::move(gen), jg.at("slot").get<int>(), mult));
        } else if (jg.contains("angle")) {
          circuit.gates.push_back(fixed_rotation_gate(std::move(gen), jg.at("angle").get<double>()));
        } else {
          throw InputError("rotation gate needs either \"slot\" or \"angle\"");
        }
      } else if (type == "pauli") {
        circuit.gates.push_back(pauli_gate(parse_generator(jg, circuit.num_qubits)));
      } else if (type == "x") {
        circuit.gates.push_back(x_gate(gate_qubits(jg, 1)[0]));
      } else if (type == "h") {
        circuit.gates.push_back(hadamard_gate(gate_qubits(jg, 1)[0]));
      } else if (type == "cnot") {
        const auto qs = gate_qubits(jg, 2);
        circuit.gates.push_back(cnot_gate(qs[0], qs[1]));
      } else if (type == "toffoli") {
        const auto qs = gate_qubits(jg, 3);
        circuit.gates.push_back(toffoli_gate(qs[0], qs[1], qs[2]));
      } else {
        throw InputError("unknown gate type \"" + type + "\"");
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("circuit JSON structure error: ") + e.what());
  }

  validate(circuit);
  return circuit;
}

ParametricCircuit read_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open circuit file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

std::string circuit_to_json(const ParametricCircuit& circuit) {
  json j;
  j["num_qubits"] = circuit.num_qubits;
  json params = json::array();
  for (int s = 0; s < circuit.num_params; ++s)
    params.push_back({{"period", circuit.period(s)}});
  j["params"] = params;

  json gates = json::array();
  for (const Gate& g : circuit.gates) {
    json jg;
    auto write_controls = [&](const Gate& gate) {
      if (gate.gen.controls.empty()) return;
      json jc = json::array();
      for (const ControlBit& c : gate.gen.controls)
        jc.push_back({{"q", c.qubit}, {"polarity", c.on_one ? 1 : 0}});
      jg["controls"] = jc;
    };
    auto pauli_string = [&](const Generator& gen) {
      std::string s(static_cast<std::size_t>(circuit.num_qubits), 'I');
      for (const PauliTerm& t : gen.paulis)
        s[static_cast<std::size_t>(t.qubit)] = axis_to_char(t.axis);
      return s;
    };

    switch (g.kind) {
      case Gate::Kind::Rotation:
        jg["type"] = "rot";
        jg["pauli"] = pauli_string(g.gen);
        if (g.slot) {
          jg["slot"] = *g.slot;
          if (g.multiplier != 1.0) jg["mult"] = g.multiplier;
        } else {
          jg["angle"] = g.angle;
        }
        write_controls(g);
        break;
      case Gate::Kind::PauliApply: {
        const bool single_x =
            g.gen.paulis.size() == 1 && g.gen.paulis[0].axis == Axis::X;
        const bool all_on_one = [&] {
          for (const ControlBit& c : g.gen.controls)
            if (!c.on_one) return false;
          return true;
        }();
        if (single_x && all_on_one && g.gen.controls.empty()) {
          jg["type"] = "x";
          jg["qubits"] = {g.gen.paulis[0].qubit};
        } else if (single_x && all_on_one && g.gen.controls.size() == 1) {
          jg["type"] = "cnot";
          jg["qubits"] = {g.gen.controls[0].qubit, g.gen.paulis[0].qubit};
        } else if (single_x && all_on_one && g.gen.controls.size() == 2) {
          jg["type"] = "toffoli";
          jg["qubits"] = {g.gen.controls[0].qubit, g.gen.controls[1].qubit,
                          g.gen.paulis[0].qubit};
        } else {
          jg["type"] = "pauli";
          jg["pauli"] = pauli_string(g.gen);
          write_controls(g);
        }
        break;
      }
      case Gate::Kind::Hadamard:
        if (!g.gen.controls.empty())
          throw InputError("cannot serialize controlled Hadamard gates");
        jg["type"] = "h";
        jg["qubits"] = {g.target};
        break;
    }
    gates.push_back(jg);
  }
  j["gates"] = gates;
  return j.dump(2);
}

void write_circuit(const ParametricCircuit& circuit, const std::string& path) {
  const std::string text = circuit_to_json(circuit);
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  out << text << '\n';
}

}  // namespace qcover
