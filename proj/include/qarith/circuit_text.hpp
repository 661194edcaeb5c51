// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/error.hpp"

namespace qarith {

/// Plain-text circuit listing, one gate per line:
///
///   qubits 5
///   h 0
///   x 3 ctrl 0 2
///   swap 1 2
///   phase 0.78539816339744828 4
///   cphase 1.5707963267948966 2 ctrl 0
///
/// Angles print with max_digits10 precision, so a parse of the output
/// rebuilds bit-identical gates and a second dump reproduces the text.
inline void dump_circuit(std::ostream& out, const Circuit& circuit) {
  out << "qubits " << circuit.qubit_count() << '\n';
  const auto name = [](GateKind kind) {
    switch (kind) {
      case GateKind::kX: return "x";
      case GateKind::kH: return "h";
      case GateKind::kSwap: return "swap";
      case GateKind::kPhase: return "phase";
      case GateKind::kControlledPhase: return "cphase";
    }
    return "";
  };
  std::ostringstream angle;
  angle.precision(17);
  for (const Gate& gate : circuit.gates()) {
    out << name(gate.kind);
    if (gate.kind == GateKind::kPhase || gate.kind == GateKind::kControlledPhase) {
      angle.str("");
      angle << gate.angle;
      out << ' ' << angle.str();
    }
    for (std::size_t q : gate.targets) out << ' ' << q;
    if (!gate.controls.empty()) {
      out << " ctrl";
      for (std::size_t q : gate.controls) out << ' ' << q;
    }
    out << '\n';
  }
}

inline Circuit parse_circuit(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw StructuralError("empty circuit listing");
  std::istringstream header(line);
  std::string keyword;
  std::size_t qubit_count = 0;
  if (!(header >> keyword >> qubit_count) || keyword != "qubits") {
    throw StructuralError("circuit listing must start with 'qubits <n>'");
  }
  Circuit circuit(qubit_count);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string kind;
    fields >> kind;
    double angle = 0.0;
    if (kind == "phase" || kind == "cphase") {
      if (!(fields >> angle)) throw StructuralError("phase line lacks an angle");
    }
    std::vector<std::size_t> targets;
    std::vector<std::size_t> controls;
    std::string token;
    bool in_controls = false;
    while (fields >> token) {
      if (token == "ctrl") {
        in_controls = true;
        continue;
      }
      std::size_t index = 0;
      try {
        index = std::stoul(token);
      } catch (const std::exception&) {
        throw StructuralError("bad qubit index '" + token + "'");
      }
      (in_controls ? controls : targets).push_back(index);
    }
    if (kind == "x" && targets.size() == 1) {
      circuit.add(make_x(targets[0], std::move(controls)));
    } else if (kind == "h" && targets.size() == 1) {
      circuit.add(make_h(targets[0], std::move(controls)));
    } else if (kind == "swap" && targets.size() == 2) {
      circuit.add(make_swap(targets[0], targets[1], std::move(controls)));
    } else if ((kind == "phase" || kind == "cphase") && targets.size() == 1) {
      circuit.add(make_phase(targets[0], angle, std::move(controls)));
    } else {
      throw StructuralError("bad gate line '" + line + "'");
    }
  }
  return circuit;
}

}  // namespace qarith
