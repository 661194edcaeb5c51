// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "qarith/circuit.hpp"

namespace qarith {

/// Static cost summary of a circuit. Controlled forms are counted under
/// their own labels (CNOT, Toffoli, CR, CSWAP, ...) so that rotation counts
/// of the Fourier blocks stay separate from the plain phase shifts that load
/// classical constants.
struct ResourceReport {
  std::size_t qubit_count = 0;
  std::map<std::string, std::size_t> gate_counts;
  std::size_t depth = 0;            // unit cost per gate, controls included
  std::size_t qft_invocations = 0;  // QFT/IQFT blocks recorded by builders

  std::size_t total_gates() const {
    std::size_t total = 0;
    for (const auto& [label, count] : gate_counts) total += count;
    return total;
  }

  std::size_t count(const std::string& label) const {
    auto it = gate_counts.find(label);
    return it == gate_counts.end() ? 0 : it->second;
  }
};

/// Label under which a gate is tallied. Phase rotations are classified by
/// their total control count, whichever kind they were built from: a phase
/// with exactly one control is a CR gate.
inline std::string gate_label(const Gate& gate) {
  const std::size_t k = gate.control_count();
  switch (gate.kind) {
    case GateKind::kX:
      if (k == 0) return "X";
      if (k == 1) return "CNOT";
      if (k == 2) return "Toffoli";
      return "C" + std::to_string(k) + "X";
    case GateKind::kH:
      if (k == 0) return "H";
      if (k == 1) return "CH";
      return "C" + std::to_string(k) + "H";
    case GateKind::kSwap:
      if (k == 0) return "SWAP";
      if (k == 1) return "CSWAP";
      return "C" + std::to_string(k) + "SWAP";
    case GateKind::kPhase:
    case GateKind::kControlledPhase:
      if (k == 0) return "Phase";
      if (k == 1) return "CR";
      if (k == 2) return "CCR";
      return "C" + std::to_string(k) + "R";
  }
  return "?";
}

/// Tallies gate counts and schedules depth greedily: each gate lands one
/// layer after the latest layer touching any of its qubits, controls
/// included.
inline ResourceReport resources(const Circuit& circuit) {
  ResourceReport report;
  report.qubit_count = circuit.qubit_count();
  report.qft_invocations = circuit.qft_block_count();
  std::vector<std::size_t> last_layer(circuit.qubit_count(), 0);
  for (const Gate& gate : circuit.gates()) {
    ++report.gate_counts[gate_label(gate)];
    std::size_t layer = 0;
    for (std::size_t q : gate.acting_qubits()) layer = std::max(layer, last_layer[q]);
    ++layer;
    for (std::size_t q : gate.acting_qubits()) last_layer[q] = layer;
    report.depth = std::max(report.depth, layer);
  }
  return report;
}

}  // namespace qarith
