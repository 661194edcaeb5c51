// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qarith/error.hpp"

namespace qarith {

/// Gate vocabulary. Every kind can carry an arbitrary set of extra control
/// qubits; a CNOT is X with one control, a Toffoli is X with two, a Fredkin
/// is SWAP with one, and so on.
enum class GateKind { kX, kH, kSwap, kPhase, kControlledPhase };

/// Two pi, used everywhere angles are reduced to [0, 2*pi).
inline constexpr double kTau = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2*pi).
inline double reduce_angle(double angle) {
  double reduced = std::fmod(angle, kTau);
  if (reduced < 0.0) reduced += kTau;
  return reduced;
}

struct Gate {
  GateKind kind = GateKind::kX;
  std::vector<std::size_t> targets;   // SWAP has two targets, all others one
  std::vector<std::size_t> controls;  // sorted, disjoint from targets
  double angle = 0.0;                 // phase kinds only, radians in [0, 2*pi)

  std::size_t control_count() const { return controls.size(); }

  /// All qubits the gate touches (targets then controls).
  std::vector<std::size_t> acting_qubits() const {
    std::vector<std::size_t> qubits = targets;
    qubits.insert(qubits.end(), controls.begin(), controls.end());
    return qubits;
  }
};

inline Gate make_x(std::size_t target, std::vector<std::size_t> controls = {}) {
  return Gate{GateKind::kX, {target}, std::move(controls), 0.0};
}

inline Gate make_h(std::size_t target, std::vector<std::size_t> controls = {}) {
  return Gate{GateKind::kH, {target}, std::move(controls), 0.0};
}

inline Gate make_swap(std::size_t a, std::size_t b,
                      std::vector<std::size_t> controls = {}) {
  return Gate{GateKind::kSwap, {a, b}, std::move(controls), 0.0};
}

inline Gate make_phase(std::size_t target, double angle,
                       std::vector<std::size_t> controls = {}) {
  GateKind kind = controls.empty() ? GateKind::kPhase : GateKind::kControlledPhase;
  return Gate{kind, {target}, std::move(controls), reduce_angle(angle)};
}

namespace detail {

/// Copy of `controls` with extra qubits appended. Keeps builder code that
/// threads an outer control set through nested gates readable.
template <class... Extra>
std::vector<std::size_t> with(const std::vector<std::size_t>& controls,
                              Extra... extra) {
  std::vector<std::size_t> out;
  out.reserve(controls.size() + sizeof...(extra));
  out = controls;
  (out.push_back(static_cast<std::size_t>(extra)), ...);
  return out;
}

}  // namespace detail

/// An ordered gate list over a fixed number of qubits. Circuits are plain
/// values: building, inverting and controlling them never touches a
/// simulator. The QFT block counter is bookkeeping for resource reports;
/// builders that append a (inverse) Fourier transform bump it.
class Circuit {
 public:
  Circuit() = default;

  explicit Circuit(std::size_t qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count == 0) throw StructuralError("circuit needs at least one qubit");
  }

  std::size_t qubit_count() const { return qubit_count_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  std::size_t qft_block_count() const { return qft_blocks_; }

  void add(Gate gate) {
    validate(gate);
    gates_.push_back(std::move(gate));
  }

  /// Appends another circuit's gates. The appended circuit may be narrower
  /// (it addresses a prefix of this circuit's qubits) but never wider.
  void append(const Circuit& other) {
    if (other.qubit_count_ > qubit_count_) {
      throw StructuralError("appended circuit is wider than the target circuit");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    qft_blocks_ += other.qft_blocks_;
  }

  /// Marks that the gates just appended formed one (inverse) QFT block.
  void note_qft_block() { ++qft_blocks_; }

 private:
  void validate(const Gate& gate) const {
    const std::size_t expected_targets = gate.kind == GateKind::kSwap ? 2 : 1;
    if (gate.targets.size() != expected_targets) {
      throw StructuralError("gate has the wrong number of targets");
    }
    if (gate.kind == GateKind::kControlledPhase && gate.controls.empty()) {
      throw StructuralError("controlled phase gate needs at least one control");
    }
    std::vector<std::size_t> seen = gate.targets;
    seen.insert(seen.end(), gate.controls.begin(), gate.controls.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      throw StructuralError("gate targets and controls must be distinct qubits");
    }
    if (!seen.empty() && seen.back() >= qubit_count_) {
      throw StructuralError("gate addresses a qubit outside the circuit");
    }
    if (!std::isfinite(gate.angle)) {
      throw StructuralError("gate angle must be finite");
    }
  }

  std::size_t qubit_count_ = 1;
  std::vector<Gate> gates_;
  std::size_t qft_blocks_ = 0;
};

/// Exact inverse: gates reversed, phase angles negated. X, H and SWAP are
/// self-inverse. Inverting twice reproduces the original gate list.
inline Circuit inverse(const Circuit& circuit) {
  Circuit inv(circuit.qubit_count());
  const auto& gates = circuit.gates();
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    Gate gate = *it;
    if (gate.kind == GateKind::kPhase || gate.kind == GateKind::kControlledPhase) {
      gate.angle = reduce_angle(-gate.angle);
    }
    inv.add(std::move(gate));
  }
  for (std::size_t i = 0; i < circuit.qft_block_count(); ++i) inv.note_qft_block();
  return inv;
}

/// Lifts a whole circuit under extra controls: every gate acts only when all
/// `controls` are set. The controls must not overlap any qubit the circuit's
/// gates act on.
inline Circuit controlled(const Circuit& circuit,
                          std::span<const std::size_t> controls) {
  for (std::size_t control : controls) {
    if (control >= circuit.qubit_count()) {
      throw StructuralError("control qubit outside the circuit");
    }
    for (const Gate& gate : circuit.gates()) {
      for (std::size_t q : gate.acting_qubits()) {
        if (q == control) {
          throw StructuralError("control qubit overlaps a qubit the circuit acts on");
        }
      }
    }
  }
  Circuit lifted(circuit.qubit_count());
  for (Gate gate : circuit.gates()) {
    gate.controls.insert(gate.controls.end(), controls.begin(), controls.end());
    if (gate.kind == GateKind::kPhase && !gate.controls.empty()) {
      gate.kind = GateKind::kControlledPhase;
    }
    lifted.add(std::move(gate));
  }
  for (std::size_t i = 0; i < circuit.qft_block_count(); ++i) lifted.note_qft_block();
  return lifted;
}

}  // namespace qarith
