// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <unordered_set>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/error.hpp"
#include "qarith/layout.hpp"
#include "qarith/qft.hpp"

namespace qarith {

/// Produces the controlled U^(2^power) block for the given control qubit.
/// The returned circuit may use any wires except the counting register.
using ControlledPowerSupplier =
    std::function<Circuit(std::size_t power, std::size_t control)>;

/// Textbook phase estimation: Hadamards on the counting register, one
/// controlled power block per counting bit (bit t controls U^(2^t)), then
/// the inverse QFT with its swap layer so the measured integer reads out
/// most significant bit last. Measuring the counting register afterwards
/// yields j with j/2^m near the eigenphase.
inline Circuit phase_estimation(std::span<const std::size_t> counting_group,
                                std::size_t total_qubits,
                                const ControlledPowerSupplier& supplier) {
  if (counting_group.empty()) {
    throw StructuralError("counting register must not be empty");
  }
  ensure_disjoint({counting_group});
  if (required_width({counting_group}) > total_qubits) {
    throw StructuralError("counting register exceeds the circuit width");
  }
  Circuit circuit(total_qubits);
  for (std::size_t q : counting_group) circuit.add(make_h(q));
  std::unordered_set<std::size_t> counting(counting_group.begin(),
                                           counting_group.end());
  for (std::size_t t = 0; t < counting_group.size(); ++t) {
    const Circuit block = supplier(t, counting_group[t]);
    for (const Gate& gate : block.gates()) {
      for (std::size_t q : gate.acting_qubits()) {
        if (counting.contains(q) && q != counting_group[t]) {
          throw StructuralError("power block touches the counting register");
        }
      }
    }
    circuit.append(block);
  }
  circuit.append(iqft_circuit(counting_group, /*with_swaps=*/true));
  return circuit;
}

/// Supplier for the diagonal unitary with eigenphase `theta` turns on |1>:
/// each controlled power collapses to a single controlled rotation by
/// theta * 2^power turns.
inline ControlledPowerSupplier phase_oracle(std::size_t target, double theta,
                                            std::size_t total_qubits) {
  return [target, theta, total_qubits](std::size_t power, std::size_t control) {
    Circuit block(total_qubits);
    const double angle = kTau * theta * std::ldexp(1.0, static_cast<int>(power));
    block.add(make_phase(target, angle, {control}));
    return block;
  };
}

/// Exact outcome distribution of m-bit estimation of eigenphase `theta`
/// (in turns): the squared Dirichlet kernel
///   P(j) = (sin(pi 2^m d_j) / (2^m sin(pi d_j)))^2,  d_j = theta - j/2^m,
/// which collapses to 1 on the exact outcome when theta is dyadic.
inline std::vector<double> counting_distribution(double theta, std::size_t m) {
  if (m == 0 || m > 26) throw CapacityError("counting width out of range");
  const std::uint64_t size = std::uint64_t{1} << m;
  std::vector<double> prob(size);
  for (std::uint64_t j = 0; j < size; ++j) {
    const double delta = theta - static_cast<double>(j) / static_cast<double>(size);
    const double d = std::remainder(delta, 1.0);
    if (std::abs(d) < 1e-15) {
      prob[j] = 1.0;
      continue;
    }
    const double ratio = std::sin(std::numbers::pi * static_cast<double>(size) * d) /
                         (static_cast<double>(size) * std::sin(std::numbers::pi * d));
    prob[j] = ratio * ratio;
  }
  return prob;
}

}  // namespace qarith
