// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/layout.hpp"

namespace qarith {

namespace detail {

/// Appends the rotation ladder of the QFT on `reg` (least significant bit
/// first) and counts it as one QFT block. With `with_swaps` the usual
/// terminal swap layer restores bit order; without it the Fourier image
/// comes out bit-reversed, which the arithmetic builders compensate for in
/// their phase schedules. `inverted` appends the exact inverse block.
inline void append_qft(Circuit& circuit, std::span<const std::size_t> reg,
                       bool with_swaps, bool inverted) {
  const std::size_t n = reg.size();
  Circuit block(circuit.qubit_count());
  for (std::size_t i = n; i-- > 0;) {
    block.add(make_h(reg[i]));
    for (std::size_t d = 1; d <= i; ++d) {
      const double angle = kTau / static_cast<double>(std::uint64_t{1} << (d + 1));
      block.add(make_phase(reg[i], angle, {reg[i - d]}));
    }
  }
  if (with_swaps) {
    for (std::size_t i = 0; i < n / 2; ++i) {
      block.add(make_swap(reg[i], reg[n - 1 - i]));
    }
  }
  circuit.append(inverted ? inverse(block) : block);
  circuit.note_qft_block();
}

}  // namespace detail

/// Quantum Fourier transform of the register: |x> maps to
/// (1/sqrt(2^n)) * sum_k exp(2*pi*i*x*k/2^n) |k>, with the output read in
/// the same bit order as the input. Dropping the swap layer leaves the
/// Fourier image bit-reversed; the arithmetic circuits use that form
/// internally and re-index their rotations instead of paying for swaps.
inline Circuit qft_circuit(std::span<const std::size_t> group,
                           bool with_swaps = true) {
  ensure_disjoint({group});
  Circuit circuit(required_width({group}));
  detail::append_qft(circuit, group, with_swaps, false);
  return circuit;
}

/// Exact inverse of qft_circuit, gate for gate.
inline Circuit iqft_circuit(std::span<const std::size_t> group,
                            bool with_swaps = true) {
  ensure_disjoint({group});
  Circuit circuit(required_width({group}));
  detail::append_qft(circuit, group, with_swaps, true);
  return circuit;
}

}  // namespace qarith
