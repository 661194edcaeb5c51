// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/const_arith.hpp"
#include "qarith/error.hpp"
#include "qarith/layout.hpp"
#include "qarith/qft.hpp"
#include "qarith/ripple.hpp"

namespace qarith {
namespace detail {

/// y = (x + y) mod N with x preserved, for basis values x, y < N.
///
///   1. y += x exactly, top carry into `transfer`
///   2. subtract N on the carry-extended register; transfer ends 1 exactly
///      when x + y < N
///   3. re-add N onto y under transfer
///   4. inverse exact adder of x: transfer picks up [y < x], which equals
///      the complement of its current value, so it is now always 1
///   5. X(transfer), then add x back mod 2^n
///
/// `scratch` is the ripple adder's carry ancilla; both ancillas end |0>.
inline void append_var_mod_add(Circuit& circuit, std::span<const std::size_t> x,
                               std::span<const std::size_t> y, std::size_t scratch,
                               std::size_t transfer, std::uint64_t modulus,
                               const std::vector<std::size_t>& controls = {}) {
  const std::size_t n = y.size();
  if (x.size() != n) throw StructuralError("operand widths must match");
  if (n != modulus_register_width(modulus)) {
    throw StructuralError("register width must match the modulus");
  }
  std::vector<std::size_t> ext(y.begin(), y.end());
  ext.push_back(transfer);
  append_adder(circuit, y, x, scratch, transfer, controls);
  append_const_add(circuit, ext, mod_2n(-modulus, n + 1), controls);
  append_const_add(circuit, y, mod_2n(modulus, n), with(controls, transfer));
  Circuit exact(circuit.qubit_count());
  append_adder(exact, y, x, scratch, transfer, controls);
  circuit.append(inverse(exact));
  circuit.add(make_x(transfer, controls));
  append_adder(circuit, y, x, scratch, std::nullopt, controls);
}

/// x = 2x mod N for odd N and x < N. The swap ladder rotates the
/// carry-extended register one position up (doubling x, aux picks up the old
/// top bit); the reduction then works exactly as in the modular adder. The
/// leftover comparison bit equals [2x < N], which for odd N is just the
/// complement of the result's parity, so two X gates and a CNOT clear it.
inline void append_mod_double(Circuit& circuit, std::span<const std::size_t> x,
                              std::size_t aux, std::uint64_t modulus,
                              const std::vector<std::size_t>& controls = {}) {
  const std::size_t n = x.size();
  if (n != modulus_register_width(modulus)) {
    throw StructuralError("register width must match the modulus");
  }
  if (modulus % 2 == 0) throw DomainError("doubling modulus must be odd");
  std::vector<std::size_t> ext(x.begin(), x.end());
  ext.push_back(aux);
  for (std::size_t i = n; i >= 1; --i) {
    circuit.add(make_swap(ext[i], ext[i - 1], controls));
  }
  append_const_add(circuit, ext, mod_2n(-modulus, n + 1), controls);
  append_const_add(circuit, x, mod_2n(modulus, n), with(controls, aux));
  circuit.add(make_x(x[0], controls));
  circuit.add(make_x(aux, with(controls, x[0])));
  circuit.add(make_x(x[0], controls));
}

/// Fourier-basis variable modular adder, the ancilla-free core of the
/// squarer: w = (w + v) mod N under an external control t, with v read as
/// controls of the rotation grids. Same five steps as append_var_mod_add,
/// but every addition is a rotation grid inside a QFT sandwich, so no ripple
/// scratch qubit is needed; `carry` extends w and comes back clean. The
/// QFTs stay uncontrolled (with t unset each block collapses to QFT followed
/// by its inverse), only rotations and the X are controlled.
inline void append_fourier_var_mod_add(Circuit& circuit, std::span<const std::size_t> v,
                                       std::span<const std::size_t> w, std::size_t carry,
                                       std::size_t t, std::uint64_t modulus) {
  const std::size_t n = w.size();
  if (v.size() != n) throw StructuralError("operand widths must match");
  if (n != modulus_register_width(modulus)) {
    throw StructuralError("register width must match the modulus");
  }
  std::vector<std::size_t> ext(w.begin(), w.end());
  ext.push_back(carry);
  const PhaseSchedule minus_n = phase_angles(mod_2n(-modulus, n + 1), n + 1);
  const PhaseSchedule plus_n = phase_angles(mod_2n(modulus, n), n);

  const auto grid = [&](std::span<const std::size_t> reg, int sign) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t p = 0; p < reg.size(); ++p) {
        const double angle = fourier_pair_angle(i, p);
        circuit.add(make_phase(reg[p], sign < 0 ? -angle : angle, {t, v[i]}));
      }
    }
  };

  append_qft(circuit, ext, /*with_swaps=*/false, /*inverted=*/false);
  grid(ext, +1);
  for (std::size_t p = 0; p <= n; ++p) {
    circuit.add(make_phase(ext[p], minus_n.angles[p], {t}));
  }
  append_qft(circuit, ext, /*with_swaps=*/false, /*inverted=*/true);

  append_qft(circuit, w, /*with_swaps=*/false, /*inverted=*/false);
  for (std::size_t p = 0; p < n; ++p) {
    circuit.add(make_phase(w[p], plus_n.angles[p], {t, carry}));
  }
  append_qft(circuit, w, /*with_swaps=*/false, /*inverted=*/true);

  append_qft(circuit, ext, /*with_swaps=*/false, /*inverted=*/false);
  grid(ext, -1);
  append_qft(circuit, ext, /*with_swaps=*/false, /*inverted=*/true);

  circuit.add(make_x(carry, {t}));

  append_qft(circuit, w, /*with_swaps=*/false, /*inverted=*/false);
  grid(w, +1);
  append_qft(circuit, w, /*with_swaps=*/false, /*inverted=*/true);
}

}  // namespace detail

/// |x>|y> -> |x>|(x+y) mod N> for basis values x, y < N. Both registers have
/// the modulus width n; aux supplies the ripple scratch and the transfer
/// qubit, so the whole map lives on 2n+2 qubits.
inline Circuit var_mod_add(std::span<const std::size_t> x_group,
                           std::span<const std::size_t> y_group,
                           std::span<const std::size_t> aux_group,
                           std::uint64_t modulus) {
  if (aux_group.size() < 2) throw CapacityError("modular adder needs 2 aux qubits");
  ensure_disjoint({x_group, y_group, aux_group});
  Circuit circuit(required_width({x_group, y_group, aux_group}));
  detail::append_var_mod_add(circuit, x_group, y_group, aux_group[0], aux_group[1],
                             modulus);
  return circuit;
}

/// |x> -> |2x mod N> for odd N and x < N, with one clean aux qubit; n+1
/// qubits in total.
inline Circuit mod_double(std::span<const std::size_t> x_group, std::size_t aux,
                          std::uint64_t modulus) {
  ensure_disjoint({x_group, {&aux, 1}});
  Circuit circuit(required_width({x_group, {&aux, 1}}));
  detail::append_mod_double(circuit, x_group, aux, modulus);
  return circuit;
}

/// |x>|y>|0> -> |x>|y>|x*y mod N> for odd N and y < N: Horner evaluation
/// from x's top bit down, one modular doubling of the accumulator between
/// the controlled modular additions of y. x may have any width; y and the
/// result have the modulus width n. With an n-bit x the footprint is 3n+2
/// qubits.
inline Circuit var_mod_mul(std::span<const std::size_t> x_group,
                           std::span<const std::size_t> y_group,
                           std::span<const std::size_t> result_group,
                           std::span<const std::size_t> aux_group,
                           std::uint64_t modulus) {
  if (x_group.empty()) throw StructuralError("multiplier register must not be empty");
  if (aux_group.size() < 2) throw CapacityError("modular multiplier needs 2 aux qubits");
  if (result_group.size() != modulus_register_width(modulus)) {
    throw StructuralError("result width must match the modulus");
  }
  if (modulus % 2 == 0) throw DomainError("multiplication modulus must be odd");
  ensure_disjoint({x_group, y_group, result_group, aux_group});
  Circuit circuit(required_width({x_group, y_group, result_group, aux_group}));
  for (std::size_t i = x_group.size(); i-- > 0;) {
    if (i + 1 != x_group.size()) {
      detail::append_mod_double(circuit, result_group, aux_group[1], modulus);
    }
    detail::append_var_mod_add(circuit, y_group, result_group, aux_group[0],
                               aux_group[1], modulus, {x_group[i]});
  }
  return circuit;
}

/// |x>|0> -> |x>|x^2 mod N> for odd N and x < N on 2n+2 qubits: the Horner
/// loop of the multiplier with the operand playing both roles. Each round
/// copies bit x_i onto the control qubit with a CNOT, runs the Fourier-basis
/// modular adder of x under it (the copy exists because a rotation cannot be
/// controlled on the same qubit twice), and uncopies. aux[0] doubles as the
/// adder carry and the doubling ancilla, aux[1] is the control copy.
inline Circuit var_mod_square(std::span<const std::size_t> x_group,
                              std::span<const std::size_t> result_group,
                              std::span<const std::size_t> aux_group,
                              std::uint64_t modulus) {
  if (aux_group.size() < 2) throw CapacityError("modular squarer needs 2 aux qubits");
  const std::size_t n = modulus_register_width(modulus);
  if (x_group.size() != n || result_group.size() != n) {
    throw StructuralError("squarer registers must match the modulus width");
  }
  if (modulus % 2 == 0) throw DomainError("squaring modulus must be odd");
  ensure_disjoint({x_group, result_group, aux_group});
  Circuit circuit(required_width({x_group, result_group, aux_group}));
  for (std::size_t i = n; i-- > 0;) {
    if (i + 1 != n) {
      detail::append_mod_double(circuit, result_group, aux_group[0], modulus);
    }
    circuit.add(make_x(aux_group[1], {x_group[i]}));
    detail::append_fourier_var_mod_add(circuit, x_group, result_group, aux_group[0],
                                       aux_group[1], modulus);
    circuit.add(make_x(aux_group[1], {x_group[i]}));
  }
  return circuit;
}

}  // namespace qarith
