// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/error.hpp"
#include "qarith/layout.hpp"
#include "qarith/qft.hpp"

namespace qarith {

// ---------------------------------------------------------------------------
// Classical helpers shared by the modular builders.

/// Smallest register width n with N <= 2^n (so every residue fits).
inline std::size_t modulus_register_width(std::uint64_t modulus) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
  return static_cast<std::size_t>(std::bit_width(modulus - 1));
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent,
                             std::uint64_t modulus) {
  if (modulus == 0) throw DomainError("modulus must be at least 1");
  std::uint64_t result = 1 % modulus;
  base %= modulus;
  while (exponent != 0) {
    if (exponent & 1u) result = mul_mod(result, base, modulus);
    base = mul_mod(base, base, modulus);
    exponent >>= 1;
  }
  return result;
}

/// Multiplicative inverse of a mod m via the extended Euclid recurrence.
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m < 2) throw DomainError("modulus must be at least 2");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m);
  std::int64_t new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw DomainError("value has no inverse for this modulus");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

// ---------------------------------------------------------------------------
// Phase schedules.

/// Rotation angles that add a classical constant to a register sitting in
/// the swapless Fourier basis: qubit k receives
///   theta_k = 2*pi * (a mod 2^(k+1)) / 2^(k+1),
/// i.e. only bits a_0..a_k of the constant contribute to qubit k.
struct PhaseSchedule {
  std::uint64_t constant = 0;
  std::size_t width = 0;
  std::vector<double> angles;
};

inline PhaseSchedule phase_angles(std::uint64_t constant, std::size_t width) {
  if (width == 0 || width > 62) throw CapacityError("phase schedule width out of range");
  if (width < 64 && (constant >> width) != 0) {
    throw DomainError("constant does not fit the register width");
  }
  PhaseSchedule schedule;
  schedule.constant = constant;
  schedule.width = width;
  schedule.angles.reserve(width);
  for (std::size_t k = 0; k < width; ++k) {
    const std::uint64_t wheel = std::uint64_t{1} << (k + 1);
    const std::uint64_t residue = constant & (wheel - 1);
    schedule.angles.push_back(kTau * static_cast<double>(residue) /
                              static_cast<double>(wheel));
  }
  return schedule;
}

namespace detail {

/// Angle by which addend bit i rotates Fourier qubit p: 2*pi * 2^i / 2^(p+1),
/// reduced to zero whenever it is a whole number of turns.
inline double fourier_pair_angle(std::size_t addend_bit, std::size_t fourier_qubit) {
  if (addend_bit > fourier_qubit) return 0.0;
  return kTau * std::ldexp(1.0, static_cast<int>(addend_bit) -
                                    static_cast<int>(fourier_qubit) - 1);
}

/// One constant-addition block: swapless QFT, one phase per qubit (controls
/// applied to the phases only, so an unset control collapses the block to
/// QFT followed by its inverse), swapless inverse QFT. Adds `constant`
/// mod 2^width to the register.
inline void append_const_add(Circuit& circuit, std::span<const std::size_t> reg,
                             std::uint64_t constant,
                             const std::vector<std::size_t>& controls = {}) {
  const PhaseSchedule schedule = phase_angles(constant, reg.size());
  append_qft(circuit, reg, /*with_swaps=*/false, /*inverted=*/false);
  for (std::size_t k = 0; k < reg.size(); ++k) {
    circuit.add(make_phase(reg[k], schedule.angles[k], controls));
  }
  append_qft(circuit, reg, /*with_swaps=*/false, /*inverted=*/true);
}

/// Like append_const_add but the addend is a quantum register: each addend
/// bit contributes one controlled rotation per Fourier qubit (a full
/// |addend| x |reg| grid, kept uniform so rotation counts are predictable).
/// Sign -1 subtracts instead of adding.
inline void append_var_add(Circuit& circuit, std::span<const std::size_t> reg,
                           std::span<const std::size_t> addend, int sign,
                           const std::vector<std::size_t>& controls = {}) {
  append_qft(circuit, reg, /*with_swaps=*/false, /*inverted=*/false);
  for (std::size_t i = 0; i < addend.size(); ++i) {
    for (std::size_t p = 0; p < reg.size(); ++p) {
      double angle = fourier_pair_angle(i, p);
      if (sign < 0) angle = -angle;
      std::vector<std::size_t> gate_controls{addend[i]};
      gate_controls.insert(gate_controls.end(), controls.begin(), controls.end());
      circuit.add(make_phase(reg[p], angle, std::move(gate_controls)));
    }
  }
  append_qft(circuit, reg, /*with_swaps=*/false, /*inverted=*/true);
}

inline std::uint64_t mod_2n(std::uint64_t value, std::size_t width) {
  return width >= 64 ? value : value & ((std::uint64_t{1} << width) - 1);
}

/// Constant modular addition with one clean carry ancilla, for x < N and
/// a < N on a register of modulus_register_width(N) qubits:
///   1. add (a - N) on the carry-extended register; the carry bit ends 1
///      exactly when x + a < N (the sum wrapped below zero),
///   2. add N back onto the value qubits under that carry,
///   3. subtract a on the extended register; both branches now leave the
///      carry set, so a plain X resets it,
///   4. re-add a on the value qubits.
inline void append_const_mod_add(Circuit& circuit, std::span<const std::size_t> x,
                                 std::size_t aux, std::uint64_t constant,
                                 std::uint64_t modulus,
                                 const std::vector<std::size_t>& controls = {}) {
  const std::size_t n = x.size();
  if (n != modulus_register_width(modulus)) {
    throw StructuralError("register width must match the modulus");
  }
  if (constant >= modulus) throw DomainError("constant must be below the modulus");
  std::vector<std::size_t> ext(x.begin(), x.end());
  ext.push_back(aux);
  const std::size_t ext_width = n + 1;
  append_const_add(circuit, ext, mod_2n(constant + mod_2n(-modulus, ext_width), ext_width),
                   controls);
  std::vector<std::size_t> carry_controls{aux};
  carry_controls.insert(carry_controls.end(), controls.begin(), controls.end());
  append_const_add(circuit, x, mod_2n(modulus, n), carry_controls);
  append_const_add(circuit, ext, mod_2n(-constant, ext_width), controls);
  circuit.add(make_x(aux, controls));
  append_const_add(circuit, x, mod_2n(constant, n), controls);
}

/// Modular multiply-accumulate: b += a*x mod N, one conditional modular
/// addition of (a * 2^i) mod N per bit of x.
inline void append_const_mod_addmul(Circuit& circuit, std::span<const std::size_t> x,
                                    std::span<const std::size_t> b, std::size_t aux,
                                    std::uint64_t a, std::uint64_t modulus,
                                    const std::vector<std::size_t>& controls = {}) {
  std::uint64_t shifted = a % modulus;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<std::size_t> bit_controls{x[i]};
    bit_controls.insert(bit_controls.end(), controls.begin(), controls.end());
    append_const_mod_add(circuit, b, aux, shifted, modulus, bit_controls);
    shifted = mul_mod(shifted, 2, modulus);
  }
}

/// In-place modular multiply: multiply-accumulate into the zero register,
/// swap the registers, then uncompute the old value with the inverse
/// multiply-accumulate of a^-1.
inline void append_const_mod_mul(Circuit& circuit, std::span<const std::size_t> x,
                                 std::span<const std::size_t> zero, std::size_t aux,
                                 std::uint64_t a, std::uint64_t modulus,
                                 const std::vector<std::size_t>& controls = {}) {
  const std::uint64_t reduced = a % modulus;
  if (std::gcd(reduced, modulus) != 1) {
    throw DomainError("multiplier must be coprime to the modulus");
  }
  append_const_mod_addmul(circuit, x, zero, aux, reduced, modulus, controls);
  for (std::size_t i = 0; i < x.size(); ++i) {
    circuit.add(make_swap(x[i], zero[i], controls));
  }
  Circuit undo(circuit.qubit_count());
  append_const_mod_addmul(undo, x, zero, aux, inverse_mod(reduced, modulus), modulus,
                          controls);
  circuit.append(inverse(undo));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public builders.

/// x += a mod 2^width on the plain register (QFT, one phase per qubit,
/// inverse QFT). Subtraction is addition of 2^width - a.
inline Circuit const_add(std::span<const std::size_t> x_group, std::uint64_t constant) {
  ensure_disjoint({x_group});
  Circuit circuit(required_width({x_group}));
  detail::append_const_add(circuit, x_group, constant);
  return circuit;
}

/// x = (x + a) mod N for x < N, a < N, with one clean carry ancilla that is
/// returned to |0>.
inline Circuit const_mod_add(std::span<const std::size_t> x_group, std::size_t aux,
                             std::uint64_t constant, std::uint64_t modulus) {
  ensure_disjoint({x_group, {&aux, 1}});
  Circuit circuit(required_width({x_group, {&aux, 1}}));
  detail::append_const_mod_add(circuit, x_group, aux, constant, modulus);
  return circuit;
}

/// |x>|b> -> |x>|(b + a*x) mod N>, for b < N basis inputs. x is read only.
inline Circuit const_mod_addmul(std::span<const std::size_t> x_group,
                                std::span<const std::size_t> b_group, std::size_t aux,
                                std::uint64_t a, std::uint64_t modulus) {
  ensure_disjoint({x_group, b_group, {&aux, 1}});
  if (b_group.size() != modulus_register_width(modulus)) {
    throw StructuralError("accumulator width must match the modulus");
  }
  Circuit circuit(required_width({x_group, b_group, {&aux, 1}}));
  detail::append_const_mod_addmul(circuit, x_group, b_group, aux, a % modulus, modulus);
  return circuit;
}

/// |x>|0> -> |(a*x) mod N>|0> for gcd(a, N) = 1; the companion register and
/// the carry ancilla come back clean. Uses 2n+1 qubits for an n-bit modulus.
inline Circuit const_mod_mul(std::span<const std::size_t> x_group,
                             std::span<const std::size_t> zero_group, std::size_t aux,
                             std::uint64_t a, std::uint64_t modulus) {
  ensure_disjoint({x_group, zero_group, {&aux, 1}});
  const std::size_t n = modulus_register_width(modulus);
  if (x_group.size() != n || zero_group.size() != n) {
    throw StructuralError("multiplier registers must match the modulus width");
  }
  Circuit circuit(required_width({x_group, zero_group, {&aux, 1}}));
  detail::append_const_mod_mul(circuit, x_group, zero_group, aux, a, modulus);
  return circuit;
}

/// |x>|0>|0> -> |x>|base^x mod N>|0>: the result register is seeded to |1>
/// with an X and one controlled in-place multiplication by base^(2^i) mod N
/// runs per exponent bit. work_group supplies the multiplier's companion
/// register plus its carry ancilla (n+1 qubits); total footprint for an
/// n-bit modulus and an n-bit exponent is 3n+1 qubits.
inline Circuit const_mod_exp(std::span<const std::size_t> x_group,
                             std::span<const std::size_t> result_group,
                             std::span<const std::size_t> work_group,
                             std::uint64_t base, std::uint64_t modulus) {
  ensure_disjoint({x_group, result_group, work_group});
  const std::size_t n = modulus_register_width(modulus);
  if (result_group.size() != n) {
    throw StructuralError("result register must match the modulus width");
  }
  if (work_group.size() != n + 1) {
    throw StructuralError("work register needs modulus width plus one carry qubit");
  }
  const std::uint64_t reduced = base % modulus;
  if (std::gcd(reduced, modulus) != 1) {
    throw DomainError("base must be coprime to the modulus");
  }
  Circuit circuit(required_width({x_group, result_group, work_group}));
  circuit.add(make_x(result_group[0]));
  std::span<const std::size_t> companion = work_group.subspan(0, n);
  const std::size_t aux = work_group[n];
  std::uint64_t factor = reduced;
  for (std::size_t i = 0; i < x_group.size(); ++i) {
    detail::append_const_mod_mul(circuit, result_group, companion, aux, factor,
                                 modulus, {x_group[i]});
    factor = mul_mod(factor, factor, modulus);
  }
  return circuit;
}

}  // namespace qarith
