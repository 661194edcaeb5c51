// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/error.hpp"
#include "qarith/layout.hpp"

namespace qarith {

/// A register with an optional sign qubit above the value bits. Negative
/// numbers travel as sign bit 1 plus the two's complement of the magnitude
/// in the value bits, produced on demand by complement_circuit; the sign
/// qubit doubles as the most significant bit under that encoding. `point`
/// tracks a fixed binary point for callers that scale their integers; it has
/// no circuit effect except that products carry twice the input point.
struct SignedRegisterSpec {
  std::vector<std::size_t> qubits;  // least significant bit first, sign last
  bool has_sign = true;
  std::size_t point = 0;

  std::size_t width() const { return qubits.size(); }

  std::size_t value_width() const { return qubits.size() - (has_sign ? 1 : 0); }

  std::span<const std::size_t> value_bits() const {
    return std::span<const std::size_t>(qubits).subspan(0, value_width());
  }

  std::size_t sign_bit() const {
    if (!has_sign) throw StructuralError("register has no sign qubit");
    return qubits.back();
  }
};

inline SignedRegisterSpec signed_register(std::span<const std::size_t> qubits,
                                          std::size_t point = 0) {
  if (qubits.size() < 2) {
    throw StructuralError("a signed register needs a value bit and a sign bit");
  }
  return SignedRegisterSpec{{qubits.begin(), qubits.end()}, true, point};
}

namespace detail {

/// |c,b,a> -> |a^c, a^b, MAJ(a,b,c)>: the running carry moves onto the a
/// wire. Two CNOTs and one Toffoli.
inline void append_maj(Circuit& circuit, std::size_t c, std::size_t b, std::size_t a,
                       const std::vector<std::size_t>& controls = {}) {
  circuit.add(make_x(b, with(controls, a)));
  circuit.add(make_x(c, with(controls, a)));
  circuit.add(make_x(a, with(controls, c, b)));
}

/// Inverse bookkeeping of append_maj that leaves the sum bit on the b wire
/// and restores c and a.
inline void append_uma(Circuit& circuit, std::size_t c, std::size_t b, std::size_t a,
                       const std::vector<std::size_t>& controls = {}) {
  circuit.add(make_x(a, with(controls, c, b)));
  circuit.add(make_x(c, with(controls, a)));
  circuit.add(make_x(b, with(controls, c)));
}

/// Ripple adder: result += addend mod 2^n, addend preserved, carry ancilla
/// restored. With carry_out, that qubit is XORed with the top carry, making
/// the map an exact (n+1)-bit addition when the carry qubit is taken as the
/// result's most significant bit.
inline void append_adder(Circuit& circuit, std::span<const std::size_t> result,
                         std::span<const std::size_t> addend, std::size_t carry_anc,
                         std::optional<std::size_t> carry_out,
                         const std::vector<std::size_t>& controls = {}) {
  const std::size_t n = result.size();
  if (n == 0 || addend.size() != n) {
    throw StructuralError("adder registers must have equal nonzero width");
  }
  std::size_t carry = carry_anc;
  for (std::size_t i = 0; i < n; ++i) {
    append_maj(circuit, carry, result[i], addend[i], controls);
    carry = addend[i];
  }
  if (carry_out) circuit.add(make_x(*carry_out, with(controls, addend[n - 1])));
  for (std::size_t i = n; i-- > 0;) {
    carry = i == 0 ? carry_anc : addend[i - 1];
    append_uma(circuit, carry, result[i], addend[i], controls);
  }
}

/// reg += 1 mod 2^width: a descending multi-controlled X ladder (bit j flips
/// when all lower bits are set).
inline void append_increment(Circuit& circuit, std::span<const std::size_t> reg,
                             const std::vector<std::size_t>& controls = {}) {
  for (std::size_t j = reg.size(); j-- > 1;) {
    std::vector<std::size_t> gate_controls = controls;
    gate_controls.insert(gate_controls.end(), reg.begin(), reg.begin() + j);
    circuit.add(make_x(reg[j], std::move(gate_controls)));
  }
  circuit.add(make_x(reg[0], controls));
}

/// Two's complement of the value bits when the sign qubit is set: the sign
/// is copied onto a clean control qubit, the value bits are inverted and
/// incremented under it, and the copy is undone. Applying it twice is the
/// identity, so the same circuit encodes and decodes.
inline void append_complement(Circuit& circuit, const SignedRegisterSpec& reg,
                              std::size_t control_aux,
                              const std::vector<std::size_t>& controls = {}) {
  if (!reg.has_sign) throw StructuralError("complement needs a signed register");
  circuit.add(make_x(control_aux, with(controls, reg.sign_bit())));
  for (std::size_t v : reg.value_bits()) {
    circuit.add(make_x(v, with(controls, control_aux)));
  }
  append_increment(circuit, reg.value_bits(), with(controls, control_aux));
  circuit.add(make_x(control_aux, with(controls, reg.sign_bit())));
}

/// Sign-aware a += b or a -= b over the full width including sign bits:
/// both operands are complemented into two's-complement form, the plain
/// ripple adder (or its inverse) runs, and both are complemented back.
inline void append_signed_sum(Circuit& circuit, const SignedRegisterSpec& a,
                              const SignedRegisterSpec& b, std::size_t scratch0,
                              std::size_t scratch1, bool subtract,
                              const std::vector<std::size_t>& controls = {}) {
  if (a.width() != b.width()) {
    throw StructuralError("signed operands must have equal width");
  }
  append_complement(circuit, a, scratch0, controls);
  append_complement(circuit, b, scratch0, controls);
  Circuit sum(circuit.qubit_count());
  append_adder(sum, a.qubits, b.qubits, scratch1, std::nullopt, controls);
  circuit.append(subtract ? inverse(sum) : sum);
  append_complement(circuit, b, scratch0, controls);
  append_complement(circuit, a, scratch0, controls);
}

/// Flips `target` when reg holds exactly `value` (and all extra controls
/// are set): zero bits of the pattern are X-wrapped around one
/// multi-controlled X.
inline void append_equality_flip(Circuit& circuit, std::span<const std::size_t> reg,
                                 std::uint64_t value, std::size_t target,
                                 const std::vector<std::size_t>& extra_controls = {}) {
  std::vector<std::size_t> zero_bits;
  for (std::size_t j = 0; j < reg.size(); ++j) {
    if (((value >> j) & 1u) == 0) zero_bits.push_back(reg[j]);
  }
  for (std::size_t q : zero_bits) circuit.add(make_x(q));
  std::vector<std::size_t> gate_controls(reg.begin(), reg.end());
  gate_controls.insert(gate_controls.end(), extra_controls.begin(),
                       extra_controls.end());
  circuit.add(make_x(target, std::move(gate_controls)));
  for (std::size_t q : zero_bits) circuit.add(make_x(q));
}

}  // namespace detail

/// a += b mod 2^n with b preserved. aux_carry supplies the carry-chain
/// ancilla (returned to |0>) and, with keep_carry, a second qubit that
/// receives the top carry so the full (n+1)-bit sum survives.
inline Circuit adder(std::span<const std::size_t> a_group,
                     std::span<const std::size_t> b_group,
                     std::span<const std::size_t> aux_carry, bool keep_carry) {
  const std::size_t need = keep_carry ? 2 : 1;
  if (aux_carry.size() < need) {
    throw CapacityError("adder needs " + std::to_string(need) + " aux qubit(s)");
  }
  ensure_disjoint({a_group, b_group, aux_carry});
  Circuit circuit(required_width({a_group, b_group, aux_carry}));
  detail::append_adder(circuit, a_group, b_group, aux_carry[0],
                       keep_carry ? std::optional<std::size_t>(aux_carry[1])
                                  : std::nullopt);
  return circuit;
}

/// Conditional two's complement of the value bits under the sign bit; see
/// detail::append_complement.
inline Circuit complement_circuit(const SignedRegisterSpec& reg,
                                  std::size_t control_aux) {
  ensure_disjoint({reg.qubits, {&control_aux, 1}});
  Circuit circuit(required_width({reg.qubits, {&control_aux, 1}}));
  detail::append_complement(circuit, reg, control_aux);
  return circuit;
}

/// a += b on sign-carrying registers (wraps mod 2^width on overflow, like
/// the two's-complement arithmetic it is built on). aux must offer
/// width + 2 clean qubits; two are used, all come back clean.
inline Circuit signed_add(const SignedRegisterSpec& a, const SignedRegisterSpec& b,
                          std::span<const std::size_t> aux) {
  if (aux.size() < a.width() + 2) {
    throw CapacityError("signed add needs width + 2 aux qubits");
  }
  ensure_disjoint({a.qubits, b.qubits, aux});
  Circuit circuit(required_width({a.qubits, b.qubits, aux}));
  detail::append_signed_sum(circuit, a, b, aux[0], aux[1], /*subtract=*/false);
  return circuit;
}

/// a -= b, the exact inverse of signed_add's sum stage.
inline Circuit signed_sub(const SignedRegisterSpec& a, const SignedRegisterSpec& b,
                          std::span<const std::size_t> aux) {
  if (aux.size() < a.width() + 2) {
    throw CapacityError("signed sub needs width + 2 aux qubits");
  }
  ensure_disjoint({a.qubits, b.qubits, aux});
  Circuit circuit(required_width({a.qubits, b.qubits, aux}));
  detail::append_signed_sum(circuit, a, b, aux[0], aux[1], /*subtract=*/true);
  return circuit;
}

/// result = a * b by shift-and-add: one adder of b into the result window
/// starting at bit i, controlled on a's bit i. Unsigned mode treats the full
/// registers as magnitudes and needs result width 2w and w+1 aux qubits;
/// signed mode multiplies the value bits, XORs the sign bits into the result
/// sign, and needs result width 2w-1 and w aux qubits. The result register
/// must start at |0>.
inline Circuit multiplier(std::span<const std::size_t> a_group,
                          std::span<const std::size_t> b_group,
                          std::span<const std::size_t> aux_group,
                          std::span<const std::size_t> result_group, bool is_signed) {
  const std::size_t w = a_group.size();
  if (w == 0 || b_group.size() != w) {
    throw StructuralError("multiplier operands must have equal nonzero width");
  }
  if (is_signed && w < 2) {
    throw StructuralError("signed multiplier operands need a sign bit");
  }
  const std::size_t need_aux = is_signed ? w : w + 1;
  const std::size_t need_result = is_signed ? 2 * w - 1 : 2 * w;
  if (aux_group.size() < need_aux) {
    throw CapacityError("multiplier needs " + std::to_string(need_aux) + " aux qubits");
  }
  if (result_group.size() != need_result) {
    throw StructuralError("multiplier result register must have width " +
                          std::to_string(need_result));
  }
  ensure_disjoint({a_group, b_group, aux_group, result_group});
  Circuit circuit(required_width({a_group, b_group, aux_group, result_group}));
  const std::size_t value_w = is_signed ? w - 1 : w;
  std::span<const std::size_t> a_value = a_group.subspan(0, value_w);
  std::span<const std::size_t> b_value = b_group.subspan(0, value_w);
  for (std::size_t i = 0; i < value_w; ++i) {
    std::span<const std::size_t> window = result_group.subspan(i, value_w);
    detail::append_adder(circuit, window, b_value, aux_group[0],
                         result_group[i + value_w], {a_group[i]});
  }
  if (is_signed) {
    const std::size_t result_sign = result_group[2 * w - 2];
    circuit.add(make_x(result_sign, {a_group[w - 1]}));
    circuit.add(make_x(result_sign, {b_group[w - 1]}));
  }
  return circuit;
}

/// Restoring division by repeated subtraction, fully unrolled:
/// |a>|b>|0>|0...> -> |a mod b>|b>|a/b>|0...> for a >= 0, b > 0.
///
/// Each of the 2^m rounds (m = dividend value width) recomputes a running
/// flag g = [quotient == round - 1], which holds exactly while the
/// subtraction chain has not yet driven the dividend negative. Under g the
/// round subtracts b and increments the quotient if the result stayed
/// non-negative; g is then uncomputed from the quotient and the dividend's
/// sign. After the last round the dividend holds (a mod b) - b, and a single
/// unconditional re-addition of b leaves the remainder.
inline Circuit divider(const SignedRegisterSpec& a, const SignedRegisterSpec& b,
                       std::span<const std::size_t> quotient_group,
                       std::span<const std::size_t> aux) {
  const std::size_t w = a.width();
  if (b.width() != w) throw StructuralError("divider operands must have equal width");
  if (quotient_group.size() != w) {
    throw StructuralError("quotient register must match the dividend width");
  }
  if (aux.size() < 3) throw CapacityError("divider needs 3 aux qubits");
  if (a.value_width() > 16) throw CapacityError("divider unrolls 2^m rounds; m > 16 refused");
  ensure_disjoint({a.qubits, b.qubits, quotient_group, aux});
  Circuit circuit(required_width({a.qubits, b.qubits, quotient_group, aux}));
  const std::size_t flag = aux[2];
  const std::size_t sign = a.sign_bit();
  const std::uint64_t rounds = std::uint64_t{1} << a.value_width();
  for (std::uint64_t r = 1; r <= rounds; ++r) {
    detail::append_equality_flip(circuit, quotient_group, r - 1, flag);
    detail::append_signed_sum(circuit, a, b, aux[0], aux[1], /*subtract=*/true,
                              {flag});
    circuit.add(make_x(sign));
    detail::append_increment(circuit, quotient_group, {flag, sign});
    detail::append_equality_flip(circuit, quotient_group, r, flag, {sign});
    circuit.add(make_x(sign));
    detail::append_equality_flip(circuit, quotient_group, r - 1, flag, {sign});
  }
  detail::append_signed_sum(circuit, a, b, aux[0], aux[1], /*subtract=*/false);
  return circuit;
}

}  // namespace qarith
