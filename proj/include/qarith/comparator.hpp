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

namespace qarith {

enum class Relation { kLess, kLessEqual, kGreater, kGreaterEqual };

namespace detail {

/// flag ^= [x < k] for 0 <= k <= 2^n: subtract k on the flag-extended
/// register (the flag picks up the borrow), then re-add k on the value
/// qubits. Two constant additions, four QFT blocks, exactly 2n^2 controlled
/// rotations.
inline void append_compare_const(Circuit& circuit, std::span<const std::size_t> x,
                                 std::size_t flag, std::uint64_t k) {
  const std::size_t n = x.size();
  std::vector<std::size_t> ext(x.begin(), x.end());
  ext.push_back(flag);
  append_const_add(circuit, ext, mod_2n(-k, n + 1));
  append_const_add(circuit, x, mod_2n(k, n));
}

/// flag ^= [a < b] for two registers of equal width: same borrow trick with
/// the subtrahend read off b as rotation controls.
inline void append_compare_register(Circuit& circuit, std::span<const std::size_t> a,
                                    std::span<const std::size_t> b, std::size_t flag) {
  std::vector<std::size_t> ext(a.begin(), a.end());
  ext.push_back(flag);
  append_var_add(circuit, ext, b, -1);
  append_var_add(circuit, a, b, +1);
}

}  // namespace detail

/// flag ^= [x <relation> a] with x restored; the flag qubit is the only
/// ancilla. All four relations run the same two-addition core (less-equal
/// and greater compare against a+1), so every variant costs four QFT blocks
/// and 2n^2 controlled rotations.
inline Circuit int_compare(std::span<const std::size_t> x_group, std::size_t flag,
                           std::uint64_t constant, Relation relation) {
  const std::size_t n = x_group.size();
  if (n == 0 || n > 61) throw CapacityError("comparison width out of range");
  if (n < 64 && (constant >> n) != 0) {
    throw DomainError("comparison constant must fit the register");
  }
  ensure_disjoint({x_group, {&flag, 1}});
  Circuit circuit(required_width({x_group, {&flag, 1}}));
  const bool shifted =
      relation == Relation::kLessEqual || relation == Relation::kGreater;
  detail::append_compare_const(circuit, x_group, flag, constant + (shifted ? 1 : 0));
  if (relation == Relation::kGreaterEqual || relation == Relation::kGreater) {
    circuit.add(make_x(flag));
  }
  return circuit;
}

/// flag ^= [x1 <relation> x2] for two registers of equal width, both
/// restored. Strict relations subtract one register from the other's
/// flag-extension; the non-strict ones run the swapped strict comparison
/// and invert the flag.
inline Circuit states_compare(std::span<const std::size_t> x1_group,
                              std::span<const std::size_t> x2_group, std::size_t flag,
                              Relation relation) {
  if (x1_group.size() != x2_group.size() || x1_group.empty()) {
    throw StructuralError("compared registers must have equal nonzero width");
  }
  ensure_disjoint({x1_group, x2_group, {&flag, 1}});
  Circuit circuit(required_width({x1_group, x2_group, {&flag, 1}}));
  switch (relation) {
    case Relation::kLess:
      detail::append_compare_register(circuit, x1_group, x2_group, flag);
      break;
    case Relation::kGreaterEqual:
      detail::append_compare_register(circuit, x1_group, x2_group, flag);
      circuit.add(make_x(flag));
      break;
    case Relation::kGreater:
      detail::append_compare_register(circuit, x2_group, x1_group, flag);
      break;
    case Relation::kLessEqual:
      detail::append_compare_register(circuit, x2_group, x1_group, flag);
      circuit.add(make_x(flag));
      break;
  }
  return circuit;
}

/// |x>|0> -> |x mod M>|[x < M]> over the full n-bit input range, which
/// pins M to [2^(n-1), 2^n) so that x < 2M always holds. The comparison
/// bit stays set as the record of whether a reduction happened.
inline Circuit mod_reduce(std::span<const std::size_t> x_group, std::size_t flag,
                          std::uint64_t modulus) {
  const std::size_t n = x_group.size();
  if (n == 0 || n > 61) throw CapacityError("reduction width out of range");
  const std::uint64_t lo = std::uint64_t{1} << (n - 1);
  const std::uint64_t hi = std::uint64_t{1} << n;
  if (modulus < lo || modulus >= hi) {
    throw DomainError("reduction modulus must lie in [2^(n-1), 2^n)");
  }
  ensure_disjoint({x_group, {&flag, 1}});
  Circuit circuit(required_width({x_group, {&flag, 1}}));
  std::vector<std::size_t> ext(x_group.begin(), x_group.end());
  ext.push_back(flag);
  detail::append_const_add(circuit, ext, detail::mod_2n(-modulus, n + 1));
  detail::append_const_add(circuit, x_group, detail::mod_2n(modulus, n), {flag});
  return circuit;
}

/// |x>|0> -> |(x+a) mod M>|[x+a < M]>: one subtraction of M-a on the
/// flag-extended register and one flag-conditioned re-addition of M. The
/// flag is left holding the comparison. Valid while x+a < 2M: with
/// full_space the input may fill all n bits and a is capped at 2M - 2^n,
/// otherwise x < M is assumed and a < M is required.
inline Circuit reduced_mod_add(std::span<const std::size_t> x_group, std::size_t flag,
                               std::uint64_t constant, std::uint64_t modulus,
                               bool full_space) {
  const std::size_t n = x_group.size();
  if (n == 0 || n > 61) throw CapacityError("adder width out of range");
  const std::uint64_t span = std::uint64_t{1} << n;
  if (modulus < 2 || modulus > span) {
    throw DomainError("modulus must lie in [2, 2^n]");
  }
  if (full_space) {
    if (2 * modulus < span || constant > 2 * modulus - span) {
      throw DomainError("constant must not exceed 2M - 2^n on the full input range");
    }
  } else if (constant >= modulus) {
    throw DomainError("constant must be below the modulus");
  }
  ensure_disjoint({x_group, {&flag, 1}});
  Circuit circuit(required_width({x_group, {&flag, 1}}));
  std::vector<std::size_t> ext(x_group.begin(), x_group.end());
  ext.push_back(flag);
  detail::append_const_add(
      circuit, ext, detail::mod_2n(constant + detail::mod_2n(-modulus, n + 1), n + 1));
  detail::append_const_add(circuit, x_group, detail::mod_2n(modulus, n), {flag});
  return circuit;
}

/// |x>|0> -> |(x+a) mod M>|0> for x, a < M <= 2^n: the reduced adder
/// followed by the borrow-comparison uncomputation (subtract a, flip the
/// flag, re-add a), eight QFT blocks in total.
inline Circuit clean_mod_add(std::span<const std::size_t> x_group, std::size_t flag,
                             std::uint64_t constant, std::uint64_t modulus) {
  const std::size_t n = x_group.size();
  if (n == 0 || n > 61) throw CapacityError("adder width out of range");
  if (modulus < 2 || modulus > (std::uint64_t{1} << n)) {
    throw DomainError("modulus must lie in [2, 2^n]");
  }
  if (constant >= modulus) throw DomainError("constant must be below the modulus");
  ensure_disjoint({x_group, {&flag, 1}});
  Circuit circuit(required_width({x_group, {&flag, 1}}));
  std::vector<std::size_t> ext(x_group.begin(), x_group.end());
  ext.push_back(flag);
  detail::append_const_add(
      circuit, ext, detail::mod_2n(constant + detail::mod_2n(-modulus, n + 1), n + 1));
  detail::append_const_add(circuit, x_group, detail::mod_2n(modulus, n), {flag});
  detail::append_const_add(circuit, ext, detail::mod_2n(-constant, n + 1));
  circuit.add(make_x(flag));
  detail::append_const_add(circuit, x_group, detail::mod_2n(constant, n));
  return circuit;
}

/// Modular addition over the full n-bit input range: first reduce x mod M
/// into the comparison qubit, then run the clean adder on the reduced value
/// with a second ancilla. |x>|0>|0> -> |(x mod M + a) mod M>|[x < M]>|0>;
/// twelve QFT blocks.
inline Circuit fullspace_mod_add(std::span<const std::size_t> x_group, std::size_t flag,
                                 std::size_t anc, std::uint64_t constant,
                                 std::uint64_t modulus) {
  ensure_disjoint({x_group, {&flag, 1}, {&anc, 1}});
  Circuit circuit(required_width({x_group, {&flag, 1}, {&anc, 1}}));
  circuit.append(mod_reduce(x_group, flag, modulus));
  circuit.append(clean_mod_add(x_group, anc, constant, modulus));
  return circuit;
}

}  // namespace qarith
