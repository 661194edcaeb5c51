// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/error.hpp"

namespace qarith {

/// Dense statevector over 2^n amplitudes. Qubit 0 is the least significant
/// bit of the basis index: basis state |x> sits at amplitude index x with
/// qubit i holding bit i of x.
struct StateVector {
  std::size_t qubit_count = 0;
  std::vector<std::complex<double>> amplitudes;
};

/// Hard ceiling on simulated qubits (4 GiB of amplitudes at 28).
inline constexpr std::size_t kMaxQubits = 28;

/// |0...0> on `qubit_count` qubits.
inline StateVector new_state(std::size_t qubit_count) {
  if (qubit_count == 0) throw CapacityError("simulator needs at least one qubit");
  if (qubit_count > kMaxQubits) {
    throw CapacityError("statevector limited to " + std::to_string(kMaxQubits) +
                        " qubits, requested " + std::to_string(qubit_count));
  }
  StateVector state;
  state.qubit_count = qubit_count;
  state.amplitudes.assign(std::size_t{1} << qubit_count, {0.0, 0.0});
  state.amplitudes[0] = {1.0, 0.0};
  return state;
}

/// Basis state |value> on `qubit_count` qubits.
inline StateVector basis_state(std::size_t qubit_count, std::uint64_t value) {
  StateVector state = new_state(qubit_count);
  if (value >> qubit_count != 0) {
    throw StructuralError("basis value does not fit the register");
  }
  state.amplitudes[0] = {0.0, 0.0};
  state.amplitudes[value] = {1.0, 0.0};
  return state;
}

namespace detail {

inline std::uint64_t bit_mask(std::span<const std::size_t> qubits,
                              std::size_t qubit_count) {
  std::uint64_t mask = 0;
  for (std::size_t q : qubits) {
    if (q >= qubit_count) throw StructuralError("qubit index outside the state");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if ((mask & bit) != 0) throw StructuralError("duplicate qubit in register");
    mask |= bit;
  }
  return mask;
}

}  // namespace detail

/// Applies one gate in place. Controls of every kind are handled natively by
/// mask tests, so multi-controlled gates cost the same sweep as plain ones.
inline void apply_gate(StateVector& state, const Gate& gate) {
  const std::uint64_t ctrl = detail::bit_mask(gate.controls, state.qubit_count);
  const std::uint64_t size = std::uint64_t{1} << state.qubit_count;
  auto& amp = state.amplitudes;
  switch (gate.kind) {
    case GateKind::kX: {
      const std::uint64_t t = detail::bit_mask(gate.targets, state.qubit_count);
      for (std::uint64_t i = 0; i < size; ++i) {
        if ((i & ctrl) == ctrl && (i & t) == 0) std::swap(amp[i], amp[i | t]);
      }
      break;
    }
    case GateKind::kH: {
      const std::uint64_t t = detail::bit_mask(gate.targets, state.qubit_count);
      constexpr double inv_sqrt2 = 0.70710678118654752440;
      for (std::uint64_t i = 0; i < size; ++i) {
        if ((i & ctrl) == ctrl && (i & t) == 0) {
          const std::complex<double> lo = amp[i];
          const std::complex<double> hi = amp[i | t];
          amp[i] = (lo + hi) * inv_sqrt2;
          amp[i | t] = (lo - hi) * inv_sqrt2;
        }
      }
      break;
    }
    case GateKind::kSwap: {
      const std::uint64_t a = std::uint64_t{1} << gate.targets[0];
      const std::uint64_t b = std::uint64_t{1} << gate.targets[1];
      if (gate.targets[0] >= state.qubit_count || gate.targets[1] >= state.qubit_count) {
        throw StructuralError("qubit index outside the state");
      }
      for (std::uint64_t i = 0; i < size; ++i) {
        if ((i & ctrl) == ctrl && (i & a) != 0 && (i & b) == 0) {
          std::swap(amp[i], amp[(i ^ a) | b]);
        }
      }
      break;
    }
    case GateKind::kPhase:
    case GateKind::kControlledPhase: {
      const std::uint64_t t = detail::bit_mask(gate.targets, state.qubit_count);
      const std::uint64_t active = ctrl | t;
      const std::complex<double> phase = std::polar(1.0, gate.angle);
      for (std::uint64_t i = 0; i < size; ++i) {
        if ((i & active) == active) amp[i] *= phase;
      }
      break;
    }
  }
}

/// Runs a circuit on a state of exactly matching width.
inline void run(const Circuit& circuit, StateVector& state) {
  if (circuit.qubit_count() != state.qubit_count) {
    throw StructuralError("circuit width does not match the state");
  }
  for (const Gate& gate : circuit.gates()) apply_gate(state, gate);
}

/// Probability of each value of the listed qubits (first entry = bit 0 of
/// the reported value), all other qubits traced out. Index v of the result
/// holds P(v).
inline std::vector<double> marginal_distribution(const StateVector& state,
                                                 std::span<const std::size_t> qubits) {
  if (qubits.empty()) throw StructuralError("marginal needs at least one qubit");
  if (qubits.size() > 30) throw CapacityError("marginal register too wide to tabulate");
  detail::bit_mask(qubits, state.qubit_count);  // range + duplication guard below
  std::vector<double> prob(std::size_t{1} << qubits.size(), 0.0);
  const std::uint64_t size = std::uint64_t{1} << state.qubit_count;
  for (std::uint64_t i = 0; i < size; ++i) {
    std::uint64_t value = 0;
    for (std::size_t b = 0; b < qubits.size(); ++b) {
      value |= ((i >> qubits[b]) & 1u) << b;
    }
    prob[value] += std::norm(state.amplitudes[i]);
  }
  return prob;
}

/// Result of repeated measurement of one register.
struct MeasurementHistogram {
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  std::map<std::uint64_t, std::size_t> counts;
};

namespace detail {

/// Uniform double in [0, 1) built from the top 53 bits of the generator
/// output, so histograms are bit-for-bit reproducible across platforms.
inline double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t sample_index(const std::vector<double>& cumulative,
                                  std::mt19937_64& rng) {
  const double u = canonical(rng) * cumulative.back();
  std::size_t lo = 0;
  std::size_t hi = cumulative.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (cumulative[mid] > u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace detail

/// Samples the listed qubits `shots` times without collapsing the state.
/// The generator is std::mt19937_64 seeded directly with `seed`; identical
/// inputs give identical histograms.
inline MeasurementHistogram measure_register(const StateVector& state,
                                             std::span<const std::size_t> qubits,
                                             std::size_t shots, std::uint64_t seed) {
  const std::vector<double> prob = marginal_distribution(state, qubits);
  std::vector<double> cumulative(prob.size());
  double total = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    total += prob[i];
    cumulative[i] = total;
  }
  MeasurementHistogram histogram;
  histogram.shots = shots;
  histogram.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < shots; ++s) {
    ++histogram.counts[detail::sample_index(cumulative, rng)];
  }
  return histogram;
}

/// Reads an integer out of a register of a (basis-like) state by taking the
/// most probable value of its marginal.
inline std::uint64_t most_probable(const StateVector& state,
                                   std::span<const std::size_t> qubits) {
  const std::vector<double> prob = marginal_distribution(state, qubits);
  std::size_t best = 0;
  for (std::size_t v = 1; v < prob.size(); ++v) {
    if (prob[v] > prob[best]) best = v;
  }
  return best;
}

/// Squared norm of the state (1 for any valid state).
inline double norm_squared(const StateVector& state) {
  double total = 0.0;
  for (const auto& a : state.amplitudes) total += std::norm(a);
  return total;
}

/// Evaluates a classical-reversible circuit on one basis state by pure bit
/// twiddling, without allocating amplitudes. Only X and SWAP (with any
/// controls) move basis states to basis states; phase gates are accepted
/// because they cannot change the value. H is rejected.
inline std::uint64_t apply_to_basis(const Circuit& circuit, std::uint64_t value) {
  if (circuit.qubit_count() < 64 && (value >> circuit.qubit_count()) != 0) {
    throw StructuralError("basis value does not fit the circuit");
  }
  for (const Gate& gate : circuit.gates()) {
    std::uint64_t ctrl = 0;
    for (std::size_t c : gate.controls) ctrl |= std::uint64_t{1} << c;
    if ((value & ctrl) != ctrl) continue;
    switch (gate.kind) {
      case GateKind::kX:
        value ^= std::uint64_t{1} << gate.targets[0];
        break;
      case GateKind::kSwap: {
        const std::uint64_t a = (value >> gate.targets[0]) & 1u;
        const std::uint64_t b = (value >> gate.targets[1]) & 1u;
        if (a != b) {
          value ^= (std::uint64_t{1} << gate.targets[0]) |
                   (std::uint64_t{1} << gate.targets[1]);
        }
        break;
      }
      case GateKind::kPhase:
      case GateKind::kControlledPhase:
        break;  // global phase on a basis state, value unchanged
      case GateKind::kH:
        throw StructuralError("H leaves the computational basis; use the statevector");
    }
  }
  return value;
}

/// Reads bits of `value` at the register's qubit positions as an integer.
inline std::uint64_t extract_bits(std::uint64_t value,
                                  std::span<const std::size_t> qubits) {
  std::uint64_t out = 0;
  for (std::size_t b = 0; b < qubits.size(); ++b) {
    out |= ((value >> qubits[b]) & 1u) << b;
  }
  return out;
}

/// Writes an integer into the register's qubit positions of `value`.
inline std::uint64_t deposit_bits(std::uint64_t value,
                                  std::span<const std::size_t> qubits,
                                  std::uint64_t field) {
  for (std::size_t b = 0; b < qubits.size(); ++b) {
    const std::uint64_t mask = std::uint64_t{1} << qubits[b];
    if ((field >> b) & 1u) {
      value |= mask;
    } else {
      value &= ~mask;
    }
  }
  return value;
}

}  // namespace qarith
