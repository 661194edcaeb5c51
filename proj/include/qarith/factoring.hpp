// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qarith/circuit.hpp"
#include "qarith/const_arith.hpp"
#include "qarith/error.hpp"
#include "qarith/qft.hpp"
#include "qarith/simulator.hpp"

namespace qarith {

// ---------------------------------------------------------------------------
// Classical number theory.

/// Deterministic Miller-Rabin over the witness set that is exact for every
/// 64-bit integer.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// Writes n as b^e with the largest possible exponent e >= 2, if n is a
/// perfect power.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> perfect_power(
    std::uint64_t n) {
  if (n < 4) return std::nullopt;
  for (unsigned e = 63; e >= 2; --e) {
    const double guess = std::pow(static_cast<double>(n), 1.0 / e);
    for (std::uint64_t b = static_cast<std::uint64_t>(guess) > 1
                               ? static_cast<std::uint64_t>(guess) - 1
                               : 2;
         b <= static_cast<std::uint64_t>(guess) + 1; ++b) {
      if (b < 2) continue;
      std::uint64_t power = 1;
      bool overflow = false;
      for (unsigned i = 0; i < e; ++i) {
        if (power > n / b) {
          overflow = true;
          break;
        }
        power *= b;
      }
      if (!overflow && power == n) return std::make_pair(b, std::uint64_t{e});
    }
  }
  return std::nullopt;
}

/// Smallest r >= 1 with a^r = 1 mod N; requires gcd(a, N) = 1.
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t modulus) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
  const std::uint64_t reduced = a % modulus;
  if (std::gcd(reduced, modulus) != 1) {
    throw DomainError("order undefined: base shares a factor with the modulus");
  }
  std::uint64_t value = reduced;
  std::uint64_t order = 1;
  while (value != 1) {
    value = mul_mod(value, reduced, modulus);
    ++order;
  }
  return order;
}

// ---------------------------------------------------------------------------
// Continued fractions.

struct Convergent {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
};

/// Convergents of value / 2^t in lowest terms. When the first two raw
/// convergents share denominator 1 only the later one is kept, so the
/// denominators are strictly increasing; value 0 yields the single
/// convergent 0/1.
inline std::vector<Convergent> dyadic_convergents(std::uint64_t value, std::size_t t) {
  if (t == 0 || t > 62) throw CapacityError("denominator exponent out of range");
  if ((value >> t) != 0) throw DomainError("value must be below 2^t");
  std::vector<Convergent> out;
  std::uint64_t u = value;
  std::uint64_t v = std::uint64_t{1} << t;
  std::uint64_t h_prev = 0, h = 1;  // numerators
  std::uint64_t k_prev = 1, k = 0;  // denominators
  while (true) {
    const std::uint64_t a = u / v;
    const std::uint64_t h_next = a * h + h_prev;
    const std::uint64_t k_next = a * k + k_prev;
    h_prev = std::exchange(h, h_next);
    k_prev = std::exchange(k, k_next);
    if (!out.empty() && out.back().denominator == k) {
      out.back() = Convergent{h, k};
    } else {
      out.push_back(Convergent{h, k});
    }
    const std::uint64_t r = u % v;
    if (r == 0) break;
    u = v;
    v = r;
  }
  return out;
}

/// Reads an order candidate off a counting-register measurement: every
/// convergent denominator of c/2^t and its small multiples (up to 4x) are
/// tested against a^d = 1 mod N, and the smallest hit wins.
inline std::optional<std::uint64_t> recover_order(std::uint64_t measurement,
                                                  std::size_t t, std::uint64_t base,
                                                  std::uint64_t modulus) {
  std::optional<std::uint64_t> best;
  for (const Convergent& conv : dyadic_convergents(measurement, t)) {
    for (std::uint64_t k = 1; k <= 4; ++k) {
      const std::uint64_t d = conv.denominator * k;
      if (d >= modulus) break;
      if (pow_mod(base, d, modulus) == 1 && (!best || d < *best)) best = d;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Order finding.

enum class OrderBackend { kStatevector, kGeometric };

/// Layout of the order-finding circuit: counting register first, then the
/// residue register, then the multiplier's companion and carry.
struct OrderFindingLayout {
  std::vector<std::size_t> counting;
  std::vector<std::size_t> result;
  std::vector<std::size_t> work;

  std::size_t qubit_count() const {
    return counting.size() + result.size() + work.size();
  }
};

inline OrderFindingLayout order_finding_layout(std::uint64_t modulus,
                                               std::size_t counting_width) {
  const std::size_t n = modulus_register_width(modulus);
  OrderFindingLayout layout;
  for (std::size_t i = 0; i < counting_width; ++i) layout.counting.push_back(i);
  for (std::size_t i = 0; i < n; ++i) layout.result.push_back(counting_width + i);
  for (std::size_t i = 0; i < n + 1; ++i) {
    layout.work.push_back(counting_width + n + i);
  }
  return layout;
}

/// |0>|0>|0> -> the full order-finding state for base a mod N: Hadamards on
/// the counting register, modular exponentiation into the residue register,
/// inverse QFT on the counting register. Measuring the counting register
/// afterwards gives the peaked distribution near multiples of 2^t / r.
inline Circuit order_finding_circuit(std::uint64_t modulus, std::uint64_t base,
                                     std::size_t counting_width) {
  if (counting_width == 0) throw StructuralError("counting register must not be empty");
  const OrderFindingLayout layout = order_finding_layout(modulus, counting_width);
  Circuit circuit(layout.qubit_count());
  for (std::size_t q : layout.counting) circuit.add(make_h(q));
  circuit.append(
      const_mod_exp(layout.counting, layout.result, layout.work, base, modulus));
  circuit.append(iqft_circuit(layout.counting, /*with_swaps=*/true));
  return circuit;
}

/// Exact counting-register distribution computed from the orbit structure,
/// with no state vector: exponents k with k = j mod r land on the same
/// residue, so each residue class contributes a geometric sum
/// g_m(x) = sum_{u<m} e^(2 pi i u x / 2^t) whose squared magnitude has the
/// closed form (sin(pi m x / M) / sin(pi x / M))^2. With M = 2^t = q r + s,
/// s classes have m = q+1 terms and r-s classes have m = q.
inline std::vector<double> order_finding_distribution(std::uint64_t modulus,
                                                      std::uint64_t base,
                                                      std::size_t counting_width) {
  if (counting_width == 0 || counting_width > 26) {
    throw CapacityError("counting width out of range");
  }
  const std::uint64_t r = multiplicative_order(base, modulus);
  const std::uint64_t size = std::uint64_t{1} << counting_width;
  const std::uint64_t q = size / r;
  const std::uint64_t s = size % r;
  const double m_size = static_cast<double>(size);
  const auto geometric_sq = [m_size](std::uint64_t terms, std::uint64_t x) {
    const double m = static_cast<double>(terms);
    if (x == 0) return m * m;
    const double phase = std::numbers::pi * static_cast<double>(x) / m_size;
    const double ratio = std::sin(m * phase) / std::sin(phase);
    return ratio * ratio;
  };
  std::vector<double> prob(size);
  for (std::uint64_t c = 0; c < size; ++c) {
    const std::uint64_t x = mul_mod(r, c, size);
    const double total = static_cast<double>(s) * geometric_sq(q + 1, x) +
                         static_cast<double>(r - s) * geometric_sq(q, x);
    prob[c] = total / (m_size * m_size);
  }
  return prob;
}

// ---------------------------------------------------------------------------
// The factoring driver.

struct FactorOptions {
  std::uint64_t seed = 1;
  std::size_t max_attempts = 64;
  std::optional<std::uint64_t> forced_base;
  OrderBackend backend = OrderBackend::kGeometric;
  std::size_t counting_width = 0;  // 0 picks twice the modulus width
  bool use_argmax = false;         // take the distribution peak instead of sampling
};

struct FactorAttempt {
  std::uint64_t base = 0;
  std::uint64_t measurement = 0;
  std::vector<Convergent> convergents;
  std::optional<std::uint64_t> order;
  std::string status;  // "factored", "shared-factor", "order-not-found",
                       // "odd-order" or "trivial-root"
};

struct FactorResult {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::string method;  // "even", "perfect-power", "gcd" or "order-finding"
  std::uint64_t base = 0;
  std::uint64_t order = 0;
  std::vector<FactorAttempt> attempts;
};

namespace detail {

inline std::uint64_t sample_distribution(const std::vector<double>& prob,
                                         std::mt19937_64& rng) {
  std::vector<double> cumulative(prob.size());
  double total = 0.0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    total += prob[i];
    cumulative[i] = total;
  }
  return sample_index(cumulative, rng);
}

inline std::uint64_t sample_order_measurement(std::uint64_t modulus,
                                              std::uint64_t base, std::size_t t,
                                              OrderBackend backend, bool use_argmax,
                                              std::mt19937_64& rng) {
  if (backend == OrderBackend::kGeometric) {
    const std::vector<double> prob = order_finding_distribution(modulus, base, t);
    if (use_argmax) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < prob.size(); ++c) {
        if (prob[c] > prob[best]) best = c;
      }
      return best;
    }
    return sample_distribution(prob, rng);
  }
  const OrderFindingLayout layout = order_finding_layout(modulus, t);
  StateVector state = new_state(layout.qubit_count());
  run(order_finding_circuit(modulus, base, t), state);
  if (use_argmax) return most_probable(state, layout.counting);
  const MeasurementHistogram histogram =
      measure_register(state, layout.counting, 1, rng());
  return histogram.counts.begin()->first;
}

}  // namespace detail

/// Factors N by order finding, after the classical short cuts (even input,
/// perfect power, lucky gcd). Each attempt samples one counting-register
/// measurement, reads an order candidate off its convergents and tries
/// gcd(a^(r/2) +- 1, N). Deterministic for a fixed seed.
inline FactorResult factor(std::uint64_t n, const FactorOptions& options = {}) {
  if (n < 4) throw DomainError("nothing to factor below 4");
  if (is_prime(n)) throw DomainError("input is prime");
  FactorResult result;
  result.n = n;
  if (n % 2 == 0) {
    result.p = 2;
    result.q = n / 2;
    result.method = "even";
    return result;
  }
  if (const auto power = perfect_power(n)) {
    result.p = power->first;
    result.q = n / power->first;
    result.method = "perfect-power";
    return result;
  }
  const std::size_t t = options.counting_width != 0
                            ? options.counting_width
                            : 2 * modulus_register_width(n);
  std::mt19937_64 rng(options.seed);
  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    const std::uint64_t base =
        options.forced_base ? *options.forced_base : 2 + rng() % (n - 3);
    result.base = base;
    const std::uint64_t shared = std::gcd(base, n);
    if (shared != 1 && shared != n) {
      FactorAttempt lucky;
      lucky.base = base;
      lucky.status = "shared-factor";
      result.attempts.push_back(lucky);
      result.p = shared;
      result.q = n / shared;
      result.method = "gcd";
      return result;
    }
    FactorAttempt record;
    record.base = base;
    record.measurement = detail::sample_order_measurement(
        n, base, t, options.backend, options.use_argmax, rng);
    record.convergents = dyadic_convergents(record.measurement, t);
    record.order = recover_order(record.measurement, t, base, n);
    if (!record.order) {
      record.status = "order-not-found";
      result.attempts.push_back(record);
      continue;
    }
    if (*record.order % 2 != 0) {
      record.status = "odd-order";
      result.attempts.push_back(record);
      continue;
    }
    const std::uint64_t half = pow_mod(base, *record.order / 2, n);
    bool found = false;
    if (half != n - 1) {
      for (std::uint64_t candidate :
           {std::gcd(half - 1, n), std::gcd(half + 1, n)}) {
        if (candidate > 1 && candidate < n) {
          result.p = candidate;
          result.q = n / candidate;
          result.order = *record.order;
          result.method = "order-finding";
          found = true;
          break;
        }
      }
    }
    record.status = found ? "factored" : "trivial-root";
    result.attempts.push_back(record);
    if (found) return result;
  }
  throw DomainError("factoring attempts exhausted");
}

}  // namespace qarith
