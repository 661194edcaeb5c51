// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: builds the requested circuit, runs it on the
// statevector simulator (or the classical bit-twiddling path for the
// Toffoli-only ops), and prints the result as text or JSON.

#include <bit>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qarith/qarith.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::size_t> seq(std::size_t from, std::size_t count) {
  std::vector<std::size_t> out(count);
  std::iota(out.begin(), out.end(), from);
  return out;
}

std::size_t bits_for(std::uint64_t value) {
  return value == 0 ? 1 : static_cast<std::size_t>(std::bit_width(value));
}

std::uint64_t magnitude(std::int64_t value) {
  return value < 0 ? static_cast<std::uint64_t>(-(value + 1)) + 1
                   : static_cast<std::uint64_t>(value);
}

std::uint64_t encode_signed(std::int64_t value, std::size_t value_width) {
  return magnitude(value) |
         (std::uint64_t{value < 0 ? 1u : 0u} << value_width);
}

std::int64_t decode_signed(std::uint64_t bits, std::size_t value_width) {
  const std::uint64_t mag = bits & ((std::uint64_t{1} << value_width) - 1);
  const bool negative = ((bits >> value_width) & 1u) != 0;
  return negative ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
}

void check_fits(std::uint64_t value, std::size_t width, const std::string& name) {
  if (width < 64 && (value >> width) != 0) {
    throw qarith::DomainError(name + " does not fit the register width");
  }
}

void check_below(std::uint64_t value, std::uint64_t modulus, const std::string& name) {
  if (value >= modulus) {
    throw qarith::DomainError(name + " must be below the modulus");
  }
}

qarith::StateVector simulate(const qarith::Circuit& circuit, std::uint64_t input) {
  qarith::StateVector state = qarith::basis_state(circuit.qubit_count(), input);
  qarith::run(circuit, state);
  return state;
}

qarith::Relation parse_relation(const std::string& name) {
  if (name == "lt") return qarith::Relation::kLess;
  if (name == "le") return qarith::Relation::kLessEqual;
  if (name == "gt") return qarith::Relation::kGreater;
  if (name == "ge") return qarith::Relation::kGreaterEqual;
  throw UsageError("unknown relation '" + name + "' (use lt, le, gt, ge or eq)");
}

double parse_theta(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return std::stod(text);
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    if (den == 0.0) throw UsageError("theta denominator must not be zero");
    return num / den;
  } catch (const std::invalid_argument&) {
    throw UsageError("theta must be a number or a fraction like 1/8");
  }
}

void emit(const json& payload, bool as_json, const std::string& text) {
  if (as_json) {
    std::cout << payload.dump(2) << '\n';
  } else {
    std::cout << text << '\n';
  }
}

// ---------------------------------------------------------------------------
// Shared circuit construction for `resources` and `dump`.

struct NamedCircuit {
  qarith::Circuit circuit{1};
  std::size_t ancillas = 0;
};

struct ShapeRequest {
  std::string op;
  std::uint64_t constant = 0;
  bool constant_given = false;
  std::uint64_t modulus = 0;
  std::size_t width = 0;
  std::uint64_t base = 0;
  std::string relation = "lt";
  std::string theta = "0.125";
  bool with_swaps = true;
};

std::uint64_t require_modulus(const ShapeRequest& request) {
  if (request.modulus == 0) {
    throw UsageError("--modulus is required for " + request.op);
  }
  return request.modulus;
}

std::size_t require_width(const ShapeRequest& request) {
  if (request.width == 0) throw UsageError("--width is required for " + request.op);
  return request.width;
}

NamedCircuit build_named_circuit(const ShapeRequest& request) {
  const std::string& op = request.op;
  if (op == "qft" || op == "iqft") {
    const std::size_t n = require_width(request);
    const std::vector<std::size_t> reg = seq(0, n);
    return {op == "qft" ? qarith::qft_circuit(reg, request.with_swaps)
                        : qarith::iqft_circuit(reg, request.with_swaps),
            0};
  }
  if (op == "add" || op == "sub") {
    const std::size_t w = require_width(request);
    const qarith::SignedRegisterSpec a{seq(0, w + 1), true, 0};
    const qarith::SignedRegisterSpec b{seq(w + 1, w + 1), true, 0};
    const std::vector<std::size_t> aux = seq(2 * w + 2, w + 3);
    return {op == "add" ? qarith::signed_add(a, b, aux) : qarith::signed_sub(a, b, aux),
            w + 3};
  }
  if (op == "mul") {
    const std::size_t w = require_width(request) + 1;
    const std::vector<std::size_t> a = seq(0, w);
    const std::vector<std::size_t> b = seq(w, w);
    const std::vector<std::size_t> aux = seq(2 * w, w);
    const std::vector<std::size_t> result = seq(3 * w, 2 * w - 1);
    return {qarith::multiplier(a, b, aux, result, /*is_signed=*/true), w};
  }
  if (op == "div") {
    const std::size_t w = require_width(request) + 1;
    const qarith::SignedRegisterSpec a{seq(0, w), true, 0};
    const qarith::SignedRegisterSpec b{seq(w, w), true, 0};
    const std::vector<std::size_t> quotient = seq(2 * w, w);
    const std::vector<std::size_t> aux = seq(3 * w, 3);
    return {qarith::divider(a, b, quotient, aux), 3};
  }
  if (op == "const-add") {
    const std::size_t n = require_width(request);
    return {qarith::const_add(seq(0, n), request.constant), 0};
  }
  if (op == "mod-add") {
    const std::uint64_t modulus = require_modulus(request);
    const std::size_t n = qarith::modulus_register_width(modulus);
    return {qarith::const_mod_add(seq(0, n), n, request.constant % modulus, modulus),
            1};
  }
  if (op == "mod-mul") {
    const std::uint64_t modulus = require_modulus(request);
    const std::size_t n = qarith::modulus_register_width(modulus);
    const std::uint64_t a = request.constant_given ? request.constant : 1;
    return {qarith::const_mod_mul(seq(0, n), seq(n, n), 2 * n, a, modulus), n + 1};
  }
  if (op == "mod-exp") {
    const std::uint64_t modulus = require_modulus(request);
    const std::size_t n = qarith::modulus_register_width(modulus);
    const std::size_t t = request.width != 0 ? request.width : 2 * n;
    const std::uint64_t base = request.base != 0 ? request.base : 1;
    return {qarith::const_mod_exp(seq(0, t), seq(t, n), seq(t + n, n + 1), base,
                                  modulus),
            n + 1};
  }
  if (op == "var-mod-add") {
    const std::uint64_t modulus = require_modulus(request);
    const std::size_t n = qarith::modulus_register_width(modulus);
    return {qarith::var_mod_add(seq(0, n), seq(n, n), seq(2 * n, 2), modulus), 2};
  }
  if (op == "mod-double") {
    const std::uint64_t modulus = require_modulus(request);
    const std::size_t n = qarith::modulus_register_width(modulus);
    return {qarith::mod_double(seq(0, n), n, modulus), 1};
  }
  if (op == "var-mod-mul") {
    const std::uint64_t modulus = require_modulus(request);
    const std::size_t n = qarith::modulus_register_width(modulus);
    const std::size_t xw = request.width != 0 ? request.width : n;
    return {qarith::var_mod_mul(seq(0, xw), seq(xw, n), seq(xw + n, n),
                                seq(xw + 2 * n, 2), modulus),
            2};
  }
  if (op == "mod-square") {
    const std::uint64_t modulus = require_modulus(request);
    const std::size_t n = qarith::modulus_register_width(modulus);
    return {qarith::var_mod_square(seq(0, n), seq(n, n), seq(2 * n, 2), modulus), 2};
  }
  if (op == "compare") {
    const std::size_t n = require_width(request);
    if (request.relation == "eq") {
      throw UsageError("eq is classical post-processing; use lt, le, gt or ge here");
    }
    return {qarith::int_compare(seq(0, n), n, request.constant,
                                parse_relation(request.relation)),
            1};
  }
  if (op == "mod-reduce") {
    const std::uint64_t modulus = require_modulus(request);
    const std::size_t n = bits_for(modulus);
    return {qarith::mod_reduce(seq(0, n), n, modulus), 1};
  }
  if (op == "clean-add") {
    const std::uint64_t modulus = require_modulus(request);
    const std::size_t n =
        request.width != 0 ? request.width : qarith::modulus_register_width(modulus);
    return {qarith::clean_mod_add(seq(0, n), n, request.constant % modulus, modulus),
            1};
  }
  if (op == "fullspace-add") {
    const std::uint64_t modulus = require_modulus(request);
    const std::size_t n = bits_for(modulus);
    return {qarith::fullspace_mod_add(seq(0, n), n, n + 1,
                                      request.constant % modulus, modulus),
            2};
  }
  if (op == "qpe") {
    const std::size_t m = require_width(request);
    const std::size_t target = m;
    qarith::Circuit circuit(m + 1);
    circuit.add(qarith::make_x(target));
    circuit.append(qarith::phase_estimation(
        seq(0, m), m + 1,
        qarith::phase_oracle(target, parse_theta(request.theta), m + 1)));
    return {std::move(circuit), 0};
  }
  if (op == "order") {
    const std::uint64_t modulus = require_modulus(request);
    if (request.base == 0) throw UsageError("--base is required for order");
    const std::size_t n = qarith::modulus_register_width(modulus);
    const std::size_t t = request.width != 0 ? request.width : 2 * n;
    return {qarith::order_finding_circuit(modulus, request.base, t), n + 1};
  }
  throw UsageError("unknown circuit '" + op + "'");
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

void run_signed_sum(std::int64_t a, std::int64_t b, std::size_t width, bool subtract,
                    bool as_json) {
  const std::int64_t expected = subtract ? a - b : a + b;
  std::size_t w = width;
  if (w == 0) {
    w = std::max({bits_for(magnitude(a)), bits_for(magnitude(b)),
                  bits_for(magnitude(expected))});
  }
  check_fits(magnitude(a), w, "first operand magnitude");
  check_fits(magnitude(b), w, "second operand magnitude");
  const qarith::SignedRegisterSpec ra{seq(0, w + 1), true, 0};
  const qarith::SignedRegisterSpec rb{seq(w + 1, w + 1), true, 0};
  const std::vector<std::size_t> aux = seq(2 * w + 2, w + 3);
  const qarith::Circuit circuit = subtract ? qarith::signed_sub(ra, rb, aux)
                                           : qarith::signed_add(ra, rb, aux);
  std::uint64_t input = 0;
  input = qarith::deposit_bits(input, ra.qubits, encode_signed(a, w));
  input = qarith::deposit_bits(input, rb.qubits, encode_signed(b, w));
  const std::uint64_t output = qarith::apply_to_basis(circuit, input);
  const std::int64_t result =
      decode_signed(qarith::extract_bits(output, ra.qubits), w);
  json payload{{"command", subtract ? "sub" : "add"}, {"a", a},      {"b", b},
               {"width", w},                          {"result", result},
               {"qubits", circuit.qubit_count()}};
  emit(payload, as_json, std::to_string(result));
}

void run_mul(std::int64_t a, std::int64_t b, std::size_t width, bool as_json) {
  std::size_t w = width;
  if (w == 0) w = std::max(bits_for(magnitude(a)), bits_for(magnitude(b)));
  check_fits(magnitude(a), w, "first operand magnitude");
  check_fits(magnitude(b), w, "second operand magnitude");
  const std::size_t full = w + 1;
  const std::vector<std::size_t> ra = seq(0, full);
  const std::vector<std::size_t> rb = seq(full, full);
  const std::vector<std::size_t> aux = seq(2 * full, full);
  const std::vector<std::size_t> result_reg = seq(3 * full, 2 * full - 1);
  const qarith::Circuit circuit =
      qarith::multiplier(ra, rb, aux, result_reg, /*is_signed=*/true);
  std::uint64_t input = 0;
  input = qarith::deposit_bits(input, ra, encode_signed(a, w));
  input = qarith::deposit_bits(input, rb, encode_signed(b, w));
  const std::uint64_t output = qarith::apply_to_basis(circuit, input);
  const std::int64_t result =
      decode_signed(qarith::extract_bits(output, result_reg), 2 * w);
  json payload{{"command", "mul"}, {"a", a},           {"b", b},
               {"width", w},       {"result", result}, {"qubits", circuit.qubit_count()}};
  emit(payload, as_json, std::to_string(result));
}

void run_div(std::int64_t a, std::int64_t b, std::size_t width, bool as_json) {
  if (a < 0) throw qarith::DomainError("dividend must be non-negative");
  if (b <= 0) throw qarith::DomainError("divisor must be positive");
  std::size_t w = width;
  if (w == 0) w = std::max(bits_for(magnitude(a)), bits_for(magnitude(b)));
  check_fits(magnitude(a), w, "dividend");
  check_fits(magnitude(b), w, "divisor");
  const std::size_t full = w + 1;
  const qarith::SignedRegisterSpec ra{seq(0, full), true, 0};
  const qarith::SignedRegisterSpec rb{seq(full, full), true, 0};
  const std::vector<std::size_t> quotient_reg = seq(2 * full, full);
  const std::vector<std::size_t> aux = seq(3 * full, 3);
  const qarith::Circuit circuit = qarith::divider(ra, rb, quotient_reg, aux);
  std::uint64_t input = 0;
  input = qarith::deposit_bits(input, ra.qubits, encode_signed(a, w));
  input = qarith::deposit_bits(input, rb.qubits, encode_signed(b, w));
  const std::uint64_t output = qarith::apply_to_basis(circuit, input);
  const std::int64_t remainder =
      decode_signed(qarith::extract_bits(output, ra.qubits), w);
  const std::uint64_t quotient = qarith::extract_bits(output, quotient_reg);
  json payload{{"command", "div"},     {"a", a},
               {"b", b},               {"width", w},
               {"quotient", quotient}, {"remainder", remainder},
               {"qubits", circuit.qubit_count()}};
  emit(payload, as_json,
       "quotient=" + std::to_string(quotient) +
           " remainder=" + std::to_string(remainder));
}

void run_const_add(std::uint64_t x, std::uint64_t constant, std::size_t width,
                   bool as_json) {
  std::size_t w = width;
  if (w == 0) w = std::max(bits_for(x), bits_for(constant));
  check_fits(x, w, "input");
  check_fits(constant, w, "constant");
  const std::vector<std::size_t> reg = seq(0, w);
  const qarith::Circuit circuit = qarith::const_add(reg, constant);
  const qarith::StateVector state = simulate(circuit, x);
  const std::uint64_t result = qarith::most_probable(state, reg);
  json payload{{"command", "const-add"}, {"x", x},           {"constant", constant},
               {"width", w},             {"result", result}, {"qubits", w}};
  emit(payload, as_json, std::to_string(result));
}

void run_mod_add(std::uint64_t x, std::uint64_t constant, std::uint64_t modulus,
                 bool as_json) {
  check_below(x, modulus, "input");
  check_below(constant, modulus, "constant");
  const std::size_t n = qarith::modulus_register_width(modulus);
  const std::vector<std::size_t> reg = seq(0, n);
  const qarith::Circuit circuit = qarith::const_mod_add(reg, n, constant, modulus);
  const qarith::StateVector state = simulate(circuit, x);
  const std::uint64_t result = qarith::most_probable(state, reg);
  json payload{{"command", "mod-add"}, {"x", x},           {"constant", constant},
               {"modulus", modulus},   {"result", result}, {"qubits", n + 1}};
  emit(payload, as_json, std::to_string(result));
}

void run_mod_mul(std::uint64_t x, std::uint64_t constant, std::uint64_t modulus,
                 bool as_json) {
  check_below(x, modulus, "input");
  const std::size_t n = qarith::modulus_register_width(modulus);
  const std::vector<std::size_t> reg = seq(0, n);
  const qarith::Circuit circuit =
      qarith::const_mod_mul(reg, seq(n, n), 2 * n, constant, modulus);
  const qarith::StateVector state = simulate(circuit, x);
  const std::uint64_t result = qarith::most_probable(state, reg);
  json payload{{"command", "mod-mul"}, {"x", x},           {"constant", constant},
               {"modulus", modulus},   {"result", result}, {"qubits", 2 * n + 1}};
  emit(payload, as_json, std::to_string(result));
}

void run_mod_exp(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus,
                 bool as_json) {
  const std::size_t n = qarith::modulus_register_width(modulus);
  const std::size_t t = bits_for(exponent);
  const std::vector<std::size_t> x_reg = seq(0, t);
  const std::vector<std::size_t> result_reg = seq(t, n);
  const qarith::Circuit circuit =
      qarith::const_mod_exp(x_reg, result_reg, seq(t + n, n + 1), base, modulus);
  const qarith::StateVector state = simulate(circuit, exponent);
  const std::uint64_t result = qarith::most_probable(state, result_reg);
  json payload{{"command", "mod-exp"}, {"base", base},     {"exponent", exponent},
               {"modulus", modulus},   {"result", result}, {"qubits", t + 2 * n + 1}};
  emit(payload, as_json, std::to_string(result));
}

void run_var_mod_add(std::uint64_t x, std::uint64_t y, std::uint64_t modulus,
                     bool as_json) {
  check_below(x, modulus, "first operand");
  check_below(y, modulus, "second operand");
  const std::size_t n = qarith::modulus_register_width(modulus);
  const std::vector<std::size_t> x_reg = seq(0, n);
  const std::vector<std::size_t> y_reg = seq(n, n);
  const qarith::Circuit circuit =
      qarith::var_mod_add(x_reg, y_reg, seq(2 * n, 2), modulus);
  std::uint64_t input = qarith::deposit_bits(0, x_reg, x);
  input = qarith::deposit_bits(input, y_reg, y);
  const qarith::StateVector state = simulate(circuit, input);
  const std::uint64_t result = qarith::most_probable(state, y_reg);
  json payload{{"command", "var-mod-add"}, {"x", x},           {"y", y},
               {"modulus", modulus},       {"result", result}, {"qubits", 2 * n + 2}};
  emit(payload, as_json, std::to_string(result));
}

void run_mod_double(std::uint64_t x, std::uint64_t modulus, bool as_json) {
  check_below(x, modulus, "input");
  const std::size_t n = qarith::modulus_register_width(modulus);
  const std::vector<std::size_t> reg = seq(0, n);
  const qarith::Circuit circuit = qarith::mod_double(reg, n, modulus);
  const qarith::StateVector state = simulate(circuit, x);
  const std::uint64_t result = qarith::most_probable(state, reg);
  json payload{{"command", "mod-double"}, {"x", x},           {"modulus", modulus},
               {"result", result},        {"qubits", n + 1}};
  emit(payload, as_json, std::to_string(result));
}

void run_var_mod_mul(std::uint64_t x, std::uint64_t y, std::uint64_t modulus,
                     bool as_json) {
  const std::size_t n = qarith::modulus_register_width(modulus);
  check_fits(x, n, "first operand");
  check_below(y, modulus, "second operand");
  const std::vector<std::size_t> x_reg = seq(0, n);
  const std::vector<std::size_t> y_reg = seq(n, n);
  const std::vector<std::size_t> result_reg = seq(2 * n, n);
  const qarith::Circuit circuit =
      qarith::var_mod_mul(x_reg, y_reg, result_reg, seq(3 * n, 2), modulus);
  std::uint64_t input = qarith::deposit_bits(0, x_reg, x);
  input = qarith::deposit_bits(input, y_reg, y);
  const qarith::StateVector state = simulate(circuit, input);
  const std::uint64_t result = qarith::most_probable(state, result_reg);
  json payload{{"command", "var-mod-mul"}, {"x", x},           {"y", y},
               {"modulus", modulus},       {"result", result}, {"qubits", 3 * n + 2}};
  emit(payload, as_json, std::to_string(result));
}

void run_mod_square(std::uint64_t x, std::uint64_t modulus, bool as_json) {
  check_below(x, modulus, "input");
  const std::size_t n = qarith::modulus_register_width(modulus);
  const std::vector<std::size_t> x_reg = seq(0, n);
  const std::vector<std::size_t> result_reg = seq(n, n);
  const qarith::Circuit circuit =
      qarith::var_mod_square(x_reg, result_reg, seq(2 * n, 2), modulus);
  const qarith::StateVector state = simulate(circuit, qarith::deposit_bits(0, x_reg, x));
  const std::uint64_t result = qarith::most_probable(state, result_reg);
  json payload{{"command", "mod-square"}, {"x", x},           {"modulus", modulus},
               {"result", result},        {"qubits", 2 * n + 2}};
  emit(payload, as_json, std::to_string(result));
}

int flag_after(const qarith::Circuit& circuit, std::uint64_t x,
               std::span<const std::size_t> reg, std::size_t flag) {
  const qarith::StateVector state =
      simulate(circuit, qarith::deposit_bits(0, reg, x));
  const std::size_t flag_reg[] = {flag};
  return static_cast<int>(qarith::most_probable(state, flag_reg));
}

void run_compare(std::uint64_t x, std::uint64_t constant, std::size_t width,
                 const std::string& relation, bool as_json) {
  std::size_t w = width;
  if (w == 0) w = std::max(bits_for(x), bits_for(constant));
  check_fits(x, w, "input");
  check_fits(constant, w, "comparison constant");
  const std::vector<std::size_t> reg = seq(0, w);
  int result = 0;
  if (relation == "eq") {
    const int le = flag_after(
        qarith::int_compare(reg, w, constant, qarith::Relation::kLessEqual), x, reg, w);
    const int lt = flag_after(
        qarith::int_compare(reg, w, constant, qarith::Relation::kLess), x, reg, w);
    result = le & ~lt;
  } else {
    result = flag_after(qarith::int_compare(reg, w, constant, parse_relation(relation)),
                        x, reg, w);
  }
  json payload{{"command", "compare"}, {"x", x},
               {"constant", constant}, {"relation", relation},
               {"width", w},           {"result", result},
               {"qubits", w + 1}};
  emit(payload, as_json, std::to_string(result));
}

void run_mod_reduce(std::uint64_t x, std::uint64_t modulus, bool as_json) {
  const std::size_t n = bits_for(modulus);
  check_fits(x, n, "input");
  const std::vector<std::size_t> reg = seq(0, n);
  const qarith::Circuit circuit = qarith::mod_reduce(reg, n, modulus);
  const qarith::StateVector state = simulate(circuit, x);
  const std::uint64_t residue = qarith::most_probable(state, reg);
  const std::size_t flag_reg[] = {n};
  const std::uint64_t flag = qarith::most_probable(state, flag_reg);
  json payload{{"command", "mod-reduce"}, {"x", x},       {"modulus", modulus},
               {"residue", residue},      {"flag", flag}, {"qubits", n + 1}};
  emit(payload, as_json,
       "residue=" + std::to_string(residue) + " flag=" + std::to_string(flag));
}

void run_qpe(const std::string& theta_text, std::size_t width, std::size_t shots,
             std::uint64_t seed, bool as_json) {
  if (width == 0) throw UsageError("--width is required for qpe");
  const double theta = parse_theta(theta_text);
  const std::size_t target = width;
  qarith::Circuit circuit(width + 1);
  circuit.add(qarith::make_x(target));
  circuit.append(qarith::phase_estimation(
      seq(0, width), width + 1, qarith::phase_oracle(target, theta, width + 1)));
  qarith::StateVector state = qarith::new_state(width + 1);
  qarith::run(circuit, state);
  const std::vector<std::size_t> counting = seq(0, width);
  const std::vector<double> marginal = qarith::marginal_distribution(state, counting);
  std::size_t outcome = 0;
  for (std::size_t j = 1; j < marginal.size(); ++j) {
    if (marginal[j] > marginal[outcome]) outcome = j;
  }
  const double estimate =
      static_cast<double>(outcome) / static_cast<double>(marginal.size());
  const qarith::MeasurementHistogram histogram =
      qarith::measure_register(state, counting, shots, seed);
  json counts = json::object();
  for (const auto& [value, count] : histogram.counts) {
    counts[std::to_string(value)] = count;
  }
  json payload{{"command", "qpe"},     {"theta", theta},
               {"width", width},       {"outcome", outcome},
               {"estimate", estimate}, {"probability", marginal[outcome]},
               {"shots", shots},       {"seed", seed},
               {"histogram", counts}};
  std::ostringstream text;
  text.precision(12);
  text << "outcome=" << outcome << " estimate=" << estimate
       << " probability=" << marginal[outcome];
  for (const auto& [value, count] : histogram.counts) {
    text << "\ncounts " << value << ' ' << count;
  }
  emit(payload, as_json, text.str());
}

void run_factor(std::uint64_t n, std::uint64_t seed, std::size_t attempts,
                std::uint64_t forced_base, const std::string& backend_name,
                std::size_t width, bool use_argmax) {
  qarith::FactorOptions options;
  options.seed = seed;
  options.max_attempts = attempts;
  options.use_argmax = use_argmax;
  if (forced_base != 0) options.forced_base = forced_base;
  if (backend_name == "full") {
    options.backend = qarith::OrderBackend::kStatevector;
  } else if (backend_name != "fast") {
    throw UsageError("unknown backend '" + backend_name + "' (use fast or full)");
  }
  options.counting_width = width;
  const qarith::FactorResult result = qarith::factor(n, options);
  json attempts_json = json::array();
  for (const qarith::FactorAttempt& attempt : result.attempts) {
    json convergents = json::array();
    for (const qarith::Convergent& conv : attempt.convergents) {
      convergents.push_back({conv.numerator, conv.denominator});
    }
    attempts_json.push_back(json{{"a", attempt.base},
                                 {"measured", attempt.measurement},
                                 {"convergents", convergents},
                                 {"r", attempt.order ? json(*attempt.order) : json()},
                                 {"status", attempt.status}});
  }
  const std::uint64_t lo = std::min(result.p, result.q);
  const std::uint64_t hi = std::max(result.p, result.q);
  json payload{{"N", result.n},
               {"factors", {lo, hi}},
               {"seed", seed},
               {"t", width != 0 ? width : 2 * qarith::modulus_register_width(n)},
               {"backend", backend_name},
               {"method", result.method},
               {"base", result.base},
               {"order", result.order},
               {"attempts", attempts_json}};
  std::cout << payload.dump(2) << '\n';
}

void run_resources(const ShapeRequest& request, bool as_json) {
  const NamedCircuit named = build_named_circuit(request);
  const qarith::ResourceReport report = qarith::resources(named.circuit);
  json gates = json::object();
  for (const auto& [label, count] : report.gate_counts) gates[label] = count;
  json payload{{"command", "resources"},
               {"circuit", request.op},
               {"qubits", report.qubit_count},
               {"ancillas", named.ancillas},
               {"depth", report.depth},
               {"qft_invocations", report.qft_invocations},
               {"total_gates", report.total_gates()},
               {"gates", gates}};
  std::ostringstream text;
  text << "qubits " << report.qubit_count << '\n'
       << "ancillas " << named.ancillas << '\n'
       << "depth " << report.depth << '\n'
       << "qft_invocations " << report.qft_invocations << '\n'
       << "total_gates " << report.total_gates();
  for (const auto& [label, count] : report.gate_counts) {
    text << "\ngate " << label << ' ' << count;
  }
  emit(payload, as_json, text.str());
}

void run_dump(const ShapeRequest& request) {
  const NamedCircuit named = build_named_circuit(request);
  qarith::dump_circuit(std::cout, named.circuit);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum arithmetic circuits on a statevector simulator"};
  app.require_subcommand(1);

  bool as_json = false;
  app.add_flag("--json", as_json, "emit JSON instead of text")->configurable(false);

  std::int64_t sa = 0, sb = 0;
  std::uint64_t ua = 0, ub = 0;
  std::uint64_t modulus = 0;
  std::size_t width = 0;
  std::size_t shots = 1024;
  std::uint64_t seed = 1;
  std::string relation = "lt";
  std::string theta = "0.125";
  std::string backend = "fast";
  std::uint64_t forced_base = 0;
  std::size_t attempts = 64;
  bool use_argmax = false;

  const auto add_signed_pair = [&](CLI::App* sub) {
    sub->add_option("a", sa, "first operand")->required();
    sub->add_option("b", sb, "second operand")->required();
    sub->add_option("--width", width, "value bits per operand (default: fit)");
    sub->add_flag("--json", as_json, "emit JSON instead of text");
  };

  CLI::App* cmd_add = app.add_subcommand("add", "signed addition");
  add_signed_pair(cmd_add);
  CLI::App* cmd_sub = app.add_subcommand("sub", "signed subtraction");
  add_signed_pair(cmd_sub);
  CLI::App* cmd_mul = app.add_subcommand("mul", "signed multiplication");
  add_signed_pair(cmd_mul);
  CLI::App* cmd_div = app.add_subcommand("div", "integer division with remainder");
  add_signed_pair(cmd_div);

  const auto add_unsigned_pair = [&](CLI::App* sub, const char* first,
                                     const char* second) {
    sub->add_option(first, ua, "")->required();
    if (second != nullptr) sub->add_option(second, ub, "")->required();
    sub->add_flag("--json", as_json, "emit JSON instead of text");
  };

  CLI::App* cmd_const_add =
      app.add_subcommand("const-add", "x + a mod 2^width");
  add_unsigned_pair(cmd_const_add, "x", "a");
  cmd_const_add->add_option("--width", width, "register width (default: fit)");

  CLI::App* cmd_mod_add = app.add_subcommand("mod-add", "x + a mod N");
  add_unsigned_pair(cmd_mod_add, "x", "a");
  cmd_mod_add->add_option("--modulus", modulus, "modulus N")->required();

  CLI::App* cmd_mod_mul = app.add_subcommand("mod-mul", "a * x mod N");
  add_unsigned_pair(cmd_mod_mul, "x", "a");
  cmd_mod_mul->add_option("--modulus", modulus, "modulus N")->required();

  CLI::App* cmd_mod_exp = app.add_subcommand("mod-exp", "base^e mod N");
  add_unsigned_pair(cmd_mod_exp, "base", "e");
  cmd_mod_exp->add_option("--modulus", modulus, "modulus N")->required();

  CLI::App* cmd_var_add = app.add_subcommand("var-mod-add", "x + y mod N");
  add_unsigned_pair(cmd_var_add, "x", "y");
  cmd_var_add->add_option("--modulus", modulus, "modulus N")->required();

  CLI::App* cmd_double = app.add_subcommand("mod-double", "2x mod N (odd N)");
  add_unsigned_pair(cmd_double, "x", nullptr);
  cmd_double->add_option("--modulus", modulus, "modulus N")->required();

  CLI::App* cmd_var_mul = app.add_subcommand("var-mod-mul", "x * y mod N (odd N)");
  add_unsigned_pair(cmd_var_mul, "x", "y");
  cmd_var_mul->add_option("--modulus", modulus, "modulus N")->required();

  CLI::App* cmd_square = app.add_subcommand("mod-square", "x^2 mod N (odd N)");
  add_unsigned_pair(cmd_square, "x", nullptr);
  cmd_square->add_option("--modulus", modulus, "modulus N")->required();

  CLI::App* cmd_compare = app.add_subcommand("compare", "x vs a comparison flag");
  add_unsigned_pair(cmd_compare, "x", "a");
  cmd_compare->add_option("--width", width, "register width (default: fit)");
  cmd_compare->add_option("--relation", relation, "lt, le, gt, ge or eq");

  CLI::App* cmd_reduce = app.add_subcommand("mod-reduce", "x mod M with comparison flag");
  add_unsigned_pair(cmd_reduce, "x", nullptr);
  cmd_reduce->add_option("--modulus", modulus, "modulus M in [2^(n-1), 2^n)")
      ->required();

  CLI::App* cmd_qpe = app.add_subcommand("qpe", "phase estimation of a known phase");
  cmd_qpe->add_option("--theta", theta, "eigenphase in turns (number or p/q)");
  cmd_qpe->add_option("--width", width, "counting qubits")->required();
  cmd_qpe->add_option("--shots", shots, "measurement samples (default 1024)");
  cmd_qpe->add_option("--seed", seed, "sampling seed (default 1)");
  cmd_qpe->add_flag("--json", as_json, "emit JSON instead of text");

  CLI::App* cmd_factor = app.add_subcommand("factor", "factor N by order finding");
  cmd_factor->add_option("n", ua, "composite to factor")->required();
  cmd_factor->add_option("--seed", seed, "sampling seed (default 1)");
  cmd_factor->add_option("--attempts", attempts, "attempt budget (default 64)");
  cmd_factor->add_option("--base", forced_base, "fix the order-finding base");
  cmd_factor->add_option("--backend", backend, "fast (closed form) or full (statevector)");
  cmd_factor->add_option("--width", width, "counting qubits t (default 2n)");
  cmd_factor->add_flag("--argmax", use_argmax, "take the distribution peak, never sample");
  cmd_factor->add_flag("--json", as_json, "emit JSON (factor always prints JSON)");

  ShapeRequest shape;
  const auto add_shape_options = [&](CLI::App* sub) {
    sub->add_option("circuit", shape.op, "circuit name")->required();
    sub->add_option("constant", shape.constant, "circuit constant, when one applies");
    sub->add_option("--modulus", shape.modulus, "modulus N");
    sub->add_option("--width", shape.width, "register width");
    sub->add_option("--base", shape.base, "base for mod-exp/order");
    sub->add_option("--relation", shape.relation, "comparison relation");
    sub->add_option("--theta", shape.theta, "qpe eigenphase");
    sub->add_flag("!--no-swaps", shape.with_swaps, "omit the qft swap layer");
    sub->add_flag("--json", as_json, "emit JSON instead of text");
  };

  CLI::App* cmd_resources =
      app.add_subcommand("resources", "gate census of a named circuit");
  add_shape_options(cmd_resources);
  CLI::App* cmd_dump = app.add_subcommand("dump", "gate listing of a named circuit");
  add_shape_options(cmd_dump);

  try {
    app.parse(argc, argv);
    shape.constant_given = cmd_resources->count("constant") != 0 ||
                           cmd_dump->count("constant") != 0;
    if (cmd_add->parsed()) run_signed_sum(sa, sb, width, false, as_json);
    if (cmd_sub->parsed()) run_signed_sum(sa, sb, width, true, as_json);
    if (cmd_mul->parsed()) run_mul(sa, sb, width, as_json);
    if (cmd_div->parsed()) run_div(sa, sb, width, as_json);
    if (cmd_const_add->parsed()) run_const_add(ua, ub, width, as_json);
    if (cmd_mod_add->parsed()) run_mod_add(ua, ub, modulus, as_json);
    if (cmd_mod_mul->parsed()) run_mod_mul(ua, ub, modulus, as_json);
    if (cmd_mod_exp->parsed()) run_mod_exp(ua, ub, modulus, as_json);
    if (cmd_var_add->parsed()) run_var_mod_add(ua, ub, modulus, as_json);
    if (cmd_double->parsed()) run_mod_double(ua, modulus, as_json);
    if (cmd_var_mul->parsed()) run_var_mod_mul(ua, ub, modulus, as_json);
    if (cmd_square->parsed()) run_mod_square(ua, modulus, as_json);
    if (cmd_compare->parsed()) run_compare(ua, ub, width, relation, as_json);
    if (cmd_reduce->parsed()) run_mod_reduce(ua, modulus, as_json);
    if (cmd_qpe->parsed()) run_qpe(theta, width, shots, seed, as_json);
    if (cmd_factor->parsed())
      run_factor(ua, seed, attempts, forced_base, backend, width, use_argmax);
    if (cmd_resources->parsed()) run_resources(shape, as_json);
    if (cmd_dump->parsed()) run_dump(shape);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const qarith::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qarith::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: state does not fit in memory\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 70;
  }
}
