// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qarith {

/// Malformed circuit construction: bad qubit indices, overlapping
/// targets/controls, wrong register widths passed to a builder.
class StructuralError : public std::logic_error {
 public:
  explicit StructuralError(const std::string& what) : std::logic_error(what) {}
};

/// Inputs outside an operation's mathematical domain (constant >= modulus,
/// even modulus for doubling, non-coprime multiplier, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Request exceeds a hard resource limit (qubit count, register sizes).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qarith
