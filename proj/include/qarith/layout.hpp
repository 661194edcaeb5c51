// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qarith/error.hpp"

namespace qarith {

/// Smallest circuit width covering every listed register.
inline std::size_t required_width(
    std::initializer_list<std::span<const std::size_t>> groups) {
  std::size_t width = 0;
  for (const auto& group : groups) {
    for (std::size_t q : group) width = std::max(width, q + 1);
  }
  if (width == 0) throw StructuralError("builders need at least one qubit");
  return width;
}

/// Throws unless all listed registers are pairwise disjoint and free of
/// internal duplicates.
inline void ensure_disjoint(
    std::initializer_list<std::span<const std::size_t>> groups) {
  std::vector<std::size_t> all;
  for (const auto& group : groups) all.insert(all.end(), group.begin(), group.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw StructuralError("registers passed to a builder must not overlap");
  }
}

/// What a register group is for. Ancilla accounting (aux + carry) is part of
/// several resource claims, so the role is tracked explicitly.
enum class Role { kValue, kAux, kCarry, kSign, kCounting, kResult, kFlag };

/// Allocates named, disjoint groups of qubits from a contiguous range.
/// Within a group the first index is the least significant bit; an integer
/// x is encoded by setting qubit group[i] to bit i of x.
class RegisterLayout {
 public:
  const std::vector<std::size_t>& add(const std::string& name, std::size_t width,
                                      Role role = Role::kValue) {
    if (width == 0) throw StructuralError("register group needs at least one qubit");
    if (groups_.count(name) != 0) {
      throw StructuralError("register group name already used: " + name);
    }
    std::vector<std::size_t> qubits(width);
    for (std::size_t i = 0; i < width; ++i) qubits[i] = next_ + i;
    next_ += width;
    roles_[name] = role;
    return groups_[name] = std::move(qubits);
  }

  const std::vector<std::size_t>& group(const std::string& name) const {
    auto it = groups_.find(name);
    if (it == groups_.end()) throw StructuralError("unknown register group: " + name);
    return it->second;
  }

  Role role(const std::string& name) const {
    auto it = roles_.find(name);
    if (it == roles_.end()) throw StructuralError("unknown register group: " + name);
    return it->second;
  }

  std::size_t qubit_count() const { return next_; }

  /// Total width of all aux/carry/flag groups. These are the qubits a caller
  /// must supply clean and gets back clean (flags excepted, which carry the
  /// comparison result out).
  std::size_t ancilla_count() const {
    std::size_t count = 0;
    for (const auto& [name, role] : roles_) {
      if (role == Role::kAux || role == Role::kCarry || role == Role::kFlag) {
        count += groups_.at(name).size();
      }
    }
    return count;
  }

 private:
  std::size_t next_ = 0;
  std::map<std::string, std::vector<std::size_t>> groups_;
  std::map<std::string, Role> roles_;
};

}  // namespace qarith
