// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qarith/qarith.hpp"

namespace {

using qarith::Circuit;
using qarith::Relation;
using qarith::StateVector;

constexpr double kCertain = 1.0 - 1e-9;

bool holds(std::uint64_t x, Relation relation, std::uint64_t a) {
  switch (relation) {
    case Relation::kLess: return x < a;
    case Relation::kLessEqual: return x <= a;
    case Relation::kGreater: return x > a;
    case Relation::kGreaterEqual: return x >= a;
  }
  return false;
}

TEST(IntCompare, ExhaustiveWidthFourAllRelations) {
  const std::size_t n = 4;
  const auto reg = qtest::seq(0, n);
  for (Relation relation : {Relation::kLess, Relation::kLessEqual,
                            Relation::kGreater, Relation::kGreaterEqual}) {
    for (std::uint64_t a = 0; a < 16; ++a) {
      const Circuit circuit = qarith::int_compare(reg, n, a, relation);
      for (std::uint64_t x = 0; x < 16; ++x) {
        const StateVector state = qtest::run_on_basis(circuit, x);
        const std::uint64_t expected =
            x | (holds(x, relation, a) ? std::uint64_t{1} << n : 0);
        EXPECT_GT(qtest::basis_probability(state, expected), kCertain)
            << x << " vs " << a;
      }
    }
  }
}

TEST(IntCompare, BoundaryFiveAgainstFive) {
  const auto reg = qtest::seq(0, 4);
  const StateVector le = qtest::run_on_basis(
      qarith::int_compare(reg, 4, 5, Relation::kLessEqual), 5);
  EXPECT_GT(qtest::basis_probability(le, 5 | (1u << 4)), kCertain);
  const StateVector lt =
      qtest::run_on_basis(qarith::int_compare(reg, 4, 5, Relation::kLess), 5);
  EXPECT_GT(qtest::basis_probability(lt, 5), kCertain);
}

TEST(IntCompare, FlagXorSemanticsOnASetFlag) {
  const std::size_t n = 3;
  const auto reg = qtest::seq(0, n);
  const Circuit circuit = qarith::int_compare(reg, n, 5, Relation::kLess);
  for (std::uint64_t x = 0; x < 8; ++x) {
    const std::uint64_t input = x | (std::uint64_t{1} << n);
    const StateVector state = qtest::run_on_basis(circuit, input);
    const std::uint64_t expected = x | ((x < 5 ? 0u : 1u) << n);
    EXPECT_GT(qtest::basis_probability(state, expected), kCertain);
  }
}

TEST(IntCompare, SuperposedFlagStaysCoherent) {
  const std::size_t n = 3;
  const auto reg = qtest::seq(0, n);
  Circuit circuit(n + 1);
  circuit.add(qarith::make_h(n));
  circuit.append(qarith::int_compare(reg, n, 4, Relation::kLess));
  for (std::uint64_t x : {2ull, 6ull}) {
    const StateVector state = qtest::run_on_basis(circuit, x);
    EXPECT_NEAR(qtest::basis_probability(state, x), 0.5, 1e-9);
    EXPECT_NEAR(qtest::basis_probability(state, x | (1u << n)), 0.5, 1e-9);
  }
}

TEST(IntCompare, ResourceContract) {
  const std::size_t n = 4;
  const Circuit circuit =
      qarith::int_compare(qtest::seq(0, n), n, 9, Relation::kLess);
  const qarith::ResourceReport report = qarith::resources(circuit);
  EXPECT_EQ(circuit.qubit_count(), n + 1);  // one flag ancilla
  EXPECT_EQ(report.qft_invocations, 4u);
  EXPECT_EQ(report.count("CR"), 2 * n * n);
  for (std::size_t w = 2; w <= 6; ++w) {
    for (Relation relation : {Relation::kLess, Relation::kLessEqual,
                              Relation::kGreater, Relation::kGreaterEqual}) {
      const qarith::ResourceReport r = qarith::resources(
          qarith::int_compare(qtest::seq(0, w), w, 1, relation));
      EXPECT_EQ(r.qft_invocations, 4u);
      EXPECT_EQ(r.count("CR"), 2 * w * w) << "width " << w;
    }
  }
}

TEST(IntCompare, ConstantAtTheRegisterLimit) {
  // le against 2^n - 1 and gt against 2^n - 1 exercise the shifted constant
  // 2^n inside the borrow core.
  const std::size_t n = 3;
  const auto reg = qtest::seq(0, n);
  const Circuit le = qarith::int_compare(reg, n, 7, Relation::kLessEqual);
  const Circuit gt = qarith::int_compare(reg, n, 7, Relation::kGreater);
  for (std::uint64_t x = 0; x < 8; ++x) {
    EXPECT_GT(qtest::basis_probability(qtest::run_on_basis(le, x), x | (1u << n)),
              kCertain);
    EXPECT_GT(qtest::basis_probability(qtest::run_on_basis(gt, x), x), kCertain);
  }
  EXPECT_THROW(qarith::int_compare(reg, n, 8, Relation::kLess),
               qarith::DomainError);
}

TEST(StatesCompare, ExhaustiveWidthThreeAllRelations) {
  const std::size_t n = 3;
  const auto a_reg = qtest::seq(0, n);
  const auto b_reg = qtest::seq(n, n);
  const std::size_t flag = 2 * n;
  for (Relation relation : {Relation::kLess, Relation::kLessEqual,
                            Relation::kGreater, Relation::kGreaterEqual}) {
    const Circuit circuit = qarith::states_compare(a_reg, b_reg, flag, relation);
    for (std::uint64_t a = 0; a < 8; ++a) {
      for (std::uint64_t b = 0; b < 8; ++b) {
        std::uint64_t input = qarith::deposit_bits(0, a_reg, a);
        input = qarith::deposit_bits(input, b_reg, b);
        const std::uint64_t expected =
            input | (holds(a, relation, b) ? std::uint64_t{1} << flag : 0);
        const StateVector state = qtest::run_on_basis(circuit, input);
        EXPECT_GT(qtest::basis_probability(state, expected), kCertain)
            << a << " vs " << b;
      }
    }
  }
}

TEST(StatesCompare, SuperposedOperand) {
  const std::size_t n = 2;
  const auto a_reg = qtest::seq(0, n);
  const auto b_reg = qtest::seq(n, n);
  const std::size_t flag = 2 * n;
  Circuit circuit(2 * n + 1);
  circuit.add(qarith::make_h(a_reg[1]));  // a in {0, 2} uniformly
  circuit.append(qarith::states_compare(a_reg, b_reg, flag, Relation::kLess));
  const StateVector state =
      qtest::run_on_basis(circuit, qarith::deposit_bits(0, b_reg, 1));
  std::uint64_t less = qarith::deposit_bits(0, b_reg, 1);
  less |= std::uint64_t{1} << flag;  // branch a = 0 < 1
  std::uint64_t geq = qarith::deposit_bits(0, a_reg, 2);
  geq = qarith::deposit_bits(geq, b_reg, 1);  // branch a = 2 >= 1
  EXPECT_NEAR(qtest::basis_probability(state, less), 0.5, 1e-9);
  EXPECT_NEAR(qtest::basis_probability(state, geq), 0.5, 1e-9);
}

TEST(ModReduce, ExhaustiveFullRange) {
  const std::size_t n = 3;
  const auto reg = qtest::seq(0, n);
  for (std::uint64_t modulus = 4; modulus < 8; ++modulus) {
    const Circuit circuit = qarith::mod_reduce(reg, n, modulus);
    for (std::uint64_t x = 0; x < 8; ++x) {
      std::uint64_t expected = x % modulus;
      if (x < modulus) expected |= std::uint64_t{1} << n;  // no reduction happened
      const StateVector state = qtest::run_on_basis(circuit, x);
      EXPECT_GT(qtest::basis_probability(state, expected), kCertain)
          << x << " mod " << modulus;
    }
  }
}

TEST(ModReduce, RejectsModuliOutsideTheHalfOpenWindow) {
  const auto reg = qtest::seq(0, 3);
  EXPECT_THROW(qarith::mod_reduce(reg, 3, 3), qarith::DomainError);
  EXPECT_THROW(qarith::mod_reduce(reg, 3, 8), qarith::DomainError);
}

TEST(ReducedModAdd, ReducedInputsLeaveTheComparisonFlag) {
  const std::size_t n = 3;
  const auto reg = qtest::seq(0, n);
  for (std::uint64_t modulus : {5ull, 6ull, 7ull, 8ull}) {
    for (std::uint64_t a = 0; a < modulus; ++a) {
      const Circuit circuit =
          qarith::reduced_mod_add(reg, n, a, modulus, /*full_space=*/false);
      for (std::uint64_t x = 0; x < modulus; ++x) {
        std::uint64_t expected = (x + a) % modulus;
        if (x + a < modulus) expected |= std::uint64_t{1} << n;
        const StateVector state = qtest::run_on_basis(circuit, x);
        EXPECT_GT(qtest::basis_probability(state, expected), kCertain)
            << x << " + " << a << " mod " << modulus;
      }
    }
  }
}

TEST(ReducedModAdd, FullSpaceModeCapsTheConstant) {
  const std::size_t n = 3;
  const auto reg = qtest::seq(0, n);
  const std::uint64_t modulus = 6;  // constants up to 2M - 2^n = 4
  for (std::uint64_t a = 0; a <= 4; ++a) {
    const Circuit circuit =
        qarith::reduced_mod_add(reg, n, a, modulus, /*full_space=*/true);
    for (std::uint64_t x = 0; x < 8; ++x) {
      std::uint64_t expected = (x + a) % modulus;
      if (x + a < modulus) expected |= std::uint64_t{1} << n;
      const StateVector state = qtest::run_on_basis(circuit, x);
      EXPECT_GT(qtest::basis_probability(state, expected), kCertain);
    }
  }
  EXPECT_THROW(qarith::reduced_mod_add(reg, n, 5, modulus, /*full_space=*/true),
               qarith::DomainError);
}

TEST(CleanModAdd, ExhaustiveWithRestoredFlag) {
  for (std::uint64_t modulus : {5ull, 11ull, 13ull}) {
    const std::size_t n = qarith::modulus_register_width(modulus);
    const auto reg = qtest::seq(0, n);
    for (std::uint64_t a = 0; a < modulus; ++a) {
      const Circuit circuit = qarith::clean_mod_add(reg, n, a, modulus);
      for (std::uint64_t x = 0; x < modulus; ++x) {
        const StateVector state = qtest::run_on_basis(circuit, x);
        EXPECT_GT(qtest::basis_probability(state, (x + a) % modulus), kCertain)
            << x << " + " << a << " mod " << modulus;
      }
    }
  }
}

TEST(CleanModAdd, AcceptsThePowerOfTwoEdgeModulus) {
  const std::size_t n = 3;
  const auto reg = qtest::seq(0, n);
  const Circuit circuit = qarith::clean_mod_add(reg, n, 5, 8);
  for (std::uint64_t x = 0; x < 8; ++x) {
    const StateVector state = qtest::run_on_basis(circuit, x);
    EXPECT_GT(qtest::basis_probability(state, (x + 5) % 8), kCertain);
  }
}

TEST(CleanModAdd, AcceptsModuliNarrowerThanTheRegister) {
  // The window is [2, 2^n] for any register width n; the carry-ancilla adder
  // insists on the exact modulus width instead.
  const std::size_t n = 3;
  const auto reg = qtest::seq(0, n);
  for (std::uint64_t modulus : {2ull, 3ull}) {
    for (std::uint64_t a = 0; a < modulus; ++a) {
      const Circuit circuit = qarith::clean_mod_add(reg, n, a, modulus);
      for (std::uint64_t x = 0; x < modulus; ++x) {
        const StateVector state = qtest::run_on_basis(circuit, x);
        EXPECT_GT(qtest::basis_probability(state, (x + a) % modulus), kCertain);
      }
    }
  }
  EXPECT_THROW(qarith::const_mod_add(reg, n, 1, 3), qarith::StructuralError);
}

TEST(CleanModAdd, EightFourierBlocks) {
  const std::size_t n = qarith::modulus_register_width(11);
  const Circuit circuit = qarith::clean_mod_add(qtest::seq(0, n), n, 7, 11);
  EXPECT_EQ(qarith::resources(circuit).qft_invocations, 8u);
}

TEST(FullspaceModAdd, ExhaustiveOverAllInputs) {
  const std::size_t n = 3;
  const auto reg = qtest::seq(0, n);
  for (std::uint64_t modulus : {5ull, 7ull}) {
    for (std::uint64_t a = 0; a < modulus; ++a) {
      const Circuit circuit = qarith::fullspace_mod_add(reg, n, n + 1, a, modulus);
      for (std::uint64_t x = 0; x < 8; ++x) {
        std::uint64_t expected = (x % modulus + a) % modulus;
        if (x < modulus) expected |= std::uint64_t{1} << n;  // reduction record
        const StateVector state = qtest::run_on_basis(circuit, x);
        EXPECT_GT(qtest::basis_probability(state, expected), kCertain)
            << x << " + " << a << " mod " << modulus;
      }
    }
  }
}

TEST(FullspaceModAdd, TwelveFourierBlocksAndTwoAncillas) {
  const std::size_t n = 3;
  const Circuit circuit = qarith::fullspace_mod_add(qtest::seq(0, n), n, n + 1, 2, 5);
  EXPECT_EQ(circuit.qubit_count(), n + 2);
  EXPECT_EQ(qarith::resources(circuit).qft_invocations, 12u);
}

}  // namespace
