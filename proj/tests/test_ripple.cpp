// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qarith/qarith.hpp"

namespace {

using qarith::Circuit;
using qarith::SignedRegisterSpec;

TEST(Adder, ExhaustiveWrappingWidths) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto a_reg = qtest::seq(0, n);
    const auto b_reg = qtest::seq(n, n);
    const auto aux = qtest::seq(2 * n, 1);
    const Circuit circuit = qarith::adder(a_reg, b_reg, aux, /*keep_carry=*/false);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        std::uint64_t input = qarith::deposit_bits(0, a_reg, a);
        input = qarith::deposit_bits(input, b_reg, b);
        const std::uint64_t output = qarith::apply_to_basis(circuit, input);
        EXPECT_EQ(qarith::extract_bits(output, a_reg),
                  (a + b) & ((std::uint64_t{1} << n) - 1));
        EXPECT_EQ(qarith::extract_bits(output, b_reg), b) << "addend clobbered";
        EXPECT_EQ(qarith::extract_bits(output, aux), 0u) << "carry ancilla dirty";
      }
    }
  }
}

TEST(Adder, KeptCarryMakesTheSumExact) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto a_reg = qtest::seq(0, n);
    const auto b_reg = qtest::seq(n, n);
    const auto aux = qtest::seq(2 * n, 2);
    const Circuit circuit = qarith::adder(a_reg, b_reg, aux, /*keep_carry=*/true);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        std::uint64_t input = qarith::deposit_bits(0, a_reg, a);
        input = qarith::deposit_bits(input, b_reg, b);
        const std::uint64_t output = qarith::apply_to_basis(circuit, input);
        const std::uint64_t carry = qarith::extract_bits(output, {&aux[1], 1});
        EXPECT_EQ((carry << n) | qarith::extract_bits(output, a_reg), a + b);
        EXPECT_EQ(qarith::extract_bits(output, {&aux[0], 1}), 0u);
      }
    }
  }
}

TEST(Adder, NinePlusNineOverflowsIntoTheCarry) {
  const auto a_reg = qtest::seq(0, 4);
  const auto b_reg = qtest::seq(4, 4);
  const auto aux = qtest::seq(8, 2);
  const Circuit circuit = qarith::adder(a_reg, b_reg, aux, /*keep_carry=*/true);
  std::uint64_t input = qarith::deposit_bits(0, a_reg, 9);
  input = qarith::deposit_bits(input, b_reg, 9);
  const std::uint64_t output = qarith::apply_to_basis(circuit, input);
  EXPECT_EQ(qarith::extract_bits(output, a_reg), 2u);
  EXPECT_EQ(qarith::extract_bits(output, {&aux[1], 1}), 1u);
}

TEST(Adder, NeedsItsAncillas) {
  const auto a_reg = qtest::seq(0, 3);
  const auto b_reg = qtest::seq(3, 3);
  const auto one = qtest::seq(6, 1);
  EXPECT_THROW(qarith::adder(a_reg, b_reg, one, /*keep_carry=*/true),
               qarith::CapacityError);
}

TEST(Complement, MinusThreeBecomesTwosComplement) {
  const auto qubits = qtest::seq(0, 5);  // 4 value bits + sign
  const SignedRegisterSpec reg = qarith::signed_register(qubits);
  const Circuit circuit = qarith::complement_circuit(reg, 5);
  const std::uint64_t input = qtest::encode_signed(-3, 4);
  const std::uint64_t output = qarith::apply_to_basis(circuit, input);
  EXPECT_EQ(output & 0b1111u, 0b1101u);       // 2^4 - 3
  EXPECT_EQ((output >> 4) & 1u, 1u);          // sign untouched
  EXPECT_EQ((output >> 5) & 1u, 0u);          // scratch restored
  EXPECT_EQ(qarith::apply_to_basis(circuit, output), input) << "not involutive";
}

TEST(Complement, PositiveValuesPassThrough) {
  const auto qubits = qtest::seq(0, 4);
  const SignedRegisterSpec reg = qarith::signed_register(qubits);
  const Circuit circuit = qarith::complement_circuit(reg, 4);
  for (std::uint64_t mag = 0; mag < 8; ++mag) {
    EXPECT_EQ(qarith::apply_to_basis(circuit, mag), mag);
  }
}

struct SignedFixture {
  std::size_t value_width;
  SignedRegisterSpec a;
  SignedRegisterSpec b;
  std::vector<std::size_t> aux;

  explicit SignedFixture(std::size_t w)
      : value_width(w),
        a{qtest::seq(0, w + 1), true, 0},
        b{qtest::seq(w + 1, w + 1), true, 0},
        aux(qtest::seq(2 * w + 2, w + 3)) {}

  std::uint64_t pack(std::int64_t va, std::int64_t vb) const {
    std::uint64_t input =
        qarith::deposit_bits(0, a.qubits, qtest::encode_signed(va, value_width));
    return qarith::deposit_bits(input, b.qubits,
                                qtest::encode_signed(vb, value_width));
  }
};

TEST(SignedSum, ExhaustiveAdditionWidthThree) {
  const SignedFixture fx(3);
  const Circuit circuit = qarith::signed_add(fx.a, fx.b, fx.aux);
  for (std::int64_t a = -7; a <= 7; ++a) {
    for (std::int64_t b = -7; b <= 7; ++b) {
      if (std::abs(a + b) > 7) continue;  // representable results only
      const std::uint64_t output = qarith::apply_to_basis(circuit, fx.pack(a, b));
      EXPECT_EQ(qtest::decode_signed(qarith::extract_bits(output, fx.a.qubits), 3),
                a + b)
          << a << " + " << b;
      EXPECT_EQ(qtest::decode_signed(qarith::extract_bits(output, fx.b.qubits), 3), b);
      EXPECT_EQ(qarith::extract_bits(output, fx.aux), 0u);
    }
  }
}

TEST(SignedSum, ExhaustiveSubtractionWidthThree) {
  const SignedFixture fx(3);
  const Circuit circuit = qarith::signed_sub(fx.a, fx.b, fx.aux);
  for (std::int64_t a = -7; a <= 7; ++a) {
    for (std::int64_t b = -7; b <= 7; ++b) {
      if (std::abs(a - b) > 7) continue;
      const std::uint64_t output = qarith::apply_to_basis(circuit, fx.pack(a, b));
      EXPECT_EQ(qtest::decode_signed(qarith::extract_bits(output, fx.a.qubits), 3),
                a - b)
          << a << " - " << b;
    }
  }
}

TEST(SignedSum, FiveMinusThreeAndThreeMinusFive) {
  const SignedFixture fx(3);
  const Circuit circuit = qarith::signed_sub(fx.a, fx.b, fx.aux);
  std::uint64_t output = qarith::apply_to_basis(circuit, fx.pack(5, 3));
  EXPECT_EQ(qtest::decode_signed(qarith::extract_bits(output, fx.a.qubits), 3), 2);
  output = qarith::apply_to_basis(circuit, fx.pack(3, 5));
  EXPECT_EQ(qtest::decode_signed(qarith::extract_bits(output, fx.a.qubits), 3), -2);
}

TEST(SignedSum, SubUndoesAdd) {
  const SignedFixture fx(2);
  Circuit round_trip(qarith::signed_add(fx.a, fx.b, fx.aux).qubit_count());
  round_trip.append(qarith::signed_add(fx.a, fx.b, fx.aux));
  round_trip.append(qarith::signed_sub(fx.a, fx.b, fx.aux));
  for (std::int64_t a = -3; a <= 3; ++a) {
    for (std::int64_t b = -3; b <= 3; ++b) {
      const std::uint64_t input = fx.pack(a, b);
      EXPECT_EQ(qarith::apply_to_basis(round_trip, input), input);
    }
  }
}

TEST(SignedSum, RefusesASmallAuxPool) {
  const SignedFixture fx(3);
  const auto short_aux = qtest::seq(2 * 3 + 2, 3);
  EXPECT_THROW(qarith::signed_add(fx.a, fx.b, short_aux), qarith::CapacityError);
}

TEST(Multiplier, UnsignedExhaustive) {
  for (std::size_t w = 2; w <= 3; ++w) {
    const auto a_reg = qtest::seq(0, w);
    const auto b_reg = qtest::seq(w, w);
    const auto aux = qtest::seq(2 * w, w + 1);
    const auto result = qtest::seq(3 * w + 1, 2 * w);
    const Circuit circuit =
        qarith::multiplier(a_reg, b_reg, aux, result, /*is_signed=*/false);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << w); ++a) {
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << w); ++b) {
        std::uint64_t input = qarith::deposit_bits(0, a_reg, a);
        input = qarith::deposit_bits(input, b_reg, b);
        const std::uint64_t output = qarith::apply_to_basis(circuit, input);
        EXPECT_EQ(qarith::extract_bits(output, result), a * b) << a << "*" << b;
        EXPECT_EQ(qarith::extract_bits(output, a_reg), a);
        EXPECT_EQ(qarith::extract_bits(output, b_reg), b);
        EXPECT_EQ(qarith::extract_bits(output, aux), 0u);
      }
    }
  }
}

TEST(Multiplier, SignedExhaustive) {
  const std::size_t w = 3;  // 2 value bits + sign
  const auto a_reg = qtest::seq(0, w);
  const auto b_reg = qtest::seq(w, w);
  const auto aux = qtest::seq(2 * w, w);
  const auto result = qtest::seq(3 * w, 2 * w - 1);
  const Circuit circuit =
      qarith::multiplier(a_reg, b_reg, aux, result, /*is_signed=*/true);
  for (std::int64_t a = -3; a <= 3; ++a) {
    for (std::int64_t b = -3; b <= 3; ++b) {
      std::uint64_t input =
          qarith::deposit_bits(0, a_reg, qtest::encode_signed(a, 2));
      input = qarith::deposit_bits(input, b_reg, qtest::encode_signed(b, 2));
      const std::uint64_t output = qarith::apply_to_basis(circuit, input);
      EXPECT_EQ(qtest::decode_signed(qarith::extract_bits(output, result), 4), a * b)
          << a << "*" << b;
      EXPECT_EQ(qarith::extract_bits(output, aux), 0u);
    }
  }
}

TEST(Multiplier, ChecksItsRegisterContract) {
  const auto a_reg = qtest::seq(0, 3);
  const auto b_reg = qtest::seq(3, 3);
  EXPECT_THROW(qarith::multiplier(a_reg, b_reg, qtest::seq(6, 4), qtest::seq(10, 5),
                                  /*is_signed=*/false),
               qarith::StructuralError);
  EXPECT_THROW(qarith::multiplier(a_reg, b_reg, qtest::seq(6, 2), qtest::seq(8, 5),
                                  /*is_signed=*/true),
               qarith::CapacityError);
}

TEST(Divider, ExhaustiveWidthThree) {
  const std::size_t full = 4;  // 3 value bits + sign
  const SignedRegisterSpec a{qtest::seq(0, full), true, 0};
  const SignedRegisterSpec b{qtest::seq(full, full), true, 0};
  const auto quotient = qtest::seq(2 * full, full);
  const auto aux = qtest::seq(3 * full, 3);
  const Circuit circuit = qarith::divider(a, b, quotient, aux);
  for (std::uint64_t num = 0; num <= 7; ++num) {
    for (std::uint64_t den = 1; den <= 7; ++den) {
      std::uint64_t input = qarith::deposit_bits(0, a.qubits, num);
      input = qarith::deposit_bits(input, b.qubits, den);
      const std::uint64_t output = qarith::apply_to_basis(circuit, input);
      EXPECT_EQ(qarith::extract_bits(output, quotient), num / den)
          << num << "/" << den;
      EXPECT_EQ(qtest::decode_signed(qarith::extract_bits(output, a.qubits), 3),
                static_cast<std::int64_t>(num % den));
      EXPECT_EQ(qarith::extract_bits(output, b.qubits), den);
      EXPECT_EQ(qarith::extract_bits(output, aux), 0u);
    }
  }
}

TEST(Divider, RefusesWideUnrolls) {
  const SignedRegisterSpec a{qtest::seq(0, 18), true, 0};
  const SignedRegisterSpec b{qtest::seq(18, 18), true, 0};
  EXPECT_THROW(qarith::divider(a, b, qtest::seq(36, 18), qtest::seq(54, 3)),
               qarith::CapacityError);
}

TEST(Pipeline, DivideAddSubtractMultiply) {
  // (4 / 1 + 1 - 3) * 5 = 10, carried across four circuits with the
  // intermediate integers read back between stages.
  const std::size_t full = 4;
  const SignedRegisterSpec a{qtest::seq(0, full), true, 0};
  const SignedRegisterSpec b{qtest::seq(full, full), true, 0};
  const auto quotient = qtest::seq(2 * full, full);
  const auto div_aux = qtest::seq(3 * full, 3);
  std::uint64_t word = qarith::deposit_bits(0, a.qubits, 4);
  word = qarith::deposit_bits(word, b.qubits, 1);
  word = qarith::apply_to_basis(qarith::divider(a, b, quotient, div_aux), word);
  std::int64_t running =
      qtest::decode_signed(qarith::extract_bits(word, quotient), 3);
  EXPECT_EQ(running, 4);

  const SignedFixture fx(3);
  const Circuit add = qarith::signed_add(fx.a, fx.b, fx.aux);
  running = qtest::decode_signed(
      qarith::extract_bits(qarith::apply_to_basis(add, fx.pack(running, 1)),
                           fx.a.qubits),
      3);
  EXPECT_EQ(running, 5);

  const Circuit sub = qarith::signed_sub(fx.a, fx.b, fx.aux);
  running = qtest::decode_signed(
      qarith::extract_bits(qarith::apply_to_basis(sub, fx.pack(running, 3)),
                           fx.a.qubits),
      3);
  EXPECT_EQ(running, 2);

  const auto ma = qtest::seq(0, 4);
  const auto mb = qtest::seq(4, 4);
  const auto maux = qtest::seq(8, 4);
  const auto mresult = qtest::seq(12, 7);
  const Circuit mul = qarith::multiplier(ma, mb, maux, mresult, /*is_signed=*/true);
  std::uint64_t min =
      qarith::deposit_bits(0, ma, qtest::encode_signed(running, 3));
  min = qarith::deposit_bits(min, mb, qtest::encode_signed(5, 3));
  const std::uint64_t mout = qarith::apply_to_basis(mul, min);
  EXPECT_EQ(qtest::decode_signed(qarith::extract_bits(mout, mresult), 6), 10);
}

}  // namespace
