#include <cmath>

#include <gtest/gtest.h>

#include "vsar/atomic.hpp"

namespace vsar {
namespace {

constexpr std::size_t kDim = 3000;

TEST(NumericCodec, EncodingIsAHomomorphism) {
  Rng rng(1);
  const NumericCodec v(kDim, rng);
  for (double x : {-3.0, -0.5, 0.0, 1.0, 2.25, 7.0}) {
    for (double y : {-2.0, 0.75, 1.0, 4.0}) {
      EXPECT_LT(max_phase_error(bind(v.encode(x), v.encode(y)), v.encode(x + y)), 1e-9) << x << " + " << y;
    }
  }
}

TEST(NumericCodec, ZeroIsIdentityAndPowersScale) {
  Rng rng(2);
  const NumericCodec v(kDim, rng);
  EXPECT_EQ(max_phase_error(v.encode(0.0), HdVector::identity(kDim)), 0.0);
  EXPECT_LT(max_phase_error(power(v.encode(1.0), 3.0), v.encode(3.0)), 1e-9);
}

TEST(NumericCodec, SimilarityDecaysWithDistance) {
  Rng rng(3);
  const NumericCodec v(kDim, rng);
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) {
      if (a == b) continue;
      EXPECT_LT(std::abs(similarity(v.encode(a), v.encode(b))), 0.1);
    }
  }
}

TEST(NumericCodec, RejectsNonFiniteInput) {
  Rng rng(4);
  const NumericCodec v(16, rng);
  EXPECT_THROW(v.encode(std::nan("")), NonFiniteValue);
  EXPECT_THROW(v.encode(INFINITY), NonFiniteValue);
  EXPECT_THROW(NumericCodec(0, rng), InvalidDimension);
}

TEST(CircularCodec, IsExactlyPeriodic) {
  for (int period : {2, 3, 4, 9}) {
    Rng rng(static_cast<std::uint64_t>(period));
    const auto c = make_circular_codec(period, kDim, rng);
    for (int x = -2 * period; x <= 2 * period; ++x) {
      const auto a = c.encode(x);
      const auto b = c.encode(x + period);
      for (std::size_t i = 0; i < kDim; ++i) ASSERT_EQ(a[i], b[i]) << "period " << period << " x " << x;
    }
  }
}

TEST(CircularCodec, BindingAddsModuloPeriod) {
  Rng rng(5);
  const auto c = make_circular_codec(9, kDim, rng);
  for (int x = 0; x < 9; ++x) {
    for (int y = 0; y < 9; ++y) {
      EXPECT_LT(max_phase_error(bind(c.encode(x), c.encode(y)), c.encode((x + y) % 9)), 1e-9);
    }
  }
}

TEST(CircularCodec, DistinctResiduesAreNearlyOrthogonal) {
  Rng rng(6);
  const auto c = make_circular_codec(4, kDim, rng);
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      if (x == y) continue;
      EXPECT_LT(std::abs(similarity(c.encode(x), c.encode(y))), 0.1);
    }
  }
}

TEST(CircularCodec, FullCycleSumsToZero) {
  Rng rng(7);
  const auto c = make_circular_codec(4, kDim, rng);
  // Entries with step 0 are the only ones that survive.
  HdVector s(kDim);
  for (int x = 0; x < 4; ++x) add_scaled(s, c.encode(x), 1.0);
  std::size_t survivors = 0;
  for (const auto& z : s) survivors += std::abs(z) > 1e-9 ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(survivors) / kDim, 0.25, 0.05);
}

TEST(BooleanCodec, ValuesAreAntipodal) {
  Rng rng(8);
  const BooleanCodec bv(kDim, rng);
  EXPECT_NEAR(similarity(bv.e0(), HdVector::identity(kDim)), 1.0, 1e-12);
  EXPECT_LT(std::abs(similarity(bv.e0(), bv.e1())), 0.1);
  EXPECT_LT(max_phase_error(bind(bv.e1(), bv.e1()), bv.e0()), 1e-12);
  EXPECT_FALSE(bv.decode(bv.e0()));
  EXPECT_TRUE(bv.decode(bv.e1()));
}

class LogicTruthTable : public ::testing::Test {
 protected:
  Rng rng{9};
  BooleanCodec bv{kDim, rng};
};

TEST_F(LogicTruthTable, Not) {
  for (bool a : {false, true}) EXPECT_GT(similarity(logic(LogicOp::kNot, bv.value(a), bv), bv.value(!a)), 0.95);
}

TEST_F(LogicTruthTable, BinaryOperations) {
  struct Case {
    LogicOp op;
    bool (*classical)(bool, bool);
  };
  const Case cases[] = {
      {LogicOp::kXor, [](bool a, bool b) { return a != b; }},
      {LogicOp::kAnd, [](bool a, bool b) { return a && b; }},
      {LogicOp::kOr, [](bool a, bool b) { return a || b; }},
  };
  for (const auto& c : cases) {
    for (bool a : {false, true}) {
      for (bool b : {false, true}) {
        const auto out = logic(c.op, bv.value(a), bv.value(b), bv);
        EXPECT_GT(similarity(out, bv.value(c.classical(a, b))), 0.95)
            << "op " << static_cast<int>(c.op) << " a " << a << " b " << b;
      }
    }
  }
}

TEST_F(LogicTruthTable, ArityMismatchThrows) {
  EXPECT_THROW(logic(LogicOp::kAnd, bv.e0(), bv), ArityError);
  EXPECT_THROW(logic(LogicOp::kNot, bv.e0(), bv.e1(), bv), ArityError);
}

TEST(Codecs, SameSeedSameVectors) {
  Rng a(11);
  Rng b(11);
  const NumericCodec x(64, a);
  const NumericCodec y(64, b);
  EXPECT_EQ(max_phase_error(x.encode(2.5), y.encode(2.5)), 0.0);
}

}  // namespace
}  // namespace vsar
