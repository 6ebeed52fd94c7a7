#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "orlicz/tail.hpp"

using namespace orlicz;

TEST(VofN, PowerTwo) {
  const auto v = v_of_n(YoungFunction::power(2), 1);
  EXPECT_EQ(v(0.5), 1);
  EXPECT_DOUBLE_EQ(v(2), 0.25);
  EXPECT_LT(v(1e8), 1e-15);
}

TEST(VofN, ExpTwoFlatUpToT0) {
  const auto v = v_of_n(YoungFunction::exp_m(2), 1);
  EXPECT_EQ(v(0.5), 1);
  EXPECT_EQ(v(oracle::sqrt_2ln2 * (1 - 1e-12)), 1);
  EXPECT_LT(v(oracle::sqrt_2ln2 * 1.01), 1);
}

TEST(VofN, InfiniteMass) {
  const auto v = v_of_n(YoungFunction::power(2), inf);
  EXPECT_DOUBLE_EQ(v(0.1), 100);
  EXPECT_DOUBLE_EQ(v(2), 0.25);
}

TEST(VofN, NonIncreasingToZero) {
  for (const auto& n : {YoungFunction::power(1.5), YoungFunction::exp_m(2), YoungFunction::delta(2)}) {
    const auto v = v_of_n(n, 1);
    double prev = inf;
    for (double t : log_grid(1e-4, 1e6, 10)) {
      EXPECT_LE(v(t), prev);
      prev = v(t);
    }
    EXPECT_LT(v(1e12), 1e-6) << n.name();
  }
}

TEST(StepTail, TwoPieces) {
  const auto f = tail_of_step({{2, 0.3}, {1, 0.5}}, 1);
  ASSERT_TRUE(f.tail.is_step());
  EXPECT_DOUBLE_EQ(f.tail(0.5), 0.8);
  EXPECT_DOUBLE_EQ(f.tail(1), 0.8);  // left-continuous
  EXPECT_DOUBLE_EQ(f.tail(1.5), 0.3);
  EXPECT_DOUBLE_EQ(f.tail(2), 0.3);
  EXPECT_EQ(f.tail(2.0000001), 0);
}

TEST(StepTail, EmptyIsZero) {
  const auto f = tail_of_step({}, 1);
  EXPECT_TRUE(f.tail.is_zero());
  EXPECT_EQ(f.tail(0.1), 0);
}

TEST(StepTail, Indicator) {
  const auto f = indicator(0.4, 1);
  EXPECT_DOUBLE_EQ(f.tail(1), 0.4);
  EXPECT_EQ(f.tail(1.1), 0);
}

TEST(StepTail, MassOverflow) {
  try {
    tail_of_step({{1, 0.7}, {2, 0.5}}, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::mass_overflow);
  }
}

TEST(StepTail, EqualValuesMerge) {
  const auto f = tail_of_step({{1, 0.2}, {1, 0.3}}, 1);
  ASSERT_EQ(f.tail.step().steps().size(), 1u);
  EXPECT_DOUBLE_EQ(f.tail(1), 0.5);
}

TEST(LeftInverse, Examples) {
  const auto f = tail_of_step({{2, 0.3}, {1, 0.5}}, 1);
  EXPECT_NEAR(left_inverse(f.tail, 0.5), 1, 1e-12);
  EXPECT_EQ(left_inverse(tail_of_step({}, 1).tail, 0.3), 0);
  EXPECT_NEAR(left_inverse(v_of_n(YoungFunction::power(2), 1), 0.25), 2, 1e-12);
}

TEST(TailNorm, SelfIsOne) {
  const auto v = v_of_n(YoungFunction::exp_m(2), 1);
  EXPECT_NEAR(tail_norm(v, v), 1, 1e-12);
  const auto p = power_tail(1.5, inf);
  EXPECT_NEAR(tail_norm(p, p), 1, 1e-12);
}

TEST(TailNorm, IndicatorAgainstV) {
  for (const auto& n : {YoungFunction::power(2), YoungFunction::exp_m(2), YoungFunction::delta(2)})
    for (double a : {0.1, 0.5, 1.0}) {
      const double expected = 1 / n.inverse(1 / a);
      EXPECT_NEAR(tail_norm(indicator(a, 1).tail, v_of_n(n, 1)), expected, 1e-10 * expected) << n.name() << a;
    }
}

TEST(TailNorm, ZeroTail) { EXPECT_EQ(tail_norm(tail_of_step({}, 1).tail, v_of_n(YoungFunction::power(2), 1)), 0); }

TEST(TailNorm, InfiniteWhenNeverDominated) {
  // t^{-1} cannot sit under any dilation of t^{-2} for large t
  EXPECT_TRUE(std::isinf(tail_norm(power_tail(1, inf), power_tail(2, inf))));
}

TEST(TailNorm, HomogeneityAndMonotonicity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 10);
  const auto theta = v_of_n(YoungFunction::exp_m(1.5), 1);
  for (int i = 0; i < 50; ++i) {
    const auto f = tail_of_step({{u(rng), 0.2}, {u(rng), 0.3}, {u(rng), 0.1}}, 1);
    const double base = tail_norm(f.tail, theta);
    const double c = u(rng);
    EXPECT_NEAR(tail_norm(dilate(f.tail, c), theta), c * base, 1e-10 * c * base);

    auto bigger = f.tail.step().pieces();
    bigger.front().value *= 2;
    EXPECT_LE(base, tail_norm(tail_of_step(bigger, 1).tail, theta) * (1 + 1e-12));
  }
}

TEST(TailNorm, PositiveForNonzero) {
  EXPECT_GT(tail_norm(indicator(1e-3, 1).tail, v_of_n(YoungFunction::power(2), 1)), 0);
}

TEST(AnalyticTails, PowerAndExp) {
  const auto p = power_tail(2, 1);
  EXPECT_EQ(p(0.5), 1);
  EXPECT_DOUBLE_EQ(p(4), 1.0 / 16);
  const auto e = exp_tail(1, 2, 1);
  EXPECT_NEAR(e(1), std::exp(-1.0), 1e-15);
}

TEST(Dilate, ScalesArgument) {
  const auto f = tail_of_step({{2, 0.3}, {1, 0.5}}, 1);
  const auto g = dilate(f.tail, 3);
  EXPECT_DOUBLE_EQ(g(3), 0.8);
  EXPECT_DOUBLE_EQ(g(6), 0.3);
  EXPECT_EQ(g(6.1), 0);
}
