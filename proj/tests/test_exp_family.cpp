#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "orlicz/embedding.hpp"
#include "orlicz/exp_family.hpp"

using namespace orlicz;
using namespace orlicz::exp_family;

TEST(GSeries, Values) {
  EXPECT_NEAR(g_series(0), 1, 1e-12);
  EXPECT_NEAR(g_series(0.431870), 2, 1e-5);
  EXPECT_NEAR(g_series(0.5), oracle::g_half, 1e-13);
  EXPECT_NEAR(g_series(8.0 / 27), oracle::g_8_27, 1e-13);
  EXPECT_NEAR(g_series(0.999), oracle::g_0_999, 1e-9);
}

TEST(GSeries, BadAlpha) {
  for (double a : {1.0, 1.5}) {
    try {
      g_series(a);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::bad_alpha);
    }
  }
  EXPECT_THROW(g_quadrature(1), Error);
}

TEST(GSeries, NegativeAlphaAllowed) { EXPECT_LT(g_series(-0.5), 1); }

TEST(GQuadrature, Values) {
  EXPECT_NEAR(g_quadrature(0), 1, 1e-12);
  EXPECT_NEAR(g_quadrature(oracle::beta0), 2, 1e-10);
  EXPECT_NEAR(g_quadrature(0.5), oracle::g_half, 1e-10);
  EXPECT_NEAR(g_quadrature(0.999), 1000, 100);
  EXPECT_NEAR(g_quadrature(0.999), oracle::g_0_999, 1e-6);
}

TEST(GSeries, AgreesWithQuadratureOnGrid) {
  for (int i = 0; i < 50; ++i) {
    const double a = 0.9 * i / 49;
    EXPECT_NEAR(g_series(a), g_quadrature(a), 1e-8) << a;
  }
}

TEST(GSeries, StrictlyIncreasingAboveLowerBound) {
  double prev = g_series(0);
  for (int i = 1; i < 200; ++i) {
    const double a = 0.995 * i / 199;
    const double g = g_series(a);
    EXPECT_GT(g, prev) << a;
    EXPECT_GT(g, g_lower_bound(a)) << a;
    prev = g;
  }
}

TEST(GSeries, Asymptotics) {
  EXPECT_NEAR((g_series(1e-4) - 1) / 1e-4, oracle::g_slope_1em4, 1e-10);
  EXPECT_NEAR((g_series(1e-4) - 1) / 1e-4, 2 * std::log(2.0), 1e-3);
  EXPECT_NEAR((1 - 0.9999) * g_series(0.9999), 1, 2e-3);
}

TEST(Beta0, RootAndResidual) {
  const double b = beta0(1e-10);
  EXPECT_NEAR(b, 0.431870, 5e-6);
  EXPECT_NEAR(b, oracle::beta0, 1e-12);
  EXPECT_NEAR(g_series(b), 2, 1e-10);
  EXPECT_THROW(beta0(0), Error);
}

// The bound 2^{b-1}/(1-b) at b = beta0 evaluates to about 1.1872.
TEST(Beta0, LowerBoundAtRoot) {
  const double b = beta0(1e-10);
  EXPECT_NEAR(g_lower_bound(b), oracle::g_lower_bound_beta0, 1e-12);
  EXPECT_GT(g_series(b), g_lower_bound(b));
}

TEST(K0Exp, Values) {
  EXPECT_NEAR(k0_exp(2), oracle::k0_exp_m2, 1e-12);
  EXPECT_NEAR(k0_exp(1), oracle::k0_exp_m1, 1e-12);
  EXPECT_NEAR(k0_exp(100), oracle::k0_exp_m100, 1e-12);
  EXPECT_LT(k0_exp(100), 1.01);
  EXPECT_THROW(k0_exp(0), Error);
}

TEST(K0Exp, DecreasingToOne) {
  double prev = inf;
  for (double m : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 64.0, 1024.0}) {
    const double k = k0_exp(m);
    EXPECT_LT(k, prev);
    EXPECT_GT(k, 1);
    prev = k;
  }
  EXPECT_LT(k0_exp(1e6) - 1, 1e-6);
}

TEST(QClosed, Examples) {
  EXPECT_NEAR(q_exp_closed(2, k0_exp(2)), 1, 1e-12);
  EXPECT_LT(q_exp_closed(2, 1e4), 1e-7);
  EXPECT_NEAR(q_exp_closed(3, 1.5), oracle::g_8_27 - 1, 1e-13);
  EXPECT_NEAR(q_exp_closed(3, 1.5), g_quadrature(std::pow(1.5, -3)) - 1, 1e-10);
  EXPECT_THROW(q_exp_closed(2, 1), Error);
}

TEST(QClosed, MatchesGenericQ) {
  for (double m : {1.0, 1.5, 2.0, 3.0, 5.0})
    for (double k : {1.2, 1.5, 2.0, 3.0}) {
      const auto q = q_of_k(YoungFunction::exp_m(m), k, 1);
      ASSERT_TRUE(q.is_finite());
      EXPECT_NEAR(q.value, q_exp_closed(m, k), 1e-6) << m << " " << k;
    }
}

TEST(K0Exp, GenericRootAgrees) {
  for (double m : {1.5, 2.0, 3.0}) EXPECT_NEAR(k0(YoungFunction::exp_m(m), 1), k0_exp(m), 1e-4);
}

TEST(C5, QuadratureMatchesTwoLn2) {
  const auto [q, exact] = c5_verify();
  EXPECT_NEAR(exact, oracle::two_ln2, 1e-15);
  EXPECT_NEAR(q, exact, 1e-8);
  EXPECT_NEAR(q, 1.386294, 1e-6);
}
