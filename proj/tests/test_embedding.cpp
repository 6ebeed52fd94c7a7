#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "orlicz/embedding.hpp"
#include "orlicz/exp_family.hpp"

using namespace orlicz;

TEST(Y0, ExpFamilyClosedForm) {
  for (double m : {1.0, 1.5, 2.0, 3.0})
    EXPECT_NEAR(y0(YoungFunction::exp_m(m), 1), std::pow(m * std::log(2.0), 1 / m), 1e-12);
  EXPECT_NEAR(y0(YoungFunction::exp_m(2), 1), oracle::sqrt_2ln2, 1e-12);
  EXPECT_EQ(y0(YoungFunction::power(2), inf), 0);
}

TEST(Q, ExpTwoAtK0IsOne) {
  const auto q = q_of_k(YoungFunction::exp_m(2), oracle::k0_exp_m2, 1);
  ASSERT_TRUE(q.is_finite());
  EXPECT_NEAR(q.value, 1, 1e-6);
}

TEST(Q, PowerDiverges) {
  for (double k : {1.1, 2.0, 10.0, 1e3}) EXPECT_TRUE(q_of_k(YoungFunction::power(2), k, 1).is_divergent()) << k;
}

TEST(Q, PowerInfiniteMassDivergesAtBothEnds) {
  EXPECT_TRUE(q_of_k(YoungFunction::power(3), 2, inf).is_divergent());
}

TEST(Q, LargeKIsSmall) {
  const auto q = q_of_k(YoungFunction::exp_m(2), 100, 1);
  ASSERT_TRUE(q.is_finite());
  EXPECT_LT(q.value, 1e-3);
}

TEST(Q, StrictlyDecreasing) {
  const auto n = YoungFunction::exp_m(2);
  double prev = inf;
  for (int i = 0; i < 20; ++i) {
    const double k = 1.05 * std::pow(50 / 1.05, i / 19.0);
    const auto q = q_of_k(n, k, 1);
    ASSERT_TRUE(q.is_finite()) << k;
    EXPECT_LT(q.value, prev) << k;
    prev = q.value;
  }
}

// Q(1.001) = G(1.001^-2) - 1 ≈ 500. The integrand decays like w^{-1.002},
// inside the classifier's divergence band, so it is reported divergent.
TEST(Q, NearOneExceedsHundred) {
  const auto q = q_of_k(YoungFunction::exp_m(2), 1.001, 1);
  EXPECT_TRUE(q.is_divergent() || q.value > 100);
  EXPECT_NEAR(exp_family::q_exp_closed(2, 1.001), oracle::q_exp2_k1001, 1e-9);
}

TEST(Criterion, ExpTwoCoincidentWithHalfWitness) {
  const auto r = j_criterion(YoungFunction::exp_m(2), 1);
  EXPECT_EQ(r.verdict, Coincidence::coincident);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GE(*r.witness, 0.5);
  EXPECT_EQ(r.steps.front().verdict, Verdict::divergent);  // C = 1 gives Q(1) = ∞
}

TEST(Criterion, PowerNonCoincident) {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const auto r = j_criterion(YoungFunction::power(p), 1);
    EXPECT_EQ(r.verdict, Coincidence::non_coincident) << p;
    EXPECT_FALSE(r.witness.has_value());
  }
}

TEST(Criterion, WitnessPropagatesDownward) {
  const auto n = YoungFunction::exp_m(1.5);
  const auto r = j_criterion(n, 1);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(criterion_integral(n, *r.witness / 2, 1).is_finite());
  EXPECT_TRUE(criterion_integral(n, *r.witness / 4, 1).is_finite());
}

TEST(Criterion, RejectsBadLadder) {
  EXPECT_THROW(j_criterion(YoungFunction::exp_m(2), 1, {}), Error);
  EXPECT_THROW(j_criterion(YoungFunction::exp_m(2), 1, {0.5, 1.0}), Error);
}

// The numeric classifier finds a finite criterion integral for delta(2) at
// C = 1/2, in line with the integrand w^{-1} exp(-2 ln 2 sqrt(ln w)).
TEST(Criterion, DeltaTwoIsNumericallyCoincident) {
  const auto r = j_criterion(YoungFunction::delta(2), 1);
  EXPECT_EQ(r.verdict, Coincidence::coincident);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, 0.5);
  EXPECT_NEAR(r.steps.back().value, oracle::delta2_criterion_half, 1e-2);
}

TEST(K0, ExpFamilyAgainstOracle) {
  const std::pair<double, double> cases[] = {{1, oracle::k0_exp_m1},     {1.5, oracle::k0_exp_m1_5},
                                             {2, oracle::k0_exp_m2},     {3, oracle::k0_exp_m3},
                                             {5, oracle::k0_exp_m5},     {100, oracle::k0_exp_m100}};
  for (const auto& [m, expected] : cases) {
    const auto r = k0_detail(YoungFunction::exp_m(m), 1);
    EXPECT_NEAR(r.value, expected, 1e-9) << m;
    EXPECT_NEAR(r.q_at_value, 1, 1e-8);
    EXPECT_GT(r.value, 1);
  }
  EXPECT_LT(k0(YoungFunction::exp_m(100), 1), 1.01);
}

TEST(K0, PowerIsDivergentModular) {
  try {
    k0(YoungFunction::power(2), 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::divergent_modular);
  }
}

TEST(Extremal, NormsForExpTwo) {
  const auto n = YoungFunction::exp_m(2);
  const auto g = extremal_function(n, 1);
  EXPECT_NEAR(weak_norm(n, g).value, 1, 1e-12);
  const auto s = luxemburg_norm(n, g);
  EXPECT_NEAR(s.value, oracle::k0_exp_m2, 1e-4);
  EXPECT_NEAR(s.modular_at_value, 1, 1e-8);
}

TEST(Extremal, PowerHasInfiniteStrongNorm) {
  const auto n = YoungFunction::power(2);
  EXPECT_TRUE(std::isinf(luxemburg_norm(n, extremal_function(n, 1)).value));
}

TEST(Report, ExpTwo) {
  const auto rep = embedding_report(YoungFunction::exp_m(2), 1);
  EXPECT_EQ(rep.verdict, Coincidence::coincident);
  EXPECT_TRUE(rep.classifier_agrees);
  ASSERT_TRUE(rep.k0.has_value());
  EXPECT_NEAR(*rep.k0, 1.5217, 1e-4);
  EXPECT_NEAR(*rep.q_at_k0, 1, 1e-8);
  EXPECT_NEAR(rep.t0, oracle::sqrt_2ln2, 1e-12);
  EXPECT_EQ(rep.q_trace.size(), default_q_grid().size());
  EXPECT_FALSE(rep.sharpness.empty());
}

TEST(Report, PowerFourNonCoincident) {
  const auto rep = embedding_report(YoungFunction::power(4), 1);
  EXPECT_EQ(rep.verdict, Coincidence::non_coincident);
  EXPECT_TRUE(rep.classifier_agrees);
  EXPECT_FALSE(rep.k0.has_value());
  EXPECT_FALSE(rep.evidence.empty());
}

TEST(Report, ExpOneAndHalf) {
  const auto rep = embedding_report(YoungFunction::exp_m(1.5), 1);
  ASSERT_TRUE(rep.k0.has_value());
  EXPECT_NEAR(*rep.k0, std::pow(0.431870, -1 / 1.5), 1e-4);
}

TEST(Report, DeltaOverrideDisagreesWithClassifier) {
  const auto rep = embedding_report(YoungFunction::delta(2), 1);
  EXPECT_EQ(rep.verdict, Coincidence::non_coincident);
  EXPECT_EQ(rep.numeric_verdict, Coincidence::coincident);
  EXPECT_FALSE(rep.classifier_agrees);
  EXPECT_FALSE(rep.diagnostics.empty());
  EXPECT_FALSE(rep.k0.has_value());
}

TEST(Report, InfiniteMassHasNoOverride) {
  const auto rep = embedding_report(YoungFunction::power(2), inf);
  EXPECT_FALSE(rep.analytic.has_value());
  EXPECT_EQ(rep.t0, 0);
  EXPECT_EQ(rep.verdict, Coincidence::non_coincident);
}
