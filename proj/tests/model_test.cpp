#include "noma_mec/model.hpp"

#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"
#include "noma_mec/splitmix64.hpp"
#include "reference_values.hpp"

namespace noma_mec {
namespace {

using reference::RelNear;

Scenario MakeScenario(double p_m, double d_n = 80.0, double n = 20.0, double d_m = 40.0,
                      double g_m = 1.0, double g_n = 1.0) {
  return Scenario(ChannelGains(g_m, g_n), TaskProfile(n, d_m, d_n), p_m);
}

Scenario RandomScenario(SplitMix64& rng) {
  const double d_m = rng.uniform(1.0, 100.0);
  return Scenario(ChannelGains(rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0)),
                  TaskProfile(rng.uniform(1.0, 100.0), d_m, d_m * rng.uniform(1.01, 4.0)),
                  rng.log_uniform(0.05, 20.0));
}

TEST(ModelTypes, RejectsInvalidGains) {
  EXPECT_THROW(ChannelGains(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(ChannelGains(1.0, -1.0), std::invalid_argument);
  EXPECT_THROW(ChannelGains(INFINITY, 1.0), std::invalid_argument);
  EXPECT_THROW(ChannelGains(1.0, NAN), std::invalid_argument);
  EXPECT_NO_THROW(ChannelGains(1e-9, 1e9));
}

TEST(ModelTypes, RejectsInvalidTask) {
  EXPECT_THROW(TaskProfile(0.0, 40.0, 80.0), std::invalid_argument);
  EXPECT_THROW(TaskProfile(20.0, 0.0, 80.0), std::invalid_argument);
  EXPECT_THROW(TaskProfile(20.0, 40.0, 40.0), std::invalid_argument);  // d_m == d_n
  EXPECT_THROW(TaskProfile(20.0, 40.0, 30.0), std::invalid_argument);
  EXPECT_THROW(TaskProfile(20.0, 40.0, INFINITY), std::invalid_argument);
  EXPECT_DOUBLE_EQ(TaskProfile(20.0, 40.0, 60.0).tail(), 20.0);
}

TEST(ModelTypes, RejectsNegativeUmPower) {
  EXPECT_THROW(MakeScenario(-0.1), std::invalid_argument);
  EXPECT_THROW(MakeScenario(NAN), std::invalid_argument);
  EXPECT_NO_THROW(MakeScenario(0.0));
}

TEST(ModelTypes, EnumNames) {
  EXPECT_EQ(to_string(DecodingOrder::UnFirst), "UnFirst");
  EXPECT_EQ(to_string(DecodingOrder::UmFirst), "UmFirst");
  EXPECT_EQ(to_string(StrategyKind::HybridEqualPower), "HybridEqualPower");
  EXPECT_EQ(to_string(StrategyKind::ExistingQosSic), "ExistingQosSic");
}

TEST(RateFirstPhase, ZeroPowerGivesZeroRate) {
  const auto s = MakeScenario(1.0);
  EXPECT_EQ(rate_first_phase(0.0, DecodingOrder::UnFirst, s), 0.0);
  EXPECT_EQ(rate_first_phase(0.0, DecodingOrder::UmFirst, s), 0.0);
}

TEST(RateFirstPhase, UnitValues) {
  const auto s = MakeScenario(1.0);
  EXPECT_TRUE(RelNear(rate_first_phase(1.0, DecodingOrder::UnFirst, s), reference::kLn1p5, 1e-15));
  EXPECT_TRUE(RelNear(rate_first_phase(1.0, DecodingOrder::UmFirst, s), reference::kLn2, 1e-15));
}

TEST(UmRate, Examples) {
  EXPECT_TRUE(RelNear(um_rate_under_interference(1.0, MakeScenario(1.0)), reference::kLn1p5, 1e-15));
  EXPECT_TRUE(RelNear(um_rate_under_interference(0.0, MakeScenario(2.5, 80, 20, 40, 3.0)),
                      std::log(1.0 + 7.5), 1e-15));
  EXPECT_EQ(um_rate_under_interference(3.0, MakeScenario(0.0)), 0.0);
}

TEST(OffloadedNats, ZeroAllocationDeliversNothing) {
  EXPECT_EQ(offloaded_nats(PowerAllocation{}, MakeScenario(1.0)), 0.0);
}

TEST(OffloadedNats, OmaConstructionDeliversTask) {
  const auto s = MakeScenario(1.0, 80.0, 20.0, 40.0, 1.0, 2.0);
  PowerAllocation a;
  a.t_n = s.tail();
  a.p_n2 = std::expm1(s.n_nats() / a.t_n) / s.g_n();
  EXPECT_TRUE(RelNear(offloaded_nats(a, s), 20.0, 1e-14));
}

TEST(Energy, Examples) {
  const auto s = MakeScenario(1.0);
  EXPECT_EQ(energy(PowerAllocation{}, s), 0.0);

  PowerAllocation oma;
  oma.t_n = 40.0;
  oma.p_n2 = reference::kOmaPowerDn80;
  EXPECT_TRUE(RelNear(energy(oma, s), reference::kOmaEnergyDn80, 1e-15));

  PowerAllocation equal;
  equal.t_n = 40.0;
  equal.p_n1 = equal.p_n2 = reference::kEqualPowerDn80;
  EXPECT_TRUE(RelNear(energy(equal, s), reference::kEqualPowerEnergyDn80, 1e-15));
}

TEST(Thresholds, Dn80) {
  const auto th = feasibility_thresholds(MakeScenario(1.0, 80.0));
  EXPECT_TRUE(RelNear(th.theta1, reference::kTheta1, 1e-15));
  EXPECT_TRUE(RelNear(th.theta2, reference::kTheta2Dn80, 1e-15));
  EXPECT_TRUE(RelNear(th.theta3, reference::kTheta3, 1e-15));
  EXPECT_TRUE(RelNear(th.theta4, reference::kTheta4Dn80, 1e-15));
  EXPECT_TRUE(RelNear(th.theta5, th.theta2, 1e-15));
}

TEST(Thresholds, Dn60) {
  const auto th = feasibility_thresholds(MakeScenario(1.0, 60.0));
  EXPECT_TRUE(RelNear(th.theta2, reference::kTheta2Dn60, 1e-15));
  EXPECT_TRUE(RelNear(th.theta4, reference::kTheta4Dn60, 1e-15));
}

TEST(Thresholds, SymmetricPhasesMakeTheta1EqualTheta4) {
  for (double n : {0.5, 7.0, 33.0}) {
    const auto th = feasibility_thresholds(MakeScenario(1.0, 50.0, n, 25.0));
    EXPECT_TRUE(RelNear(th.theta1, th.theta4, 1e-15)) << "N=" << n;
  }
}

TEST(Thresholds, InterferenceCapMatchesRateConstraint) {
  const auto s = MakeScenario(0.66);
  const double cap = interference_cap(s);
  EXPECT_TRUE(RelNear(cap, reference::kCapPm066, 1e-12));
  EXPECT_TRUE(RelNear(s.d_m() * um_rate_under_interference(cap / s.g_n(), s), s.n_nats(), 1e-12));
}

TEST(SolverOutcome, EnergyMatchesAllocation) {
  const auto s = MakeScenario(1.0);
  PowerAllocation a;
  a.p_n1 = 0.3;
  a.p_n2 = 0.7;
  a.t_n = 12.0;
  const auto out = SolverOutcome::feasible(a, s);
  ASSERT_TRUE(out.is_feasible());
  EXPECT_TRUE(RelNear(out.energy_joules(), energy(a, s), 1e-12));

  const auto bad = SolverOutcome::infeasible(InfeasibleReason::UmPowerTooLow);
  EXPECT_FALSE(bad);
  EXPECT_EQ(bad.reason(), InfeasibleReason::UmPowerTooLow);
  EXPECT_TRUE(std::isinf(bad.energy_or_inf()));
}

// Property checks over random scenarios.

TEST(ModelProperties, UmFirstRateDominates) {
  SplitMix64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto s = RandomScenario(rng);
    const double p = rng.log_uniform(1e-6, 1e3);
    const double un = rate_first_phase(p, DecodingOrder::UnFirst, s);
    const double um = rate_first_phase(p, DecodingOrder::UmFirst, s);
    ASSERT_GT(um, un);  // p_m g_m > 0 always here
  }
  const auto silent = MakeScenario(0.0);
  EXPECT_EQ(rate_first_phase(0.4, DecodingOrder::UnFirst, silent),
            rate_first_phase(0.4, DecodingOrder::UmFirst, silent));
}

TEST(ModelProperties, EnergyIsHomogeneousInPower) {
  SplitMix64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const auto s = RandomScenario(rng);
    PowerAllocation a;
    a.p_n1 = rng.uniform(0.0, 5.0);
    a.p_n2 = rng.uniform(0.0, 5.0);
    a.t_n = rng.uniform(0.0, s.tail());
    const double c = rng.uniform(0.0, 10.0);
    PowerAllocation scaled = a;
    scaled.p_n1 *= c;
    scaled.p_n2 *= c;
    ASSERT_NEAR(energy(scaled, s), c * energy(a, s), 1e-12 * (1.0 + c * energy(a, s)));
  }
}

TEST(ModelProperties, OffloadedNatsStrictlyIncreasing) {
  SplitMix64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const auto s = RandomScenario(rng);
    PowerAllocation a;
    a.order = rng.uniform() < 0.5 ? DecodingOrder::UnFirst : DecodingOrder::UmFirst;
    a.p_n1 = rng.uniform(0.0, 2.0);
    a.p_n2 = rng.uniform(0.0, 2.0);
    a.t_n = rng.uniform(0.1, 1.0) * s.tail();
    const double base = offloaded_nats(a, s);
    PowerAllocation more1 = a;
    more1.p_n1 += 0.01;
    PowerAllocation more2 = a;
    more2.p_n2 += 0.01;
    ASSERT_GT(offloaded_nats(more1, s), base);
    ASSERT_GT(offloaded_nats(more2, s), base);
  }
}

TEST(ModelProperties, ThresholdsStrictlyOrdered) {
  SplitMix64 rng(14);
  for (int i = 0; i < 2000; ++i) {
    const auto th = feasibility_thresholds(RandomScenario(rng));
    ASSERT_LT(th.theta1, th.theta2);
    ASSERT_LT(th.theta2, th.theta3);
  }
}

}  // namespace
}  // namespace noma_mec
