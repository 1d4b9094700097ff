#ifndef NOMA_MEC_CLOSED_FORM_HPP
#define NOMA_MEC_CLOSED_FORM_HPP

// Closed-form power allocations for U_n and the adaptive choice between the
// two SIC decoding orders.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noma_mec/model.hpp"

namespace noma_mec {

/// Relative energy difference below which two branches count as tied.
inline constexpr double kTieTolerance = 1e-9;

/// OMA at a given tail length: U_n stays silent in U_m's slot and sends all N
/// nats in t_n seconds.
inline SolverOutcome oma_allocation(const Scenario& s, double t_n) {
  if (!(t_n > 0.0)) {
    return SolverOutcome::infeasible(InfeasibleReason::EmptySecondPhase);
  }
  PowerAllocation a;
  a.p_n1 = 0.0;
  a.p_n2 = std::expm1(s.n_nats() / t_n) / s.g_n();
  a.t_n = t_n;
  a.order = DecodingOrder::UnFirst;
  a.kind = StrategyKind::Oma;
  return SolverOutcome::feasible(a, s);
}

inline SolverOutcome solve_oma(const Scenario& s) { return oma_allocation(s, s.tail()); }

/// Water-filling under QoS-based SIC with t_n = d_n - d_m, without the OMA
/// fallback. Infeasible when p_m * g_m exceeds theta4, where the water level
/// would drop below U_m's interference floor.
inline SolverOutcome solve_existing_strict(const Scenario& s) {
  const double snr_m = s.um_snr();
  const double theta4 = std::expm1(s.n_nats() / s.tail());
  if (!at_most(snr_m, theta4)) {
    return SolverOutcome::infeasible(InfeasibleReason::UmPowerTooHighForExisting);
  }
  const double t_n = s.tail();
  const double log_floor = std::log1p(snr_m);
  // Both phases sit at the common level (1 + snr_m) * e^{exponent} / g_n.
  const double exponent = (s.n_nats() - t_n * log_floor) / (s.d_m() + t_n);
  PowerAllocation a;
  a.p_n1 = std::max(0.0, (1.0 + snr_m) * std::expm1(exponent) / s.g_n());
  a.p_n2 = std::expm1(log_floor + exponent) / s.g_n();
  a.t_n = t_n;
  a.order = DecodingOrder::UnFirst;
  a.kind = StrategyKind::ExistingQosSic;
  return SolverOutcome::feasible(a, s);
}

/// QoS-based SIC solution; falls back to OMA above theta4.
inline SolverOutcome solve_existing(const Scenario& s) {
  auto outcome = solve_existing_strict(s);
  if (outcome) {
    return outcome;
  }
  return solve_oma(s);
}

/// U_m decoded first, first-phase power pinned at U_m's interference cap, the
/// rest of the task sent in t_n seconds.
inline SolverOutcome hybrid_constrained_allocation(const Scenario& s, double t_n) {
  if (!(t_n > 0.0)) {
    return SolverOutcome::infeasible(InfeasibleReason::EmptySecondPhase);
  }
  const double theta1 = std::expm1(s.n_nats() / s.d_m());
  if (!at_least(s.um_snr(), theta1)) {
    return SolverOutcome::infeasible(InfeasibleReason::UmPowerTooLow);
  }
  // ratio = 1 + p_n1 g_n at the cap; d_m ln(ratio) nats go out in phase one.
  const double ratio = std::max(1.0, s.um_snr() / theta1);
  const double phase_one_nats = s.d_m() * std::log(ratio);
  const double remaining = s.n_nats() - phase_one_nats;
  if (remaining < -kFeasibilityTolerance * s.n_nats()) {
    return SolverOutcome::infeasible(InfeasibleReason::UmPowerTooHighForConstrained);
  }
  PowerAllocation a;
  a.p_n1 = (ratio - 1.0) / s.g_n();
  a.p_n2 = std::max(0.0, std::expm1(remaining / t_n) / s.g_n());
  a.t_n = t_n;
  a.order = DecodingOrder::UmFirst;
  a.kind = StrategyKind::HybridConstrained;
  return SolverOutcome::feasible(a, s);
}

/// U_m decoded first, same power in both phases.
inline SolverOutcome hybrid_equal_power_allocation(const Scenario& s, double t_n) {
  if (!(t_n > 0.0)) {
    return SolverOutcome::infeasible(InfeasibleReason::EmptySecondPhase);
  }
  if (!at_least(s.um_snr(), equal_power_threshold(s, t_n))) {
    return SolverOutcome::infeasible(InfeasibleReason::UmPowerTooLow);
  }
  PowerAllocation a;
  a.p_n1 = std::expm1(s.n_nats() / (s.d_m() + t_n)) / s.g_n();
  a.p_n2 = a.p_n1;
  a.t_n = t_n;
  a.order = DecodingOrder::UmFirst;
  a.kind = StrategyKind::HybridEqualPower;
  return SolverOutcome::feasible(a, s);
}

/// U_m decoded first, whole task inside U_m's slot. t_n is carried along but
/// unused since p_n2 = 0.
inline SolverOutcome pure_noma_allocation(const Scenario& s, double t_n) {
  const double theta1 = std::expm1(s.n_nats() / s.d_m());
  const double theta3 = std::exp(s.n_nats() / s.d_m()) * theta1;
  if (!at_least(s.um_snr(), theta3)) {
    return SolverOutcome::infeasible(InfeasibleReason::UmPowerTooLow);
  }
  PowerAllocation a;
  a.p_n1 = theta1 / s.g_n();
  a.p_n2 = 0.0;
  a.t_n = t_n;
  a.order = DecodingOrder::UmFirst;
  a.kind = StrategyKind::PureNoma;
  return SolverOutcome::feasible(a, s);
}

/// Optimum when U_m is decoded first, with t_n = d_n - d_m. Requires
/// p_m * g_m > theta1; the capped solution applies up to theta2 (inclusive),
/// equal power above it.
inline SolverOutcome solve_lemma1(const Scenario& s) {
  const auto th = feasibility_thresholds(s);
  const double snr_m = s.um_snr();
  if (at_most(snr_m, th.theta1)) {
    return SolverOutcome::infeasible(InfeasibleReason::UmPowerTooLow);
  }
  if (at_most(snr_m, th.theta2)) {
    return hybrid_constrained_allocation(s, s.tail());
  }
  return hybrid_equal_power_allocation(s, s.tail());
}

/// All four KKT candidates at a caller-chosen tail length.
struct CandidateSet {
  SolverOutcome oma;
  SolverOutcome hybrid_constrained;
  SolverOutcome hybrid_equal_power;
  SolverOutcome pure_noma;
};

inline CandidateSet candidate_solutions(const Scenario& s, double t_n) {
  if (!(t_n >= 0.0 && t_n <= s.tail())) {
    throw std::out_of_range("t_n must lie in [0, d_n - d_m]");
  }
  return CandidateSet{
      oma_allocation(s, t_n),
      hybrid_constrained_allocation(s, t_n),
      hybrid_equal_power_allocation(s, t_n),
      pure_noma_allocation(s, t_n),
  };
}

/// Picks the cheaper of the QoS-based and U_m-first solutions. Ties within
/// kTieTolerance go to QoS-based SIC.
inline SolverOutcome solve_hybrid_sic(const Scenario& s) {
  auto existing = solve_existing(s);
  auto lemma1 = solve_lemma1(s);
  if (!lemma1) {
    return existing;
  }
  const double e_existing = existing.energy_joules();
  const double e_lemma1 = lemma1.energy_joules();
  if (std::abs(e_lemma1 - e_existing) <= kTieTolerance * std::max(e_existing, e_lemma1)) {
    return existing;
  }
  return e_lemma1 < e_existing ? lemma1 : existing;
}

/// Range of p_m over which equal power with U_m decoded first is guaranteed
/// to beat QoS-based SIC.
struct Lemma2Band {
  bool applicable = false;
  double lower = 0.0;  // W
  double upper = 0.0;  // W

  bool contains(double p_m) const noexcept {
    return applicable && at_least(p_m, lower) && at_most(p_m, upper);
  }
};

inline Lemma2Band lemma2_band(const Scenario& s) {
  const auto th = feasibility_thresholds(s);
  return Lemma2Band{th.theta2 <= th.theta4, th.theta2 / s.g_m(), th.theta4 / s.g_m()};
}

struct StrategyRegion {
  StrategyKind kind;
  DecodingOrder order;

  friend bool operator==(const StrategyRegion&, const StrategyRegion&) = default;
};

/// The (kind, order) that solve_hybrid_sic picks. Threshold tests settle the
/// cases where only one order is feasible; otherwise both branches are solved.
inline StrategyRegion strategy_region(const Scenario& s) {
  const auto th = feasibility_thresholds(s);
  const double snr_m = s.um_snr();
  if (at_most(snr_m, th.theta1)) {
    if (at_most(snr_m, th.theta4)) {
      return {StrategyKind::ExistingQosSic, DecodingOrder::UnFirst};
    }
    return {StrategyKind::Oma, DecodingOrder::UnFirst};
  }
  const auto chosen = solve_hybrid_sic(s);
  return {chosen.allocation().kind, chosen.allocation().order};
}

}  // namespace noma_mec

#endif  // NOMA_MEC_CLOSED_FORM_HPP
