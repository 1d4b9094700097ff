#ifndef NOMA_MEC_CAMPAIGN_HPP
#define NOMA_MEC_CAMPAIGN_HPP

// Randomized cross-check of the closed-form solvers against the brute-force
// oracle, plus the energy-ordering and KKT properties they must satisfy.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "noma_mec/closed_form.hpp"
#include "noma_mec/format.hpp"
#include "noma_mec/model.hpp"
#include "noma_mec/oracle.hpp"
#include "noma_mec/splitmix64.hpp"

namespace noma_mec {

/// Largest KKT residual component accepted for a closed-form optimum.
inline constexpr double kKktTolerance = 1e-8;
/// Slack allowed on energy-ordering comparisons, relative to the smaller side.
inline constexpr double kOrderingTolerance = 1e-9;

/// Draw order: p_m, g_m, g_n, N, d_m, d_n.
///   p_m log-uniform [0.05, 20]; g_m, g_n log-uniform [0.1, 10];
///   N, d_m uniform [1, 100]; d_n uniform on (d_m, 4 d_m].
inline Scenario draw_scenario(SplitMix64& rng) {
  const double p_m = rng.log_uniform(0.05, 20.0);
  const double g_m = rng.log_uniform(0.1, 10.0);
  const double g_n = rng.log_uniform(0.1, 10.0);
  const double n = rng.uniform(1.0, 100.0);
  const double d_m = rng.uniform(1.0, 100.0);
  const double d_n = d_m + 3.0 * d_m * (1.0 - rng.uniform());
  return Scenario(ChannelGains(g_m, g_n), TaskProfile(n, d_m, d_n), p_m);
}

/// lhs >= rhs up to kOrderingTolerance.
inline bool ordered_at_least(double lhs, double rhs) noexcept {
  return lhs >= rhs - kOrderingTolerance * std::abs(rhs);
}

/// Energy-ordering checks at t_n = d_n - d_m for one scenario.
struct OrderingTally {
  std::size_t checks = 0;
  std::size_t violations = 0;

  void expect_at_least(double lhs, double rhs) {
    ++checks;
    if (!ordered_at_least(lhs, rhs)) {
      ++violations;
    }
  }
};

/// Compares candidates only where both are feasible and the pairwise result
/// is known to hold: capped >= equal power, pure NOMA >= equal power, and
/// OMA >= capped while p_m g_m <= theta2. Also checks that the hybrid choice
/// never costs more than either branch and the equal-power dominance band guarantee.
inline void check_orderings(const Scenario& s, OrderingTally& tally) {
  const auto th = feasibility_thresholds(s);
  const auto c = candidate_solutions(s, s.tail());
  const double e_oma = c.oma.energy_or_inf();
  if (c.hybrid_constrained && c.hybrid_equal_power) {
    tally.expect_at_least(c.hybrid_constrained.energy_joules(), c.hybrid_equal_power.energy_joules());
  }
  if (c.pure_noma && c.hybrid_equal_power) {
    tally.expect_at_least(c.pure_noma.energy_joules(), c.hybrid_equal_power.energy_joules());
  }
  if (c.hybrid_constrained && at_most(s.um_snr(), th.theta2) && std::isfinite(e_oma)) {
    tally.expect_at_least(e_oma, c.hybrid_constrained.energy_joules());
  }

  const auto existing = solve_existing(s);
  const auto lemma1 = solve_lemma1(s);
  const auto hybrid = solve_hybrid_sic(s);
  tally.expect_at_least(existing.energy_joules(), hybrid.energy_joules());
  if (lemma1) {
    tally.expect_at_least(lemma1.energy_joules(), hybrid.energy_joules());
  }
  if (lemma2_band(s).contains(s.p_m())) {
    tally.expect_at_least(existing.energy_joules(), lemma1.energy_joules());
  }
}

struct CampaignReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double tol = 0.0;

  std::size_t qos_compared = 0;       // trials checked on the QoS-based problem
  std::size_t um_first_compared = 0;  // trials where U_m-first was feasible
  std::size_t skipped_nonfinite = 0;  // closed-form energy overflowed

  double max_rel_gap = 0.0;
  std::size_t worst_trial = 0;
  double max_kkt_residual = 0.0;

  std::size_t ordering_checks = 0;
  std::size_t ordering_violations = 0;
  std::size_t argmin_violations = 0;
  std::size_t kkt_violations = 0;

  std::size_t violations() const noexcept {
    return ordering_violations + argmin_violations + kkt_violations;
  }
  bool passed() const noexcept { return max_rel_gap <= tol && violations() == 0; }
};

namespace detail {

inline void compare_with_oracle(Problem problem, const Scenario& s, const SolverOutcome& closed,
                                const OracleConfig& cfg, std::size_t trial,
                                CampaignReport& report) {
  const double e_closed = closed.energy_joules();
  if (!std::isfinite(e_closed)) {
    ++report.skipped_nonfinite;
    return;
  }
  const auto oracle = oracle_solve(problem, s, cfg);
  const double gap = std::abs(oracle.best_energy - e_closed) / e_closed;
  if (!(gap <= report.max_rel_gap)) {
    report.max_rel_gap = gap;
    report.worst_trial = trial;
  }
  if (std::abs(oracle.tn_at_optimum - s.tail()) > oracle.tn_grid_step * (1.0 + 1e-9)) {
    ++report.argmin_violations;
  }

  const double kkt = kkt_residuals(closed.allocation(), s).max_component();
  report.max_kkt_residual = std::max(report.max_kkt_residual, kkt);
  if (!(kkt <= kKktTolerance)) {
    ++report.kkt_violations;
  }
}

}  // namespace detail

/// Runs `trials` seeded scenarios. Each trial uses its own SplitMix64 stream
/// split from the master seed.
inline CampaignReport verify_campaign(std::size_t trials, std::uint64_t seed, double tol,
                                      const OracleConfig& cfg = {}) {
  if (trials < 1) {
    throw std::invalid_argument("verify_campaign needs at least one trial");
  }
  CampaignReport report;
  report.seed = seed;
  report.trials = trials;
  report.tol = tol;

  SplitMix64 master(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    SplitMix64 rng = master.split();
    const Scenario s = draw_scenario(rng);

    ++report.qos_compared;
    detail::compare_with_oracle(Problem::QosSic, s, solve_existing(s), cfg, trial, report);

    if (const auto lemma1 = solve_lemma1(s)) {
      ++report.um_first_compared;
      detail::compare_with_oracle(Problem::UmFirstSic, s, lemma1, cfg, trial, report);
    }

    OrderingTally tally;
    check_orderings(s, tally);
    report.ordering_checks += tally.checks;
    report.ordering_violations += tally.violations;
  }
  return report;
}

inline std::string render(const CampaignReport& r) {
  std::ostringstream out;
  out << "# closed-form vs oracle verification\n"
      << "seed=" << r.seed << " trials=" << r.trials << " tol=" << format_decimal(r.tol) << '\n'
      << "qos_compared=" << r.qos_compared << " um_first_compared=" << r.um_first_compared
      << " skipped_nonfinite=" << r.skipped_nonfinite << '\n'
      << "max_rel_gap=" << format_decimal(r.max_rel_gap) << " worst_trial=" << r.worst_trial
      << '\n'
      << "max_kkt_residual=" << format_decimal(r.max_kkt_residual)
      << " kkt_violations=" << r.kkt_violations << '\n'
      << "argmin_tn_violations=" << r.argmin_violations << '\n'
      << "ordering_checks=" << r.ordering_checks
      << " ordering_violations=" << r.ordering_violations << '\n'
      << "result=" << (r.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace noma_mec

#endif  // NOMA_MEC_CAMPAIGN_HPP
