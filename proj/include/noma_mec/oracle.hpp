#ifndef NOMA_MEC_ORACLE_HPP
#define NOMA_MEC_ORACLE_HPP

// Brute-force reference solver and KKT checks for the closed-form schedules.
//
// Nothing here calls into closed_form.hpp: the oracle only evaluates the rate
// and energy expressions of the model, so agreement between the two is an
// independent confirmation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "noma_mec/golden_section.hpp"
#include "noma_mec/model.hpp"

namespace noma_mec {

/// Which optimization problem the oracle solves.
enum class Problem {
  QosSic,     // U_n decoded first (fixed QoS-based order)
  UmFirstSic  // U_m decoded first, with U_m's rate constraint
};

struct OracleConfig {
  std::size_t p1_grid_points = 2001;
  std::size_t tn_grid_points = 201;
  std::size_t refine_iters = 80;
  double rel_tol = 1e-6;

  void validate() const {
    if (p1_grid_points < 3 || tn_grid_points < 3) {
      throw std::invalid_argument("oracle grids need at least 3 points");
    }
    if (refine_iters < 1) {
      throw std::invalid_argument("oracle needs at least one refinement iteration");
    }
    if (!(rel_tol > 0.0)) {
      throw std::invalid_argument("oracle rel_tol must be positive");
    }
  }
};

struct OracleResult {
  PowerAllocation best_allocation;
  double best_energy = 0.0;
  double tn_at_optimum = 0.0;
  double tn_grid_step = 0.0;
  /// Largest energy change between the optimum and its grid neighbours in the
  /// winning t_n slice.
  double resolution_bound = 0.0;
  /// Minimum energy per t_n slice, in increasing t_n order.
  std::vector<std::pair<double, double>> energy_curve;
};

/// Thrown when the requested problem has an empty feasible set.
class InfeasibleProblem : public std::domain_error {
 public:
  explicit InfeasibleProblem(InfeasibleReason reason)
      : std::domain_error(std::string("problem infeasible: ") + std::string(to_string(reason))),
        reason_(reason) {}

  InfeasibleReason reason() const noexcept { return reason_; }

 private:
  InfeasibleReason reason_;
};

namespace detail {

// With the nats constraint tight, p_n2 is determined by (t_n, p_n1), so each
// t_n slice is a 1D search. The slice is parametrized by the nats delivered
// in phase one, q, which maps monotonically onto p_n1 in [0, p1_max] and keeps
// the grid well conditioned when p1_max is astronomically large.
class TailSlice {
 public:
  TailSlice(Problem problem, const Scenario& s, double t_n)
      : problem_(problem), s_(s), t_n_(t_n) {
    order_ = problem == Problem::QosSic ? DecodingOrder::UnFirst : DecodingOrder::UmFirst;
    q_max_ = s.n_nats();
    if (problem == Problem::UmFirstSic) {
      p1_cap_ = interference_cap(s) / s.g_n();
      q_max_ = std::min(q_max_, s.d_m() * rate_first_phase(p1_cap_, order_, s));
    }
  }

  double q_max() const noexcept { return q_max_; }
  double t_n() const noexcept { return t_n_; }

  PowerAllocation allocation_at(double q) const {
    PowerAllocation a;
    a.order = order_;
    a.t_n = t_n_;
    const double level = std::expm1(q / s_.d_m());
    a.p_n1 = order_ == DecodingOrder::UnFirst ? (1.0 + s_.um_snr()) * level / s_.g_n()
                                              : level / s_.g_n();
    if (problem_ == Problem::UmFirstSic) {
      a.p_n1 = std::min(a.p_n1, p1_cap_);
    }
    const double delivered = s_.d_m() * rate_first_phase(a.p_n1, order_, s_);
    a.p_n2 = std::max(0.0, std::expm1((s_.n_nats() - delivered) / t_n_) / s_.g_n());
    a.kind = classify(q);
    return a;
  }

  double energy_at(double q) const { return energy(allocation_at(q), s_); }

 private:
  StrategyKind classify(double q) const noexcept {
    constexpr double kEdge = 1e-9;
    if (q <= kEdge * q_max_) {
      return StrategyKind::Oma;
    }
    if (q >= (1.0 - kEdge) * s_.n_nats()) {
      return StrategyKind::PureNoma;
    }
    if (problem_ == Problem::QosSic) {
      return StrategyKind::ExistingQosSic;
    }
    if (q >= (1.0 - kEdge) * q_max_) {
      return StrategyKind::HybridConstrained;
    }
    return StrategyKind::HybridEqualPower;
  }

  Problem problem_;
  Scenario s_;
  double t_n_;
  DecodingOrder order_ = DecodingOrder::UnFirst;
  double p1_cap_ = HUGE_VAL;
  double q_max_ = 0.0;
};

struct SliceMinimum {
  double q = 0.0;
  double energy = HUGE_VAL;
  double neighbour_gap = 0.0;
};

inline SliceMinimum minimize_slice(const TailSlice& slice, const OracleConfig& cfg) {
  const std::size_t n = cfg.p1_grid_points;
  const double q_max = slice.q_max();
  const auto q_at = [&](std::size_t i) {
    return i + 1 == n ? q_max : q_max * static_cast<double>(i) / static_cast<double>(n - 1);
  };

  std::vector<double> values(n);
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = slice.energy_at(q_at(i));
    if (values[i] < values[best]) {
      best = i;
    }
  }

  SliceMinimum result{q_at(best), values[best], 0.0};
  if (best > 0) {
    result.neighbour_gap = std::max(result.neighbour_gap, std::abs(values[best - 1] - values[best]));
  }
  if (best + 1 < n) {
    result.neighbour_gap = std::max(result.neighbour_gap, std::abs(values[best + 1] - values[best]));
  }
  if (!std::isfinite(result.energy)) {
    return result;
  }

  // The slice energy is convex in q, so the minimum lies between the grid
  // neighbours of the best sample.
  const double lo = q_at(best == 0 ? 0 : best - 1);
  const double hi = q_at(std::min(best + 1, n - 1));
  if (hi > lo) {
    const auto refined = golden_section_minimize(
        [&](double q) { return slice.energy_at(q); }, lo, hi, cfg.refine_iters);
    if (refined.value < result.energy) {
      result.q = refined.x;
      result.energy = refined.value;
    }
  }
  return result;
}

}  // namespace detail

/// Minimizes U_n's energy by grid search over t_n in (0, d_n - d_m] and, per
/// t_n, a grid plus golden-section search over the first-phase power.
inline OracleResult oracle_solve(Problem problem, const Scenario& s, const OracleConfig& cfg = {}) {
  cfg.validate();
  if (problem == Problem::UmFirstSic && !(interference_cap(s) > 0.0)) {
    throw InfeasibleProblem(InfeasibleReason::UmPowerTooLow);
  }

  const std::size_t slices = cfg.tn_grid_points;
  const double step = s.tail() / static_cast<double>(slices);

  OracleResult result;
  result.tn_grid_step = step;
  result.best_energy = HUGE_VAL;
  result.energy_curve.reserve(slices);
  bool found = false;
  for (std::size_t k = 1; k <= slices; ++k) {
    const double t_n = k == slices ? s.tail() : step * static_cast<double>(k);
    const detail::TailSlice slice(problem, s, t_n);
    const auto m = detail::minimize_slice(slice, cfg);
    result.energy_curve.emplace_back(t_n, m.energy);
    // `<=` so that exact ties resolve toward the longer tail.
    if (!found || m.energy <= result.best_energy) {
      found = true;
      result.best_energy = m.energy;
      result.best_allocation = slice.allocation_at(m.q);
      result.tn_at_optimum = t_n;
      result.resolution_bound = m.neighbour_gap;
    }
  }
  result.best_energy = energy(result.best_allocation, s);
  return result;
}

/// KKT diagnostics for an allocation. All entries are scale-free: each
/// stationarity row is divided by its objective coefficient, each multiplier
/// by its natural scale and each slack by its constraint's magnitude.
struct KktResidual {
  double stationarity_1 = 0.0;
  double stationarity_2 = 0.0;
  /// Complementary slackness products, in the order (lambda3, lambda4,
  /// lambda1, lambda2).
  std::array<double, 4> comp_slack{};
  /// Normalized multipliers lambda1..lambda4.
  std::array<double, 4> multipliers{};
  double dual_feas_violation = 0.0;
  double primal_violation = 0.0;

  double max_component() const noexcept {
    double m = std::max({stationarity_1, stationarity_2, dual_feas_violation, primal_violation});
    for (double c : comp_slack) {
      m = std::max(m, c);
    }
    return m;
  }
};

/// Recovers the Lagrange multipliers implied by the allocation's active set
/// (taken from a.kind) and reports how far the KKT system is from holding.
///
/// Multipliers: lambda1, lambda2 for p_n1 >= 0, p_n2 >= 0; lambda3 for the
/// nats constraint; lambda4 for U_m's interference cap (U_m-first only).
/// UnFirst allocations are checked against the QoS-based problem, which has
/// no cap and sees U_m as interference in phase one.
inline KktResidual kkt_residuals(const PowerAllocation& a, const Scenario& s) {
  if (!(a.t_n > 0.0)) {
    throw std::invalid_argument("kkt_residuals requires t_n > 0");
  }
  const double g = s.g_n();
  const double d_m = s.d_m();
  const double t_n = a.t_n;
  const bool um_first = a.order == DecodingOrder::UmFirst;
  // Phase-one SINR denominator times g: d/dp1 of ln(1 + p1 g / floor) is g / (floor + p1 g).
  const double floor = um_first ? 1.0 : 1.0 + s.um_snr();
  const double level_1 = floor + a.p_n1 * g;
  const double level_2 = 1.0 + a.p_n2 * g;

  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double lambda4 = 0.0;

  // Row 1: d_m - lambda3 d_m g / level_1 + lambda4 g - lambda1 = 0
  // Row 2: t_n - lambda3 t_n g / level_2 - lambda2 = 0
  switch (a.kind) {
    case StrategyKind::PureNoma:
      lambda3 = level_1 / g;
      lambda2 = t_n - lambda3 * t_n * g / level_2;
      break;
    case StrategyKind::Oma:
      lambda3 = level_2 / g;
      lambda1 = d_m - lambda3 * d_m * g / level_1;
      break;
    case StrategyKind::HybridConstrained:
      lambda3 = level_2 / g;
      if (um_first) {
        lambda4 = (lambda3 * d_m * g / level_1 - d_m) / g;
      }
      break;
    case StrategyKind::HybridEqualPower:
    case StrategyKind::ExistingQosSic:
      lambda3 = level_2 / g;
      break;
  }

  KktResidual r;
  r.stationarity_1 =
      std::abs(d_m - lambda3 * d_m * g / level_1 + lambda4 * g - lambda1) / d_m;
  r.stationarity_2 = std::abs(t_n - lambda3 * t_n * g / level_2 - lambda2) / t_n;

  const double n = s.n_nats();
  const double nats_slack = std::abs(n - offloaded_nats(a, s)) / n;
  const double cap = interference_cap(s);
  const double cap_slack = um_first ? std::abs(a.p_n1 * g - cap) / (1.0 + std::abs(cap)) : 0.0;

  const double l1 = lambda1 / d_m;
  const double l2 = lambda2 / t_n;
  const double l3 = lambda3 * g / std::max(level_1, level_2);
  // lambda4 g balances the interference term of row 1, so scale by that term.
  const double l4 = lambda4 * g / std::max(d_m, lambda3 * d_m * g / level_1);
  r.multipliers = {l1, l2, l3, l4};
  r.comp_slack = {
      std::abs(l3) * nats_slack,
      std::abs(l4) * cap_slack,
      std::abs(l1) * a.p_n1 * g / (1.0 + a.p_n1 * g),
      std::abs(l2) * a.p_n2 * g / (1.0 + a.p_n2 * g),
  };
  r.dual_feas_violation = std::max(0.0, -std::min({l1, l2, l3, l4}));

  double primal = std::max(0.0, (n - offloaded_nats(a, s)) / n);
  if (um_first) {
    primal = std::max(primal, (a.p_n1 * g - cap) / (1.0 + std::abs(cap)));
  }
  primal = std::max({primal, -a.p_n1 * g, -a.p_n2 * g});
  primal = std::max(primal, (a.t_n - s.tail()) / s.tail());
  r.primal_violation = std::max(0.0, primal);
  return r;
}

/// True when f is non-increasing over `samples` evenly spaced points of
/// [x_lo, x_hi], up to a relative slack of 1e-12 per step.
template <typename F>
bool is_non_increasing(F&& f, double x_lo, double x_hi, std::size_t samples) {
  if (!(x_lo < x_hi) || samples < 2) {
    throw std::invalid_argument("need x_lo < x_hi and at least two samples");
  }
  double previous = f(x_lo);
  for (std::size_t i = 1; i < samples; ++i) {
    const double x = i + 1 == samples
                         ? x_hi
                         : x_lo + (x_hi - x_lo) * static_cast<double>(i) /
                                      static_cast<double>(samples - 1);
    const double current = f(x);
    if (current > previous + 1e-12 * std::abs(previous)) {
      return false;
    }
    previous = current;
  }
  return true;
}

/// f(x) = x (e^{a/x} - 1): energy of sending `a` nats over x seconds at unit
/// gain. Its monotone decrease is why the longest tail is always optimal.
inline double tail_energy(double a, double x) noexcept { return x * std::expm1(a / x); }

inline bool verify_monotone_f(double a, double x_lo, double x_hi, std::size_t samples) {
  if (!(a > 0.0) || !(x_lo > 0.0)) {
    throw std::invalid_argument("verify_monotone_f needs positive a and x_lo");
  }
  return is_non_increasing([a](double x) { return tail_energy(a, x); }, x_lo, x_hi, samples);
}

}  // namespace noma_mec

#endif  // NOMA_MEC_ORACLE_HPP
