#ifndef NOMA_MEC_MODEL_HPP
#define NOMA_MEC_MODEL_HPP

// Two-user uplink NOMA-MEC offloading model.
//
// U_m is the delay-sensitive user (deadline d_m) transmitting at a fixed power
// p_m. U_n (deadline d_n > d_m) offloads N nats: partly during U_m's slot at
// power p_n1, and the remainder alone for t_n seconds at power p_n2.
//
// Conventions: noise power and bandwidth are normalized to 1, so rates are
// ln(1 + SINR) in nats/second, powers are watts and energy is joules.

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace noma_mec {

/// Relative slack used when comparing p_m*g_m against a feasibility threshold.
inline constexpr double kFeasibilityTolerance = 1e-12;

/// x <= threshold, allowing a relative slack of kFeasibilityTolerance.
inline bool at_most(double x, double threshold) noexcept {
  return x <= threshold + kFeasibilityTolerance * std::abs(threshold);
}

/// x >= threshold, allowing a relative slack of kFeasibilityTolerance.
inline bool at_least(double x, double threshold) noexcept {
  return x >= threshold - kFeasibilityTolerance * std::abs(threshold);
}

class ChannelGains {
 public:
  /// Linear channel power gains |h_m|^2 and |h_n|^2.
  ChannelGains(double g_m, double g_n) : g_m_(g_m), g_n_(g_n) {
    if (!(std::isfinite(g_m) && g_m > 0.0)) {
      throw std::invalid_argument("channel gain g_m must be positive and finite");
    }
    if (!(std::isfinite(g_n) && g_n > 0.0)) {
      throw std::invalid_argument("channel gain g_n must be positive and finite");
    }
  }

  double g_m() const noexcept { return g_m_; }
  double g_n() const noexcept { return g_n_; }

 private:
  double g_m_;
  double g_n_;
};

class TaskProfile {
 public:
  /// Task of n_nats nats for both users; U_m must finish by d_m, U_n by d_n.
  /// Requires 0 < d_m < d_n.
  TaskProfile(double n_nats, double d_m, double d_n)
      : n_nats_(n_nats), d_m_(d_m), d_n_(d_n) {
    if (!(std::isfinite(n_nats) && n_nats > 0.0)) {
      throw std::invalid_argument("task size must be positive and finite");
    }
    if (!(std::isfinite(d_m) && d_m > 0.0)) {
      throw std::invalid_argument("deadline d_m must be positive and finite");
    }
    if (!(std::isfinite(d_n) && d_n > d_m)) {
      throw std::invalid_argument("deadline d_n must be finite and strictly larger than d_m");
    }
  }

  double n_nats() const noexcept { return n_nats_; }
  double d_m() const noexcept { return d_m_; }
  double d_n() const noexcept { return d_n_; }
  /// Length of the slot left to U_n after U_m's deadline.
  double tail() const noexcept { return d_n_ - d_m_; }

 private:
  double n_nats_;
  double d_m_;
  double d_n_;
};

class Scenario {
 public:
  Scenario(ChannelGains gains, TaskProfile task, double p_m)
      : gains_(gains), task_(task), p_m_(p_m) {
    if (!(std::isfinite(p_m) && p_m >= 0.0)) {
      throw std::invalid_argument("transmit power p_m must be non-negative and finite");
    }
  }

  const ChannelGains& gains() const noexcept { return gains_; }
  const TaskProfile& task() const noexcept { return task_; }

  double p_m() const noexcept { return p_m_; }
  double g_m() const noexcept { return gains_.g_m(); }
  double g_n() const noexcept { return gains_.g_n(); }
  double n_nats() const noexcept { return task_.n_nats(); }
  double d_m() const noexcept { return task_.d_m(); }
  double d_n() const noexcept { return task_.d_n(); }
  double tail() const noexcept { return task_.tail(); }

  /// Received SNR of U_m, p_m * g_m. Every threshold test is on this product.
  double um_snr() const noexcept { return p_m_ * gains_.g_m(); }

 private:
  ChannelGains gains_;
  TaskProfile task_;
  double p_m_;
};

/// SIC decoding order during U_m's slot.
enum class DecodingOrder {
  UnFirst,  // QoS-based SIC: U_n decoded first, NOMA transparent to U_m
  UmFirst,  // U_m decoded first, U_n then sees an interference-free channel
};

enum class StrategyKind {
  Oma,
  PureNoma,
  HybridConstrained,  // first-phase power pinned at U_m's interference cap
  HybridEqualPower,   // same power in both phases
  ExistingQosSic,     // water-filling under QoS-based SIC
};

constexpr std::string_view to_string(DecodingOrder order) noexcept {
  switch (order) {
    case DecodingOrder::UnFirst: return "UnFirst";
    case DecodingOrder::UmFirst: return "UmFirst";
  }
  return "?";
}

constexpr std::string_view to_string(StrategyKind kind) noexcept {
  switch (kind) {
    case StrategyKind::Oma: return "Oma";
    case StrategyKind::PureNoma: return "PureNoma";
    case StrategyKind::HybridConstrained: return "HybridConstrained";
    case StrategyKind::HybridEqualPower: return "HybridEqualPower";
    case StrategyKind::ExistingQosSic: return "ExistingQosSic";
  }
  return "?";
}

struct PowerAllocation {
  double p_n1 = 0.0;  // U_n power while sharing U_m's slot (W)
  double p_n2 = 0.0;  // U_n power in its own slot (W)
  double t_n = 0.0;   // length of U_n's own slot (s)
  DecodingOrder order = DecodingOrder::UnFirst;
  StrategyKind kind = StrategyKind::Oma;
};

/// Non-negative powers and 0 <= t_n <= d_n - d_m.
inline bool within_bounds(const PowerAllocation& a, const Scenario& s) noexcept {
  return a.p_n1 >= 0.0 && a.p_n2 >= 0.0 && a.t_n >= 0.0 && a.t_n <= s.tail() &&
         std::isfinite(a.p_n1) && std::isfinite(a.p_n2);
}

/// U_n's first-phase rate (nats/s). Under UnFirst U_n is decoded while U_m's
/// signal is still present, so U_m acts as interference.
inline double rate_first_phase(double p_n1, DecodingOrder order, const Scenario& s) noexcept {
  const double signal = p_n1 * s.g_n();
  if (order == DecodingOrder::UnFirst) {
    return std::log1p(signal / (s.um_snr() + 1.0));
  }
  return std::log1p(signal);
}

/// U_m's rate when U_m is decoded first, i.e. with U_n's signal as interference.
inline double um_rate_under_interference(double p_n1, const Scenario& s) noexcept {
  return std::log1p(s.um_snr() / (p_n1 * s.g_n() + 1.0));
}

/// Nats U_n delivers across both phases.
inline double offloaded_nats(const PowerAllocation& a, const Scenario& s) noexcept {
  return s.d_m() * rate_first_phase(a.p_n1, a.order, s) + a.t_n * std::log1p(a.p_n2 * s.g_n());
}

/// U_n's transmit energy, d_m * p_n1 + t_n * p_n2.
inline double energy(const PowerAllocation& a, const Scenario& s) noexcept {
  return s.d_m() * a.p_n1 + a.t_n * a.p_n2;
}

/// Threshold values on p_m * g_m that separate the closed-form regimes.
struct FeasibilityThresholds {
  double theta1;  // e^{N/Dm} - 1: U_m can tolerate any interference at all
  double theta2;  // e^{N/Dn} (e^{N/Dm} - 1): constrained / equal-power switch
  double theta3;  // e^{N/Dm} (e^{N/Dm} - 1): pure NOMA feasible
  double theta4;  // e^{N/(Dn-Dm)} - 1: upper limit for QoS-based SIC
  double theta5;  // equal-power feasibility at t_n = Dn - Dm (equals theta2)
};

/// Smallest p_m * g_m for which equal power in both phases respects U_m's
/// rate when U_n's own slot lasts t_n seconds.
inline double equal_power_threshold(const Scenario& s, double t_n) noexcept {
  return std::exp(s.n_nats() / (s.d_m() + t_n)) * std::expm1(s.n_nats() / s.d_m());
}

inline FeasibilityThresholds feasibility_thresholds(const Scenario& s) noexcept {
  const double n = s.n_nats();
  const double theta1 = std::expm1(n / s.d_m());
  return FeasibilityThresholds{
      theta1,
      std::exp(n / s.d_n()) * theta1,
      std::exp(n / s.d_m()) * theta1,
      std::expm1(n / s.tail()),
      equal_power_threshold(s, s.tail()),
  };
}

/// Largest p_n1 * g_n that still lets U_m deliver N nats in d_m seconds when
/// U_m is decoded first. Negative when U_m cannot meet its deadline at all.
inline double interference_cap(const Scenario& s) noexcept {
  return s.um_snr() / std::expm1(s.n_nats() / s.d_m()) - 1.0;
}

enum class InfeasibleReason {
  UmPowerTooLow,                  // p_m * g_m at or below the threshold of the branch
  UmPowerTooHighForExisting,      // QoS-based SIC would need negative first-phase power
  UmPowerTooHighForConstrained,   // capped first phase would already exceed N nats
  EmptySecondPhase,               // t_n = 0 leaves no room for a two-phase schedule
};

constexpr std::string_view to_string(InfeasibleReason reason) noexcept {
  switch (reason) {
    case InfeasibleReason::UmPowerTooLow: return "UmPowerTooLow";
    case InfeasibleReason::UmPowerTooHighForExisting: return "UmPowerTooHighForExisting";
    case InfeasibleReason::UmPowerTooHighForConstrained: return "UmPowerTooHighForConstrained";
    case InfeasibleReason::EmptySecondPhase: return "EmptySecondPhase";
  }
  return "?";
}

/// Either a feasible allocation with its energy, or the reason none exists.
class SolverOutcome {
 public:
  static SolverOutcome feasible(const PowerAllocation& a, const Scenario& s) {
    return SolverOutcome(Feasible{a, energy(a, s)});
  }
  static SolverOutcome infeasible(InfeasibleReason reason) {
    return SolverOutcome(Infeasible{reason});
  }

  bool is_feasible() const noexcept { return std::holds_alternative<Feasible>(state_); }
  explicit operator bool() const noexcept { return is_feasible(); }

  const PowerAllocation& allocation() const {
    return std::get<Feasible>(state_).allocation;
  }
  double energy_joules() const { return std::get<Feasible>(state_).energy_joules; }
  InfeasibleReason reason() const { return std::get<Infeasible>(state_).reason; }

  /// Energy, or +inf for infeasible outcomes.
  double energy_or_inf() const noexcept {
    if (const auto* f = std::get_if<Feasible>(&state_)) {
      return f->energy_joules;
    }
    return HUGE_VAL;
  }

 private:
  struct Feasible {
    PowerAllocation allocation;
    double energy_joules;
  };
  struct Infeasible {
    InfeasibleReason reason;
  };
  explicit SolverOutcome(std::variant<Feasible, Infeasible> state) : state_(state) {}

  std::variant<Feasible, Infeasible> state_;
};

}  // namespace noma_mec

#endif  // NOMA_MEC_MODEL_HPP
