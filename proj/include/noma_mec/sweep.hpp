#ifndef NOMA_MEC_SWEEP_HPP
#define NOMA_MEC_SWEEP_HPP

// One-variable parameter sweeps over the closed-form solvers, and their CSV
// rendering.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "noma_mec/closed_form.hpp"
#include "noma_mec/format.hpp"
#include "noma_mec/model.hpp"

namespace noma_mec {

enum class SweepVariable { Pm, Dn, N, Gm, Gn };

constexpr std::string_view to_string(SweepVariable v) noexcept {
  switch (v) {
    case SweepVariable::Pm: return "Pm";
    case SweepVariable::Dn: return "Dn";
    case SweepVariable::N: return "N";
    case SweepVariable::Gm: return "Gm";
    case SweepVariable::Gn: return "Gn";
  }
  return "?";
}

/// Case-insensitive; also accepts "nats" for N.
inline std::optional<SweepVariable> parse_sweep_variable(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "pm") return SweepVariable::Pm;
  if (lower == "dn") return SweepVariable::Dn;
  if (lower == "n" || lower == "nats") return SweepVariable::N;
  if (lower == "gm") return SweepVariable::Gm;
  if (lower == "gn") return SweepVariable::Gn;
  return std::nullopt;
}

/// Raw scenario fields, so that sweeps can step through values that violate
/// the Scenario invariants and still report them.
struct ScenarioFields {
  double n_nats = 20.0;
  double d_m = 40.0;
  double d_n = 80.0;
  double p_m = 1.0;
  double g_m = 1.0;
  double g_n = 1.0;

  static ScenarioFields from(const Scenario& s) {
    return {s.n_nats(), s.d_m(), s.d_n(), s.p_m(), s.g_m(), s.g_n()};
  }

  /// Throws std::invalid_argument when the fields violate an invariant.
  Scenario build() const {
    return Scenario(ChannelGains(g_m, g_n), TaskProfile(n_nats, d_m, d_n), p_m);
  }

  ScenarioFields with(SweepVariable v, double value) const {
    ScenarioFields f = *this;
    switch (v) {
      case SweepVariable::Pm: f.p_m = value; break;
      case SweepVariable::Dn: f.d_n = value; break;
      case SweepVariable::N: f.n_nats = value; break;
      case SweepVariable::Gm: f.g_m = value; break;
      case SweepVariable::Gn: f.g_n = value; break;
    }
    return f;
  }
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::Pm;
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 2;
  ScenarioFields base;  // the swept field is overwritten at every point

  void validate() const {
    if (!(std::isfinite(start) && std::isfinite(stop) && start < stop)) {
      throw std::invalid_argument("sweep needs finite start < stop");
    }
    if (steps < 2) {
      throw std::invalid_argument("sweep needs at least 2 steps");
    }
  }

  /// `steps` evenly spaced values, both endpoints included.
  std::vector<double> values() const {
    std::vector<double> out(steps);
    for (std::size_t i = 0; i < steps; ++i) {
      out[i] = i + 1 == steps ? stop
                              : start + (stop - start) * static_cast<double>(i) /
                                            static_cast<double>(steps - 1);
    }
    return out;
  }
};

struct SweepRow {
  SweepVariable variable = SweepVariable::Pm;
  double value = 0.0;
  double e_oma = HUGE_VAL;
  double e_existing = HUGE_VAL;
  double e_lemma1 = HUGE_VAL;  // +inf when U_m-first is infeasible
  double e_hybrid = HUGE_VAL;
  StrategyKind chosen_kind = StrategyKind::Oma;
  std::optional<DecodingOrder> chosen_order;  // empty for invalid input points
  double p_n1 = NAN;
  double p_n2 = NAN;
  double t_n = NAN;

  bool valid_input() const noexcept { return chosen_order.has_value(); }
};

/// Solves every closed-form branch for one scenario.
inline SweepRow solve_row(const Scenario& s) {
  SweepRow row;
  row.e_oma = solve_oma(s).energy_or_inf();
  row.e_existing = solve_existing(s).energy_or_inf();
  row.e_lemma1 = solve_lemma1(s).energy_or_inf();
  const auto chosen = solve_hybrid_sic(s);
  const auto& a = chosen.allocation();
  row.e_hybrid = chosen.energy_joules();
  row.chosen_kind = a.kind;
  row.chosen_order = a.order;
  row.p_n1 = a.p_n1;
  row.p_n2 = a.p_n2;
  row.t_n = a.t_n;
  return row;
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.steps);
  for (double value : spec.values()) {
    SweepRow row;
    try {
      row = solve_row(spec.base.with(spec.variable, value).build());
    } catch (const std::invalid_argument&) {
      row = SweepRow{};
    }
    row.variable = spec.variable;
    row.value = value;
    rows.push_back(row);
  }
  return rows;
}

inline constexpr std::string_view kCsvHeader =
    "var,value,e_oma,e_existing,e_lemma1,e_hybrid,kind,order,p_n1,p_n2,t_n";

inline void emit_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.variable) << ',' << format_decimal(r.value) << ','
        << format_decimal(r.e_oma) << ',' << format_decimal(r.e_existing) << ','
        << format_decimal(r.e_lemma1) << ',' << format_decimal(r.e_hybrid) << ','
        << to_string(r.chosen_kind) << ','
        << (r.chosen_order ? to_string(*r.chosen_order) : std::string_view("invalid")) << ','
        << format_decimal(r.p_n1) << ',' << format_decimal(r.p_n2) << ','
        << format_decimal(r.t_n) << '\n';
  }
}

/// Throws std::runtime_error when the file cannot be written.
inline void write_csv_file(std::span<const SweepRow> rows, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  emit_csv(rows, file);
  file.flush();
  if (!file) {
    throw std::runtime_error("failed writing " + path);
  }
}

}  // namespace noma_mec

#endif  // NOMA_MEC_SWEEP_HPP
