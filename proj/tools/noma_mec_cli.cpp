// Command-line front end for the hybrid-SIC NOMA-MEC solvers.
//
//   noma_mec solve    single scenario, text or --json
//   noma_mec sweep    one-variable sweep, CSV
//   noma_mec verify   seeded closed-form vs oracle campaign
//   noma_mec regions  thresholds, equal-power dominance band and selected strategy
//
// Exit codes: 0 ok, 1 usage, 2 invalid scenario, 3 I/O, 4 verification failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "noma_mec/noma_mec.hpp"

namespace {

using namespace noma_mec;

constexpr int kExitUsage = 1;
constexpr int kExitInvalidScenario = 2;
constexpr int kExitIo = 3;
constexpr int kExitVerifyFailed = 4;

void add_scenario_flags(CLI::App* cmd, ScenarioFields& f) {
  cmd->add_option("--nats", f.n_nats, "task size N in nats")->capture_default_str();
  cmd->add_option("--dm", f.d_m, "U_m deadline (s)")->capture_default_str();
  cmd->add_option("--dn", f.d_n, "U_n deadline (s)")->capture_default_str();
  cmd->add_option("--pm", f.p_m, "U_m transmit power (W)")->capture_default_str();
  cmd->add_option("--gm", f.g_m, "U_m channel power gain")->capture_default_str();
  cmd->add_option("--gn", f.g_n, "U_n channel power gain")->capture_default_str();
}

/// Writes to --out when given, stdout otherwise. Returns an exit code.
int deliver(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::flush;
    return std::cout ? 0 : kExitIo;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  file << text;
  file.flush();
  if (!file) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return kExitIo;
  }
  return 0;
}

nlohmann::ordered_json row_json(const SweepRow& r) {
  const auto num = [](double x) -> nlohmann::ordered_json {
    if (std::isfinite(x)) return x;
    return nullptr;
  };
  nlohmann::ordered_json j;
  j["e_oma"] = num(r.e_oma);
  j["e_existing"] = num(r.e_existing);
  j["e_lemma1"] = num(r.e_lemma1);
  j["e_hybrid"] = num(r.e_hybrid);
  j["kind"] = std::string(to_string(r.chosen_kind));
  j["order"] = r.chosen_order ? std::string(to_string(*r.chosen_order)) : "invalid";
  j["p_n1"] = num(r.p_n1);
  j["p_n2"] = num(r.p_n2);
  j["t_n"] = num(r.t_n);
  return j;
}

std::string solve_text(const Scenario& s, const SweepRow& r) {
  std::ostringstream out;
  out << "scenario nats=" << format_decimal(s.n_nats()) << " dm=" << format_decimal(s.d_m())
      << " dn=" << format_decimal(s.d_n()) << " pm=" << format_decimal(s.p_m())
      << " gm=" << format_decimal(s.g_m()) << " gn=" << format_decimal(s.g_n()) << '\n'
      << "e_oma=" << format_decimal(r.e_oma) << '\n'
      << "e_existing=" << format_decimal(r.e_existing) << '\n'
      << "e_lemma1=" << format_decimal(r.e_lemma1) << '\n'
      << "e_hybrid=" << format_decimal(r.e_hybrid) << '\n'
      << "kind=" << to_string(r.chosen_kind) << " order=" << to_string(*r.chosen_order) << '\n'
      << "p_n1=" << format_decimal(r.p_n1) << " p_n2=" << format_decimal(r.p_n2)
      << " t_n=" << format_decimal(r.t_n) << '\n';
  return out.str();
}

std::string regions_report(const Scenario& s, bool as_json) {
  const auto th = feasibility_thresholds(s);
  const auto band = lemma2_band(s);
  const auto region = strategy_region(s);
  if (as_json) {
    nlohmann::ordered_json j;
    j["theta1"] = th.theta1;
    j["theta2"] = th.theta2;
    j["theta3"] = th.theta3;
    j["theta4"] = th.theta4;
    j["theta5"] = th.theta5;
    j["lemma2_applicable"] = band.applicable;
    j["lemma2_lower_pm"] = band.lower;
    j["lemma2_upper_pm"] = band.upper;
    j["kind"] = std::string(to_string(region.kind));
    j["order"] = std::string(to_string(region.order));
    return j.dump(2) + "\n";
  }
  const double g_m = s.g_m();
  std::ostringstream out;
  out << "# thresholds on p_m*g_m (p_m value in parentheses)\n"
      << "theta1=" << format_decimal(th.theta1) << " (" << format_decimal(th.theta1 / g_m)
      << ")  U_m-first feasible above\n"
      << "theta2=" << format_decimal(th.theta2) << " (" << format_decimal(th.theta2 / g_m)
      << ")  capped first phase up to, equal power above\n"
      << "theta3=" << format_decimal(th.theta3) << " (" << format_decimal(th.theta3 / g_m)
      << ")  pure NOMA feasible from\n"
      << "theta4=" << format_decimal(th.theta4) << " (" << format_decimal(th.theta4 / g_m)
      << ")  QoS-based SIC feasible up to\n"
      << "theta5=" << format_decimal(th.theta5) << " (" << format_decimal(th.theta5 / g_m)
      << ")  equal power feasible from, at t_n = dn - dm\n"
      << "lemma2_band applicable=" << (band.applicable ? "true" : "false")
      << " lower_pm=" << format_decimal(band.lower) << " upper_pm=" << format_decimal(band.upper)
      << '\n'
      << "pm=" << format_decimal(s.p_m()) << " kind=" << to_string(region.kind)
      << " order=" << to_string(region.order) << '\n';
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-optimal U_n power schedules for two-user NOMA-MEC with hybrid SIC"};
  app.require_subcommand(1);

  ScenarioFields fields;
  std::string out_path;
  bool as_json = false;

  auto* solve = app.add_subcommand("solve", "solve one scenario with every closed-form branch");
  add_scenario_flags(solve, fields);
  solve->add_flag("--json", as_json, "emit a single JSON record");
  solve->add_option("--out", out_path, "output file (default stdout)");

  std::string var_name;
  double from = 0.0;
  double to = 0.0;
  std::size_t steps = 0;
  auto* sweep = app.add_subcommand("sweep", "sweep one variable and emit CSV");
  add_scenario_flags(sweep, fields);
  sweep->add_option("--var", var_name, "swept variable: pm, dn, nats, gm, gn")->required();
  sweep->add_option("--from", from, "first value")->required();
  sweep->add_option("--to", to, "last value")->required();
  sweep->add_option("--steps", steps, "number of points, endpoints included")->required();
  sweep->add_option("--out", out_path, "CSV file (default stdout)");

  std::size_t trials = 200;
  std::uint64_t seed = 7;
  double tol = 1e-3;
  auto* verify = app.add_subcommand("verify", "randomized closed-form vs oracle campaign");
  verify->add_option("--trials", trials, "number of random scenarios")->capture_default_str();
  verify->add_option("--seed", seed, "64-bit seed")->capture_default_str();
  verify->add_option("--tol", tol, "max relative energy gap")->capture_default_str();
  verify->add_option("--out", out_path, "report file (default stdout)");

  auto* regions = app.add_subcommand("regions", "thresholds and the selected strategy");
  add_scenario_flags(regions, fields);
  regions->add_flag("--json", as_json, "emit JSON");
  regions->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*sweep) {
    const auto variable = parse_sweep_variable(var_name);
    if (!variable) {
      std::cerr << "error: unknown --var '" << var_name << "'\n";
      return kExitUsage;
    }
    SweepSpec spec{*variable, from, to, steps, fields};
    std::vector<SweepRow> rows;
    try {
      rows = run_sweep(spec);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    std::ostringstream csv;
    emit_csv(rows, csv);
    return deliver(csv.str(), out_path);
  }

  if (*verify) {
    if (trials < 1) {
      std::cerr << "error: --trials must be at least 1\n";
      return kExitUsage;
    }
    const auto report = verify_campaign(trials, seed, tol);
    const int io = deliver(render(report), out_path);
    if (io != 0) {
      return io;
    }
    return report.passed() ? 0 : kExitVerifyFailed;
  }

  std::optional<Scenario> scenario;
  try {
    scenario = fields.build();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid scenario: " << e.what() << '\n';
    return kExitInvalidScenario;
  }

  if (*solve) {
    const auto row = solve_row(*scenario);
    return deliver(as_json ? row_json(row).dump() + "\n" : solve_text(*scenario, row), out_path);
  }
  return deliver(regions_report(*scenario, as_json), out_path);
}
