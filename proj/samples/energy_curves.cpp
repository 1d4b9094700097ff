// Prints the two energy-vs-parameter curve families for the equal-gain setup
// (g_m = g_n = 1, d_m = 40 s) as CSV on stdout:
//   - d_n swept over [41, 80] at p_m = 1 W, for N = 10, 20, 30
//   - p_m swept over [0.66, 2] at N = 20, d_n = 60 s

#include <iostream>

#include "noma_mec/sweep.hpp"

int main() {
  using namespace noma_mec;

  std::cout << "# deadline sweep, p_m = 1 W\n";
  for (double nats : {10.0, 20.0, 30.0}) {
    SweepSpec spec;
    spec.variable = SweepVariable::Dn;
    spec.start = 41.0;
    spec.stop = 80.0;
    spec.steps = 40;
    spec.base = ScenarioFields{nats, 40.0, 80.0, 1.0, 1.0, 1.0};
    std::cout << "# N = " << nats << '\n';
    emit_csv(run_sweep(spec), std::cout);
  }

  std::cout << "# power sweep, N = 20, d_n = 60 s\n";
  SweepSpec spec;
  spec.variable = SweepVariable::Pm;
  spec.start = 0.66;
  spec.stop = 2.0;
  spec.steps = 68;
  spec.base = ScenarioFields{20.0, 40.0, 60.0, 1.0, 1.0, 1.0};
  emit_csv(run_sweep(spec), std::cout);
}
