#ifndef NOMA_MEC_GOLDEN_SECTION_HPP
#define NOMA_MEC_GOLDEN_SECTION_HPP

#include <cmath>
#include <cstddef>

namespace noma_mec {

struct LineMinimum {
  double x;
  double value;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
/// Runs exactly `iterations` interval reductions and returns the better of
/// the two interior probes.
template <typename F>
LineMinimum golden_section_minimize(F&& f, double lo, double hi, std::size_t iterations) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (std::size_t i = 0; i < iterations; ++i) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? LineMinimum{c, fc} : LineMinimum{d, fd};
}

}  // namespace noma_mec

#endif  // NOMA_MEC_GOLDEN_SECTION_HPP
