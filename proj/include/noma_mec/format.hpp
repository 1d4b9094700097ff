#ifndef NOMA_MEC_FORMAT_HPP
#define NOMA_MEC_FORMAT_HPP

#include <cmath>
#include <cstdio>
#include <string>

namespace noma_mec {

/// Nine significant digits; non-finite values print as inf / nan.
inline std::string format_decimal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace noma_mec

#endif  // NOMA_MEC_FORMAT_HPP
