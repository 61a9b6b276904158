#include "rotlab/torus.hpp"

#include <cstdio>
#include <stdexcept>

namespace rotlab {

std::string TorusPoint::to_hex() const {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(frac));
  return buf;
}

TorusPoint to_torus(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("to_torus: non-finite input");
  double y = x - std::floor(x);
  if (y >= 1.0) y = 0.0;  // floor rounding at the top of the interval
  // y in [0,1) has <= 53 significant bits, so y * 2^64 is exact in
  // long double (64-bit significand on x86-64); rounding to the grid is
  // then a single round-to-nearest.
  long double scaled = static_cast<long double>(y) * 18446744073709551616.0L;
  long double rounded = std::floor(scaled + 0.5L);
  if (rounded >= 18446744073709551616.0L) return TorusPoint{0};  // wrapped to 1 == 0
  return TorusPoint{static_cast<uint64_t>(rounded)};
}

TorusPoint torus_from_string(const std::string& s) {
  if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) {
    return TorusPoint{std::stoull(s.substr(2), nullptr, 16)};
  }
  return to_torus(std::stod(s));
}

}  // namespace rotlab
