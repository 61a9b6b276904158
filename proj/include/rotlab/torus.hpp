#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace rotlab {

// A point of the torus T = [0,1) stored as a 64-bit fixed-point fraction:
// value = frac / 2^64.  Addition and integer-multiple maps are plain u64
// wraparound, hence exact group operations mod 1.
struct TorusPoint {
  uint64_t frac = 0;

  friend constexpr TorusPoint operator+(TorusPoint a, TorusPoint b) {
    return TorusPoint{a.frac + b.frac};
  }
  friend constexpr TorusPoint operator-(TorusPoint a, TorusPoint b) {
    return TorusPoint{a.frac - b.frac};
  }
  friend constexpr bool operator==(TorusPoint a, TorusPoint b) {
    return a.frac == b.frac;
  }
  friend constexpr bool operator!=(TorusPoint a, TorusPoint b) {
    return a.frac != b.frac;
  }

  double to_double() const { return std::ldexp(static_cast<double>(frac), -64); }
  std::string to_hex() const;
};

using UnitComplex = std::complex<double>;

// Nearest point of the 2^-64 grid to the fractional part of x.
TorusPoint to_torus(double x);

// Parse "0x..." (hex of frac) or a decimal fraction.
TorusPoint torus_from_string(const std::string& s);

// n * alpha mod 1, exact (u64 multiplication wraps mod 2^64).
constexpr TorusPoint orbit_point(uint64_t n, TorusPoint alpha) {
  return TorusPoint{n * alpha.frac};
}

// e(p*theta) = exp(2*pi*i*p*theta).  The angle p*theta mod 1 is formed
// exactly in fixed point; only the final sin/cos is inexact.
inline UnitComplex character(int64_t p, TorusPoint theta) {
  const uint64_t angle = static_cast<uint64_t>(p) * theta.frac;
  const double a = 2.0 * M_PI * std::ldexp(static_cast<double>(angle), -64);
  return {std::cos(a), std::sin(a)};
}

// e(theta)
inline UnitComplex torus_exp(TorusPoint theta) { return character(1, theta); }

// Named irrational rotation numbers, snapped to the nearest 2^-64 grid
// point of their exact values.
inline constexpr TorusPoint kGolden{0x9e3779b97f4a7c16ull};  // frac((sqrt(5)-1)/2)
inline constexpr TorusPoint kSqrt2{0x6a09e667f3bcc909ull};   // frac(sqrt(2))
inline constexpr TorusPoint kEuler{0xb7e151628aed2a6bull};   // frac(e)

}  // namespace rotlab
