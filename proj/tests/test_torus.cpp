#include "doctest.h"
#include "rotlab/rng.hpp"
#include "rotlab/torus.hpp"

#include <cmath>

using namespace rotlab;

namespace {

using u128 = unsigned __int128;

// floor of the integer square root, 128-bit (oracle helper)
u128 isqrt_u128(u128 x) {
  if (x == 0) return 0;
  u128 r = static_cast<u128>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// nearest integer to sqrt(x), exact comparison
u128 nearest_sqrt(u128 x) {
  u128 r = isqrt_u128(x);
  // compare x - r^2 against (r+1)^2 - x: nearer to r+1 iff 2(x - r^2) > 2r + 1
  return (2 * (x - r * r) > 2 * r + 1) ? r + 1 : r;
}

}  // namespace

TEST_CASE("to_torus exact dyadics") {
  CHECK(to_torus(0.25).frac == (1ull << 62));
  CHECK(to_torus(1.25).frac == (1ull << 62));
  CHECK(to_torus(0.0).frac == 0);
  CHECK(to_torus(-0.75).frac == (1ull << 62));
  CHECK(to_torus(0.5).frac == (1ull << 63));
}

TEST_CASE("to_torus golden ratio against extended-precision oracle") {
  // round(0.6180339887498949 * 2^64) computed in 128-bit through the
  // long double path is what the function must produce
  const double g = 0.6180339887498949;
  long double scaled = static_cast<long double>(g) * 18446744073709551616.0L;
  uint64_t expect = static_cast<uint64_t>(std::floor(scaled + 0.5L));
  CHECK(to_torus(g).frac == expect);
}

TEST_CASE("named constants match integer square-root oracles") {
  // golden * 2^64 = nearest(sqrt(5 * 2^126)) - 2^63
  u128 five = static_cast<u128>(5) << 126;
  CHECK(kGolden.frac == static_cast<uint64_t>(nearest_sqrt(five) - (static_cast<u128>(1) << 63)));
  // frac(sqrt(2)) * 2^64 = nearest(sqrt(2^129)) - 2^64
  u128 two = static_cast<u128>(1) << 129;
  CHECK(kSqrt2.frac == static_cast<uint64_t>(nearest_sqrt(two) - (static_cast<u128>(1) << 64)));
  // frac(e): compare against the long double expansion within a few ulps
  long double e_frac = std::exp(1.0L) - 2.0L;
  long double diff = std::fabs(e_frac * 18446744073709551616.0L -
                                static_cast<long double>(kEuler.frac));
  CHECK(diff <= 4.0L);
}

TEST_CASE("orbit_point basics") {
  CHECK(orbit_point(4, to_torus(0.25)).frac == 0);
  // 128-bit widened oracle at n = 1e8
  uint64_t n = 100'000'000ull;
  u128 wide = static_cast<u128>(n) * kGolden.frac;
  CHECK(orbit_point(n, kGolden).frac == static_cast<uint64_t>(wide));
}

TEST_CASE("orbit_point is a homomorphism in n, bit-exact") {
  for (int i = 0; i < 1000; ++i) {
    uint64_t n = keyed_u64(1, i) >> 34;
    uint64_t m = keyed_u64(2, i) >> 34;
    TorusPoint alpha{keyed_u64(3, i)};
    CHECK(orbit_point(n + m, alpha) == orbit_point(n, alpha) + orbit_point(m, alpha));
  }
}

TEST_CASE("character basics") {
  CHECK(character(0, kGolden) == UnitComplex{1.0, 0.0});
  UnitComplex half = character(1, to_torus(0.5));
  CHECK(half.real() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(half.imag()) < 1e-15);
  // p = 3 at 1/7: high-precision values of e(3/7)
  UnitComplex z = character(3, to_torus(1.0 / 7.0));
  CHECK(std::abs(z.real() - (-0.90096886790241912624)) < 1e-12);
  CHECK(std::abs(z.imag() - 0.43388373911755812048) < 1e-12);
}

TEST_CASE("character modulus and multiplicativity") {
  double worst_mod = 0.0, worst_mult = 0.0;
  for (int i = 0; i < 1'000'000; ++i) {
    TorusPoint theta{keyed_u64(7, i)};
    int64_t p = static_cast<int64_t>(keyed_u64(8, i) % 4096) - 2048;
    worst_mod = std::max(worst_mod, std::abs(std::abs(character(p, theta)) - 1.0));
    if (i % 100 == 0) {
      int64_t q = static_cast<int64_t>(keyed_u64(9, i) % 4096) - 2048;
      UnitComplex prod = character(p, theta) * character(q, theta);
      worst_mult = std::max(worst_mult, std::abs(prod - character(p + q, theta)));
    }
  }
  CHECK(worst_mod <= 1e-15);
  CHECK(worst_mult <= 1e-12);
}

TEST_CASE("torus_from_string") {
  CHECK(torus_from_string("0x9e3779b97f4a7c16").frac == kGolden.frac);
  CHECK(torus_from_string("0.25").frac == (1ull << 62));
}
