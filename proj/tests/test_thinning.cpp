#include "doctest.h"
#include "rotlab/thinning.hpp"
#include "rotlab/trig_grid.hpp"
#include "rotlab/rng.hpp"

#include <cmath>
#include <complex>

using namespace rotlab;

namespace {

Weight constant_sigma(double c) {
  Weight s;
  s.base = make_naturals();
  s.label = "sigma=" + std::to_string(c);
  s.sup_bound = std::max(c, 1e-9);
  s.value = [c](uint64_t, uint64_t) { return c; };
  return s;
}

}  // namespace

TEST_CASE("fft grid maximum matches direct summation") {
  std::vector<std::complex<double>> c(501, {0.0, 0.0});
  for (size_t r = 1; r <= 500; ++r) {
    c[r] = {keyed_uniform(21, r) - 0.5, keyed_uniform(22, r) - 0.5};
  }
  for (uint64_t M : {512ull, 1000ull, 1999ull}) {
    double fft = grid_max_abs(c, M);
    double naive = grid_max_abs_naive(c, M);
    CHECK(std::abs(fft - naive) < 1e-9 * std::max(1.0, naive));
  }
}

TEST_CASE("degenerate thinning probabilities") {
  ThinningConfig cfg;
  cfg.seed = 5;
  cfg.checkpoints = {1000};
  SUBCASE("sigma = 1 keeps everything with a zero certificate") {
    ThinResult r = thin(constant_sigma(1.0), cfg);
    CHECK(r.set.count_upto(1000) == 1000);
    CHECK(r.certificate.rows[0].max_abs_Z < 1e-12);
    CHECK(r.certificate.rows[0].ratio < 1e-12);
  }
  SUBCASE("sigma = 0 keeps nothing") {
    ThinResult r = thin(constant_sigma(0.0), cfg);
    CHECK(r.set.count_upto(1000) == 0);
    CHECK(r.certificate.rows[0].max_abs_Z < 1e-12);
  }
  SUBCASE("sigma outside [0,1] rejected") {
    CHECK_THROWS(thin(constant_sigma(1.5), cfg));
  }
}

TEST_CASE("half thinning certificate stays below the constant") {
  ThinningConfig cfg;
  cfg.seed = 42;
  cfg.checkpoints = {1'000, 10'000, 100'000};
  ThinResult r = thin(constant_sigma(0.5), cfg);
  REQUIRE(r.certificate.rows.size() == 3);
  for (const auto& row : r.certificate.rows) {
    CHECK(row.sigma_mass == doctest::Approx(row.N * 0.5).epsilon(1e-12));
    CHECK(row.ratio <= 13.0);
    CHECK(row.ratio > 0.0);
  }
  SUBCASE("beta = 0 consistency: the count deviation is inside the grid max") {
    for (const auto& row : r.certificate.rows) {
      uint64_t kept = r.set.count_upto(row.N);
      double z0 = std::abs(static_cast<double>(kept) - row.sigma_mass);
      CHECK(z0 <= row.max_abs_Z + 1e-9);
      // normalized form of the same statement
      CHECK(std::abs(kept / row.sigma_mass - 1.0) <=
            row.ratio * std::sqrt(std::log(static_cast<double>(row.N)) / row.sigma_mass) + 1e-12);
    }
  }
}

TEST_CASE("thinning is deterministic given the seed") {
  ThinningConfig cfg;
  cfg.seed = 7;
  cfg.checkpoints = {2'000};
  ThinResult a = thin(constant_sigma(0.5), cfg);
  ThinResult b = thin(constant_sigma(0.5), cfg);
  CHECK(a.set.elements_upto(2'000) == b.set.elements_upto(2'000));
  CHECK(a.certificate.rows[0].max_abs_Z == b.certificate.rows[0].max_abs_Z);
  cfg.seed = 8;
  ThinResult c = thin(constant_sigma(0.5), cfg);
  CHECK(a.set.elements_upto(2'000) != c.set.elements_upto(2'000));
}

TEST_CASE("grid stability: doubling the multiplier moves the max < 5%") {
  ThinningConfig cfg;
  cfg.seed = 42;
  cfg.checkpoints = {100'000};
  ThinResult g10 = thin(constant_sigma(0.5), cfg);
  cfg.grid_multiplier = 20;
  ThinResult g20 = thin(constant_sigma(0.5), cfg);
  double a = g10.certificate.rows[0].max_abs_Z;
  double b = g20.certificate.rows[0].max_abs_Z;
  CHECK(std::abs(a - b) / b < 0.05);
}

TEST_CASE("bernstein bound values") {
  CHECK(bernstein_bound(100, 25.0, 20.0) == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(bernstein_bound(100, 25.0, 1e-9) == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(bernstein_bound(100, 0.0, 3.0) == doctest::Approx(4.0 * std::exp(-1.0)).epsilon(1e-12));
  CHECK_THROWS(bernstein_bound(1, 1.0, 0.0));
  CHECK_THROWS(bernstein_bound(1, -1.0, 1.0));
}

TEST_CASE("set from a trivial bounded weight is the base set") {
  Weight w = constant_sigma(1.0);
  ThinningConfig cfg;
  cfg.seed = 1;
  BoundedWeightSetReport rep = set_from_bounded_weight(w, kGolden, cfg, 10'000, 2);
  CHECK(rep.thin_result.set.count_upto(10'000) == 10'000);
  for (const auto& row : rep.probes) CHECK(row.deviation < 1e-12);
}

TEST_CASE("half-weight thinning matches the certificate rate at beta = 0") {
  Weight w = constant_sigma(0.5);
  ThinningConfig cfg;
  cfg.seed = 42;
  cfg.checkpoints = {1'000, 10'000, 100'000};
  ThinResult r = thin(w, cfg);
  for (const auto& row : r.certificate.rows) {
    double dens = static_cast<double>(r.set.count_upto(row.N)) / static_cast<double>(row.N);
    double limit = 13.0 * std::sqrt(std::log(static_cast<double>(row.N)) * row.N * 0.5) /
                   static_cast<double>(row.N);
    CHECK(std::abs(dens - 0.5) <= limit);
  }
}

TEST_CASE("two independent thinnings are close in variation") {
  Weight sigma = constant_sigma(0.5);
  ThinningConfig cfg;
  cfg.seed = 1;
  ThinResult a = thin(sigma, cfg);
  cfg.seed = 2;
  ThinResult b = thin(sigma, cfg);
  const uint64_t N = 1'000'000;
  EmpiricalMeasure ma = set_measure(a.set, kGolden, N);
  EmpiricalMeasure mb = set_measure(b.set, kGolden, N);
  CHECK(variation_lower_bound(ma, mb, default_test_family()) <= 0.05);
}
