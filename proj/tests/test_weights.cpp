#include "doctest.h"
#include "rotlab/accum.hpp"
#include "rotlab/rng.hpp"
#include "rotlab/weights.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace rotlab;

namespace {

DensityFunction half_box() { return DensityFunction::box(0.0, 0.5, 2.0); }

std::vector<double> random_nonincreasing(uint64_t seed, size_t n) {
  std::vector<double> s(n);
  double v = 1.0 + keyed_uniform(seed, 0);
  for (size_t j = 0; j < n; ++j) {
    s[j] = v;
    v -= keyed_uniform(seed, j + 1) * v / static_cast<double>(n - j);
  }
  return s;
}

}  // namespace

TEST_CASE("weight from constant density is constant") {
  Weight w = weight_from_density(DensityFunction::constant(1.0), make_naturals(), kGolden);
  CHECK(w.value(5, 5) == 1.0);
  CHECK(w.mean_upto(1000) == 1.0);
  CHECK(*w.sup_bound == 1.0);
}

TEST_CASE("weight mean from half box converges to the density mass") {
  Weight w = weight_from_density(half_box(), make_naturals(), kGolden);
  CHECK(std::abs(w.mean_upto(1'000'000) - 1.0) < 5e-3);
}

TEST_CASE("tent weight spectrum matches the tent coefficients") {
  DensityFunction tent = DensityFunction::from_segments(
      {{0.0, 0.5, 0.0, 2.0}, {0.5, 1.0, 2.0, 0.0}});
  Weight w = weight_from_density(tent, make_naturals(), kGolden);
  Spectrum sp = spectrum_weight(w.base, w.value, w.label, kGolden, 1'000'000, 4);
  double worst = 0.0;
  for (int64_t p = -4; p <= 4; ++p) {
    worst = std::max(worst, std::abs(sp.at(p) - tent.fourier(p)));
  }
  CHECK(worst < 2e-2);
}

TEST_CASE("pasting a constant weight family returns the member") {
  IndexSet R = make_naturals();
  std::vector<Weight> fam(3, weight_from_density(half_box(), R, kGolden));
  PastedWeight p = paste_weights(R, fam, {0.0, 0.0, 0.0}, 10'000);
  CHECK(p.schedule.breakpoints.size() == 1);
  CHECK(p.weight.value(7, 7) == fam[0].value(7, 7));
}

TEST_CASE("pasted mollified family: mean near the density mass, bound kept") {
  IndexSet R = make_naturals();
  DensityFunction rho = half_box();
  std::vector<Weight> fam;
  std::vector<double> dist;
  for (int k = 1; k <= 10; ++k) {
    DensityFunction rk = rho.mollify(std::ldexp(1.0, -k));
    fam.push_back(weight_from_density(rk, R, kGolden));
    dist.push_back(rk.l1_distance(rho));
  }
  std::vector<double> eps;
  for (int k = 0; k < 10; ++k) eps.push_back(2.0 * (dist[k] + dist.back()) + 1e-12);
  PastedWeight p = paste_weights(R, fam, eps, 1'000'000);
  CHECK(p.schedule.breakpoints.size() >= 3);
  CHECK(std::abs(p.weight.mean_upto(1'000'000) - 1.0) < 1e-2);
  CHECK(*p.weight.sup_bound <= 2.0);

  SUBCASE("flatten halves the two-bounded weight and keeps the spectrum") {
    FlattenedWeight v = flatten(p, 1'000'000);
    // v <= 1 pointwise on a sample prefix
    uint64_t pos = 0;
    auto cur = v.weight.base.cursor();
    while (pos < 10'000) {
      auto r = cur->next();
      ++pos;
      double val = v.weight.value(pos, *r);
      REQUIRE(val <= 1.0 + 1e-15);
      REQUIRE(val >= 0.0);
    }
    Spectrum sw = spectrum_weight(R, p.weight.value, "w", kGolden, 200'000, 3);
    Spectrum sv = spectrum_weight(R, v.weight.value, "v", kGolden, 200'000, 3);
    CHECK(spectrum_distance(sw, sv) < 2e-2);
  }
}

TEST_CASE("uniformly bounded family pastes within the bound") {
  IndexSet R = make_naturals();
  std::vector<Weight> fam;
  for (int k = 1; k <= 3; ++k) {
    Weight w;
    w.base = R;
    w.label = "w" + std::to_string(k);
    w.sup_bound = 3.0;
    double c = static_cast<double>(k);
    w.value = [c](uint64_t, uint64_t) { return 3.0 - 1.0 / c; };
    fam.push_back(w);
  }
  PastedWeight p = paste_weights(R, fam, {2.0, 1.0, 0.7}, 100'000);
  CHECK(*p.weight.sup_bound <= 3.0);
}

TEST_CASE("represent_density on the half box") {
  DensityRepresentReport rep = represent_density(half_box(), make_naturals(), kGolden,
                                                 1'000'000, 2);
  CHECK(std::abs(rep.mean_trace.back() - 1.0) < 1e-2);
  // mu_hat(1) of the normalized measure is 2i/pi
  std::complex<double> want{0.0, 2.0 / std::numbers::pi};
  CHECK(std::abs(rep.spectrum.at(1) - want) < 2e-2);
  CHECK(rep.spectrum_error < 2e-2);
}

TEST_CASE("represent_density with a truncated spike") {
  // piecewise-linear stand-in for min(x^{-1/2}, 40), normalized
  std::vector<DensityFunction::Segment> segs;
  const int cells = 2048;
  auto spike = [](double x) { return std::min(1.0 / std::sqrt(std::max(x, 1e-12)), 40.0); };
  for (int i = 0; i < cells; ++i) {
    double a = static_cast<double>(i) / cells, b = static_cast<double>(i + 1) / cells;
    segs.push_back({a, b, spike(a == 0.0 ? 1.0 / (40.0 * 40.0) / 4 : a), spike(b)});
  }
  // make it exactly continuous at 0 wrap: value at 0 equals the cap
  segs.front().va = 40.0;
  DensityFunction rho_raw = DensityFunction::from_segments(segs);
  DensityFunction rho = rho_raw.scaled(1.0 / rho_raw.integral());
  DensityRepresentReport rep = represent_density(rho, make_naturals(), kGolden, 1'000'000, 1);
  CHECK(std::abs(rep.mean_trace.back() - 1.0) < 2e-2);
}

TEST_CASE("represent_density rejects zero mass") {
  CHECK_THROWS(represent_density(DensityFunction::constant(0.0), make_naturals(), kGolden,
                                 1000, 1));
}

TEST_CASE("summation by parts: trivial sigma") {
  const size_t N = 1000;
  std::vector<double> w(N), sigma(N, 1.0);
  std::vector<std::complex<double>> x(N);
  for (size_t j = 0; j < N; ++j) {
    w[j] = 0.5 + keyed_uniform(10, j);
    x[j] = {keyed_uniform(11, j), keyed_uniform(12, j)};
  }
  SbpResult r = sbp_average(w, sigma, x);
  // sigma == 1 on [N]: both sides equal the plain w-average
  KahanComplex num;
  Kahan den;
  for (size_t j = 0; j < N; ++j) {
    num.add(w[j] * x[j]);
    den.add(w[j]);
  }
  std::complex<double> plain = num.value() / den.value();
  CHECK(std::abs(r.direct - plain) < 1e-14);
  CHECK(std::abs(r.via_q - plain) < 1e-12);
}

TEST_CASE("summation by parts: random instances agree to 1e-12") {
  for (uint64_t inst = 0; inst < 20; ++inst) {
    const size_t N = 1000;
    std::vector<double> w(N);
    std::vector<double> sigma = random_nonincreasing(100 + inst, N);
    std::vector<std::complex<double>> x(N);
    for (size_t j = 0; j < N; ++j) {
      w[j] = 0.1 + keyed_uniform(200 + inst, j);
      double ang = 2.0 * std::numbers::pi * keyed_uniform(300 + inst, j);
      x[j] = {std::cos(ang), std::sin(ang)};
    }
    SbpResult r = sbp_average(w, sigma, x);
    CHECK(r.relative_difference <= 1e-12);
    CHECK(std::abs(r.q_mass - r.v_mass) <= 1e-12 * r.v_mass);
  }
}

TEST_CASE("summation by parts: constant x certifies the mass identity") {
  const size_t N = 500;
  std::vector<double> w(N, 1.0);
  std::vector<double> sigma = random_nonincreasing(7, N);
  std::vector<std::complex<double>> ones(N, {1.0, 0.0});
  SbpResult r = sbp_average(w, sigma, ones);
  CHECK(std::abs(r.direct - 1.0) < 1e-13);
  CHECK(std::abs(r.via_q - 1.0) < 1e-13);
  CHECK(std::abs(r.q_mass - r.v_mass) <= 1e-12 * r.v_mass);
}

TEST_CASE("q measure nonnegativity for nonincreasing sigma") {
  for (uint64_t inst = 0; inst < 50; ++inst) {
    const size_t N = 200;
    std::vector<double> sigma = random_nonincreasing(400 + inst, N);
    std::vector<double> w(N);
    for (size_t j = 0; j < N; ++j) w[j] = keyed_uniform(500 + inst, j);
    QMeasure q = q_measure(sigma, w);
    for (double m : q.masses) REQUIRE(m >= 0.0);
  }
  CHECK_THROWS(q_measure({1.0, 2.0}, {1.0, 1.0}));
}

TEST_CASE("quantitative sbp bound on synthetic convergent input") {
  // x_n = y + c/n converges; the deviation of the sigma-weighted average
  // obeys eps + max_{j<=K} |A_[j] x - y| * v([K]) / v(N)
  const size_t N = 5000;
  const std::complex<double> y{0.3, -0.2};
  std::vector<double> w(N), sigma = random_nonincreasing(900, N);
  std::vector<std::complex<double>> x(N);
  for (size_t j = 0; j < N; ++j) {
    w[j] = 0.5 + keyed_uniform(901, j);
    x[j] = y + std::complex<double>{1.5, 0.7} / static_cast<double>(j + 1);
  }
  // prefix w-averages and their deviations
  std::vector<double> dev(N);
  KahanComplex num;
  Kahan den;
  for (size_t j = 0; j < N; ++j) {
    num.add(w[j] * x[j]);
    den.add(w[j]);
    dev[j] = std::abs(num.value() / den.value() - y);
  }
  SbpResult r = sbp_average(w, sigma, x);
  for (size_t K : {size_t{50}, size_t{500}, size_t{2000}}) {
    double eps = 0.0;
    for (size_t j = K; j < N; ++j) eps = std::max(eps, dev[j]);
    double maxK = 0.0;
    Kahan vK, vAll;
    for (size_t j = 0; j < N; ++j) {
      if (j < K) {
        maxK = std::max(maxK, dev[j]);
        vK.add(sigma[j] * w[j]);
      }
      vAll.add(sigma[j] * w[j]);
    }
    double bound = eps + maxK * vK.value() / vAll.value();
    CHECK(std::abs(r.direct - y) <= bound + 1e-12);
  }
}

TEST_CASE("flatten: two-block schedule with bounds 1 then 4") {
  IndexSet R = make_naturals();
  PastedWeight pw;
  pw.schedule.breakpoints = {1, 100};
  pw.schedule.eps = {0.5, 0.25};
  pw.schedule.block_sup = {1.0, 4.0};
  pw.schedule.horizon = 10'000;
  pw.weight.base = R;
  pw.weight.label = "two-block";
  pw.weight.sup_bound = 4.0;
  pw.weight.value = [](uint64_t pos, uint64_t) { return pos <= 100 ? 1.0 : 4.0; };
  FlattenedWeight v = flatten(pw, 10'000);
  CHECK(v.weight.value(50, 50) == 1.0);    // normalizer max(1, 1) = 1
  CHECK(v.weight.value(200, 200) == 1.0);  // 4 / max(1, 4)
  CHECK(v.records.size() == 2);
  for (const auto& rec : v.records) CHECK(rec.ok);
}

TEST_CASE("flatten: weight bounded by 1 is unchanged") {
  IndexSet R = make_naturals();
  PastedWeight pw;
  pw.schedule.breakpoints = {1};
  pw.schedule.eps = {0.5};
  pw.schedule.block_sup = {0.5};
  pw.schedule.horizon = 1000;
  pw.weight.base = R;
  pw.weight.label = "small";
  pw.weight.sup_bound = 0.5;
  pw.weight.value = [](uint64_t, uint64_t) { return 0.5; };
  FlattenedWeight v = flatten(pw, 1000);
  CHECK(v.weight.value(10, 10) == 0.5);  // normalizer clamps at 1
}
