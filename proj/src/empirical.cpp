#include "rotlab/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "rotlab/accum.hpp"

namespace rotlab {

namespace {

// Streams the orbit angles of a carrier into fixed-size blocks and adds
// each block to every coefficient accumulator.  Splitting the p-window
// over threads keeps the per-p summation order identical to the
// sequential pass, so results are bit-identical either way.
class SpectrumAccumulator {
 public:
  explicit SpectrumAccumulator(int64_t pmax) : pmax_(pmax), acc_(2 * pmax + 1), mass_acc_() {}

  void feed(TorusPoint theta, double mass) {
    thetas_.push_back(theta.frac);
    masses_.push_back(mass);
    mass_acc_.add(mass);
    if (thetas_.size() >= kBlock) flush();
  }

  std::vector<std::complex<double>> finish() {
    flush();
    const double total = mass_acc_.value();
    if (total <= 0.0) throw std::runtime_error("spectrum: empty carrier or zero mass");
    std::vector<std::complex<double>> out(acc_.size());
    for (size_t i = 0; i < acc_.size(); ++i) out[i] = acc_[i].value() / total;
    return out;
  }

  double total_mass() const { return mass_acc_.value(); }

 private:
  static constexpr size_t kBlock = 1 << 14;

  void flush() {
    if (thetas_.empty()) return;
    const int64_t window = 2 * pmax_ + 1;
    unsigned nthreads = std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>((window + 63) / 64) + 1);
    auto work = [&](int64_t plo, int64_t phi) {
      for (int64_t p = plo; p < phi; ++p) {
        KahanComplex& acc = acc_[static_cast<size_t>(p + pmax_)];
        for (size_t i = 0; i < thetas_.size(); ++i) {
          acc.add(masses_[i] * character(p, TorusPoint{thetas_[i]}));
        }
      }
    };
    if (nthreads <= 1 || window < 8) {
      work(-pmax_, pmax_ + 1);
    } else {
      std::vector<std::thread> pool;
      int64_t chunk = (window + nthreads - 1) / nthreads;
      for (unsigned t = 0; t < nthreads; ++t) {
        int64_t plo = -pmax_ + static_cast<int64_t>(t) * chunk;
        int64_t phi = std::min<int64_t>(plo + chunk, pmax_ + 1);
        if (plo >= phi) break;
        pool.emplace_back(work, plo, phi);
      }
      for (auto& th : pool) th.join();
    }
    thetas_.clear();
    masses_.clear();
  }

  int64_t pmax_;
  std::vector<KahanComplex> acc_;
  Kahan mass_acc_;
  std::vector<uint64_t> thetas_;
  std::vector<double> masses_;
};

}  // namespace

std::complex<double> weyl_average_set(const IndexSet& S, uint64_t N, TorusPoint beta, int64_t p) {
  KahanComplex acc;
  uint64_t count = 0;
  S.for_each_upto(N, [&](uint64_t s) {
    acc.add(character(p, orbit_point(s, beta)));
    ++count;
  });
  if (count == 0) throw std::runtime_error("weyl_average: empty prefix of " + S.descriptor());
  return acc.value() / static_cast<double>(count);
}

std::complex<double> weyl_average_weight(const IndexSet& base, const WeightFn& w, uint64_t N,
                                         TorusPoint beta, int64_t p) {
  KahanComplex acc;
  Kahan mass;
  uint64_t pos = 0;
  auto cur = base.cursor();
  while (pos < N) {
    auto r = cur->next();
    if (!r) break;
    ++pos;
    double wn = w(pos, *r);
    if (wn < 0.0) throw std::runtime_error("weyl_average: negative weight");
    if (wn != 0.0) {
      acc.add(wn * character(p, orbit_point(*r, beta)));
      mass.add(wn);
    }
  }
  if (pos == 0 || mass.value() <= 0.0)
    throw std::runtime_error("weyl_average: zero weight mass on prefix");
  return acc.value() / mass.value();
}

Spectrum spectrum_set(const IndexSet& S, TorusPoint alpha, uint64_t N, int64_t pmax) {
  SpectrumAccumulator acc(pmax);
  S.for_each_upto(N, [&](uint64_t s) { acc.feed(orbit_point(s, alpha), 1.0); });
  Spectrum sp;
  sp.carrier = S.descriptor();
  sp.alpha = alpha;
  sp.horizon = N;
  sp.pmax = pmax;
  sp.coeffs = acc.finish();
  return sp;
}

Spectrum spectrum_weight(const IndexSet& base, const WeightFn& w, std::string label,
                         TorusPoint alpha, uint64_t N, int64_t pmax) {
  SpectrumAccumulator acc(pmax);
  uint64_t pos = 0;
  auto cur = base.cursor();
  while (pos < N) {
    auto r = cur->next();
    if (!r) break;
    ++pos;
    double wn = w(pos, *r);
    if (wn < 0.0) throw std::runtime_error("spectrum: negative weight");
    acc.feed(orbit_point(*r, alpha), wn);
  }
  Spectrum sp;
  sp.carrier = std::move(label);
  sp.alpha = alpha;
  sp.horizon = N;
  sp.pmax = pmax;
  sp.coeffs = acc.finish();
  return sp;
}

TargetSpectrum TargetSpectrum::lebesgue() { return TargetSpectrum{}; }

TargetSpectrum TargetSpectrum::density(DensityFunction rho) {
  TargetSpectrum t;
  t.kind_ = Kind::Density;
  t.rho_ = std::move(rho);
  return t;
}

TargetSpectrum TargetSpectrum::atomic(uint32_t q, std::vector<double> masses) {
  if (q == 0 || masses.size() != q) throw std::invalid_argument("atomic target: bad q");
  TargetSpectrum t;
  t.kind_ = Kind::Atomic;
  t.q_ = q;
  t.masses_ = std::move(masses);
  return t;
}

TargetSpectrum TargetSpectrum::cantor() {
  TargetSpectrum t;
  t.kind_ = Kind::Cantor;
  return t;
}

std::complex<double> TargetSpectrum::coeff(int64_t p) const {
  switch (kind_) {
    case Kind::Lebesgue:
      return p == 0 ? std::complex<double>{1.0, 0.0} : std::complex<double>{0.0, 0.0};
    case Kind::Density:
      return rho_.fourier(p);
    case Kind::Atomic: {
      std::complex<double> z{0.0, 0.0};
      for (uint32_t j = 0; j < q_; ++j) {
        double ang = 2.0 * std::numbers::pi * static_cast<double>(p) * j / q_;
        z += masses_[j] * std::complex<double>{std::cos(ang), std::sin(ang)};
      }
      return z;
    }
    case Kind::Cantor: {
      // self-similarity: nu_hat(xi) = (1/2)(1 + e(2 xi / 3)) nu_hat(xi/3),
      // unwound into the convergent product over xi = p / 3^j.
      std::complex<double> prod{1.0, 0.0};
      long double xi = static_cast<long double>(p);
      for (int j = 0; j < 200; ++j) {
        xi /= 3.0L;
        long double ang = 4.0L * std::numbers::pi_v<long double> * xi;
        prod *= 0.5 * std::complex<double>{1.0 + static_cast<double>(std::cos(ang)),
                                           static_cast<double>(std::sin(ang))};
        if (std::abs(ang) < 1e-18L) break;
      }
      return prod;
    }
  }
  return {};
}

std::string TargetSpectrum::name() const {
  switch (kind_) {
    case Kind::Lebesgue: return "lebesgue";
    case Kind::Density: return "density";
    case Kind::Atomic: return "atomic(q=" + std::to_string(q_) + ")";
    case Kind::Cantor: return "cantor";
  }
  return {};
}

double spectrum_distance(const Spectrum& a, const Spectrum& b) {
  if (a.pmax < 0 || b.pmax < 0) throw std::invalid_argument("spectrum_distance: empty window");
  int64_t w = std::min(a.pmax, b.pmax);
  double d = 0.0;
  for (int64_t p = -w; p <= w; ++p) d = std::max(d, std::abs(a.at(p) - b.at(p)));
  return d;
}

double spectrum_distance(const Spectrum& a, const TargetSpectrum& b) {
  double d = 0.0;
  for (int64_t p = -a.pmax; p <= a.pmax; ++p)
    d = std::max(d, std::abs(a.at(p) - b.normalized_coeff(p)));
  return d;
}

double Bump::eval(TorusPoint x) const {
  // circular distance |x - center|
  uint64_t d1 = x.frac - center.frac;
  uint64_t d2 = center.frac - x.frac;
  double dist = std::ldexp(static_cast<double>(std::min(d1, d2)), -64);
  double half = width / 2.0;
  return dist >= half ? 0.0 : 1.0 - dist / half;
}

TestFunctionFamily default_test_family() {
  TestFunctionFamily fam;
  fam.description = "triangular bumps, centers j/32 (j=0..31), widths 1/16 and 1/64";
  for (int j = 0; j < 32; ++j) {
    TorusPoint c{static_cast<uint64_t>(j) << 59};  // j/32 exactly
    fam.bumps.push_back({c, 1.0 / 16.0});
    fam.bumps.push_back({c, 1.0 / 64.0});
  }
  return fam;
}

double EmpiricalMeasure::integrate(const Bump& phi) const {
  Kahan num, den;
  scan([&](TorusPoint x, double mass) {
    den.add(mass);
    if (mass != 0.0) num.add(mass * phi.eval(x));
  });
  if (den.value() <= 0.0) throw std::runtime_error("EmpiricalMeasure: zero mass");
  return num.value() / den.value();
}

EmpiricalMeasure set_measure(const IndexSet& S, TorusPoint alpha, uint64_t N) {
  EmpiricalMeasure m;
  m.descriptor = S.descriptor() + "@N=" + std::to_string(N);
  IndexSet copy = S;
  m.scan = [copy, alpha, N](const std::function<void(TorusPoint, double)>& f) {
    copy.for_each_upto(N, [&](uint64_t s) { f(orbit_point(s, alpha), 1.0); });
  };
  return m;
}

EmpiricalMeasure weight_measure(const IndexSet& base, WeightFn w, std::string label,
                                TorusPoint alpha, uint64_t N) {
  EmpiricalMeasure m;
  m.descriptor = std::move(label);
  m.scan = [base, w, alpha, N](const std::function<void(TorusPoint, double)>& f) {
    uint64_t pos = 0;
    auto cur = base.cursor();
    while (pos < N) {
      auto r = cur->next();
      if (!r) break;
      ++pos;
      f(orbit_point(*r, alpha), w(pos, *r));
    }
  };
  return m;
}

double variation_lower_bound(const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                             const TestFunctionFamily& family) {
  if (family.bumps.empty()) throw std::invalid_argument("variation_lower_bound: empty family");
  double best = 0.0;
  for (const Bump& phi : family.bumps) {
    best = std::max(best, std::abs(a.integrate(phi) - b.integrate(phi)));
  }
  return best;
}

}  // namespace rotlab
