#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rotlab/density.hpp"
#include "rotlab/sequences.hpp"
#include "rotlab/torus.hpp"

namespace rotlab {

// Position-indexed weight values on a base set: value(n, r_n) with n the
// 1-based position of the element r_n.
using WeightFn = std::function<double(uint64_t pos, uint64_t elem)>;

// Windowed Fourier data of an empirical transform measure:
// coeff(p) = normalized average of e(p * s * alpha) over the carrier.
struct Spectrum {
  std::string carrier;
  TorusPoint alpha;
  uint64_t horizon = 0;
  int64_t pmax = 0;
  std::vector<std::complex<double>> coeffs;  // index p + pmax

  std::complex<double> at(int64_t p) const { return coeffs[static_cast<size_t>(p + pmax)]; }
};

// A_{s in S(N)} e(p s beta), S(N) = S cap [N].
std::complex<double> weyl_average_set(const IndexSet& S, uint64_t N, TorusPoint beta, int64_t p);

// A^w_{n in [N]} e(p r_n beta): first N positions of the base set.
std::complex<double> weyl_average_weight(const IndexSet& base, const WeightFn& w, uint64_t N,
                                         TorusPoint beta, int64_t p);

// All coefficients |p| <= pmax in one streaming pass over the carrier.
Spectrum spectrum_set(const IndexSet& S, TorusPoint alpha, uint64_t N, int64_t pmax);
Spectrum spectrum_weight(const IndexSet& base, const WeightFn& w, std::string label,
                         TorusPoint alpha, uint64_t N, int64_t pmax);

// Analytic spectra the experiments are verified against.
class TargetSpectrum {
 public:
  enum class Kind { Lebesgue, Density, Atomic, Cantor };

  static TargetSpectrum lebesgue();
  static TargetSpectrum density(DensityFunction rho);       // rho d(lambda)
  static TargetSpectrum atomic(uint32_t q, std::vector<double> masses);  // on T_q
  static TargetSpectrum cantor();                           // uniform on the triadic Cantor set

  // nu(e_p); nu(e_0) is the total mass.
  std::complex<double> coeff(int64_t p) const;
  std::complex<double> normalized_coeff(int64_t p) const { return coeff(p) / coeff(0).real(); }
  Kind kind() const { return kind_; }
  std::string name() const;

 private:
  Kind kind_ = Kind::Lebesgue;
  DensityFunction rho_ = DensityFunction::constant(1.0);
  uint32_t q_ = 1;
  std::vector<double> masses_;
};

// sup over the shared window of |a_hat(p) - b_hat(p)|.
double spectrum_distance(const Spectrum& a, const Spectrum& b);
double spectrum_distance(const Spectrum& a, const TargetSpectrum& b);

// [0,1]-valued triangular bump on the torus: 1 at center, 0 outside
// center +- width/2.
struct Bump {
  TorusPoint center;
  double width;
  double eval(TorusPoint x) const;
};

struct TestFunctionFamily {
  std::vector<Bump> bumps;
  std::string description;
};

// 64 bumps: 32 centers at j/32, widths 1/16 and 1/64.
TestFunctionFamily default_test_family();

// The N-th transform measure of a carrier: streams (point, mass) pairs.
struct EmpiricalMeasure {
  std::string descriptor;
  std::function<void(const std::function<void(TorusPoint, double)>&)> scan;

  double integrate(const Bump& phi) const;
};

EmpiricalMeasure set_measure(const IndexSet& S, TorusPoint alpha, uint64_t N);
EmpiricalMeasure weight_measure(const IndexSet& base, WeightFn w, std::string label,
                                TorusPoint alpha, uint64_t N);

// max over the family of |a(phi) - b(phi)|: a certified lower bound for
// the variation distance.
double variation_lower_bound(const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                             const TestFunctionFamily& family);

}  // namespace rotlab
