#pragma once

#include <complex>

namespace rotlab {

// Kahan compensated accumulator.  Keeps absolute error of long sums
// (~1e6 terms and up) far below the tolerances used by the checks.
class Kahan {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class KahanComplex {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  Kahan re_, im_;
};

}  // namespace rotlab
