#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace rotlab {

// Nonnegative piecewise-linear function on the torus [0,1).  Segments
// are contiguous, [a_i, b_i) with b_i = a_{i+1} and the last b = 1.
// Jumps are allowed between segments.  All the calculus used by the
// checks (integral, Fourier coefficients, L1 distances, mollification,
// truncation) is closed-form.
class DensityFunction {
 public:
  struct Segment {
    double a, b;    // [a, b)
    double va, vb;  // values at a and at b^- (linear in between)
  };

  static DensityFunction constant(double c);
  // Piecewise-constant from (start, value) breakpoints; starts must be
  // sorted, first one 0.
  static DensityFunction step(const std::vector<std::pair<double, double>>& start_value);
  // height on [a,b), 0 elsewhere (a < b within [0,1]).
  static DensityFunction box(double a, double b, double height);
  static DensityFunction from_segments(std::vector<Segment> segs);

  double eval(double x) const;         // right-continuous value
  double eval_left(double x) const;    // limit from below
  double integral() const;
  double sup() const;
  std::complex<double> fourier(int64_t p) const;  // integral of rho * e_p
  // Replace every jump with a linear ramp of total width h (h is capped
  // so ramps cannot collide).
  DensityFunction mollify(double h) const;
  DensityFunction truncate(double level) const;  // min(rho, level)
  DensityFunction scaled(double c) const;
  double l1_distance(const DensityFunction& other) const;

  const std::vector<Segment>& segments() const { return segs_; }

 private:
  std::vector<Segment> segs_;
  size_t find_segment(double x) const;
};

}  // namespace rotlab
