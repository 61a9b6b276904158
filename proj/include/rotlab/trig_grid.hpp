#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace rotlab {

// Evaluates Z(beta_j) = sum_r c[r] e(r * j / M) on the uniform grid
// beta_j = j/M, j = 0..M-1, and returns max_j |Z(beta_j)|.  c is indexed
// by the integer r (entry 0 unused).  FFT-backed; exact at the grid
// nodes up to rounding.
double grid_max_abs(const std::vector<std::complex<double>>& c, uint64_t grid_size);

// Direct-summation evaluation of the same maximum (the oracle the FFT
// route is checked against; O(N * M)).
double grid_max_abs_naive(const std::vector<std::complex<double>>& c, uint64_t grid_size);

}  // namespace rotlab
