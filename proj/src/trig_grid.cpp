#include "rotlab/trig_grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotlab {

double grid_max_abs(const std::vector<std::complex<double>>& c, uint64_t grid_size) {
  if (grid_size == 0) throw std::invalid_argument("grid_max_abs: empty grid");
  const size_t M = static_cast<size_t>(grid_size);
  fftw_complex* buf = fftw_alloc_complex(M);
  if (!buf) throw std::bad_alloc();
  for (size_t j = 0; j < M; ++j) buf[j][0] = buf[j][1] = 0.0;
  for (size_t r = 1; r < c.size(); ++r) {
    buf[r % M][0] += c[r].real();
    buf[r % M][1] += c[r].imag();
  }
  // positive-exponent transform: out[j] = sum_k buf[k] e(+ k j / M)
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(M), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  double best = 0.0;
  for (size_t j = 0; j < M; ++j) {
    double a = std::hypot(buf[j][0], buf[j][1]);
    if (a > best) best = a;
  }
  fftw_free(buf);
  return best;
}

double grid_max_abs_naive(const std::vector<std::complex<double>>& c, uint64_t grid_size) {
  const uint64_t M = grid_size;
  double best = 0.0;
  for (uint64_t j = 0; j < M; ++j) {
    std::complex<double> z{0.0, 0.0};
    for (uint64_t r = 1; r < c.size(); ++r) {
      if (c[r] == std::complex<double>{0.0, 0.0}) continue;
      // angle r*j/M reduced exactly in integers
      double ang = 2.0 * std::numbers::pi *
                   (static_cast<double>((static_cast<unsigned __int128>(r) * j) % M) /
                    static_cast<double>(M));
      z += c[r] * std::complex<double>{std::cos(ang), std::sin(ang)};
    }
    best = std::max(best, std::abs(z));
  }
  return best;
}

}  // namespace rotlab
