#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "rotlab/empirical.hpp"
#include "rotlab/sequences.hpp"
#include "rotlab/torus.hpp"
#include "rotlab/weights.hpp"

namespace rotlab {

inline constexpr uint64_t kGridCap = 10'000'000ull;

struct ThinningConfig {
  uint64_t seed = 0;
  uint32_t grid_multiplier = 10;  // grid size g*N, capped at kGridCap
  std::vector<uint64_t> checkpoints;
  double c = 13.0;  // certificate constant
  double b = 1.0;   // sublacunarity constant, exposed with c
};

struct DeviationRow {
  uint64_t N;
  uint64_t grid_size;
  bool grid_capped;
  double max_abs_Z;      // max over the grid of |Z_N(beta)|
  double sigma_mass;     // sigma(R(N))
  double normalizer;     // sqrt(log N * sigma(R(N)))
  double ratio;          // max_abs_Z / normalizer
};

struct DeviationCertificate {
  uint64_t seed = 0;
  uint32_t grid_multiplier = 10;
  std::vector<DeviationRow> rows;
  double max_ratio() const;
};

// Random selection keeping element r with probability sigma(r) (keyed by
// (seed, r), so the draw is order-independent).  The certificate bounds
// sup over the beta-grid of |sum_{r<=N} (X_r - sigma(r)) e(r beta)|
// against the sqrt(log N * sigma(R(N))) normalizer at each checkpoint.
struct ThinResult {
  IndexSet set;
  DeviationCertificate certificate;
};
ThinResult thin(const Weight& sigma, const ThinningConfig& config);

// 4 max(exp(-t^2 / (8 V)), exp(-t/3)); the V = 0 branch is the limit 0.
double bernstein_bound(uint64_t K, double variance_sum, double t);

struct ProbeRow {
  std::string beta_label;
  TorusPoint beta;
  double deviation;  // |A_{s in S(N)} e(s beta) - A^w_{r in R(N)} e(r beta)|
  double rate;       // sqrt(sup w * log N / w(R(N)))
  double ratio;
};

struct BoundedWeightSetReport {
  ThinResult thin_result;
  std::vector<ProbeRow> probes;
  double max_ratio;
};

// Prop-8 pipeline: normalize w by its bound, thin, and compare set
// averages against w-averages over the probe frequencies p*alpha
// (|p| <= pmax) plus keyed random probes.
BoundedWeightSetReport set_from_bounded_weight(const Weight& w, TorusPoint alpha,
                                               const ThinningConfig& config, uint64_t N,
                                               int64_t pmax);

}  // namespace rotlab
