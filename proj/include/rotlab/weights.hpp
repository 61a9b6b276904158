#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotlab/density.hpp"
#include "rotlab/empirical.hpp"
#include "rotlab/paste.hpp"
#include "rotlab/sequences.hpp"
#include "rotlab/torus.hpp"

namespace rotlab {

// Nonnegative sequence attached to a base set, indexed by position.
struct Weight {
  IndexSet base;
  WeightFn value;
  std::optional<double> sup_bound;
  std::string label;

  // A_[N] w over the first N positions.
  double mean_upto(uint64_t positions) const;
};

// w(n) = rho(r_n alpha); bound = sup rho.
Weight weight_from_density(const DensityFunction& rho, const IndexSet& R, TorusPoint alpha);

struct PastedWeight {
  Weight weight;
  PasteSchedule schedule;
};

// Lemma-style pasting of a Cauchy family of weights on a common base;
// the pasted weight equals member k on (N_k, N_{k+1}] and its bound is
// sup_k of the member bounds.
PastedWeight paste_weights(const IndexSet& base, const std::vector<Weight>& family,
                           const std::vector<double>& eps, uint64_t horizon);

struct DensityRepresentReport {
  PastedWeight pasted;
  std::vector<DensityFunction> approximants;
  double target_mass;  // mu_alpha(rho), with the base limit measure Lebesgue
  std::vector<uint64_t> trace_checkpoints;
  std::vector<double> mean_trace;
  Spectrum spectrum;
  double spectrum_error;  // against the normalized rho-lambda coefficients
};

// Prop-6 pipeline: trapezoid mollifications rho_k (ramp 2^-k, truncation
// level doubling per block for large densities) pasted into one weight.
DensityRepresentReport represent_density(const DensityFunction& rho, const IndexSet& R,
                                         TorusPoint alpha, uint64_t horizon, int64_t pmax);

// q_N(j) = (sigma(j) - sigma(j+1)) * w([j]) of the summation-by-parts
// identity; sigma must be nonincreasing.
struct QMeasure {
  std::vector<double> masses;
  double total;
};
QMeasure q_measure(const std::vector<double>& sigma, const std::vector<double>& w);

struct SbpResult {
  std::complex<double> direct;     // A^{v_N} x with v_N = sigma * w
  std::complex<double> via_q;      // A^{q_N} of prefix w-averages
  double relative_difference;
  double v_mass;
  double q_mass;
};

// Evaluates both routes of the identity (they agree up to rounding).
SbpResult sbp_average(const std::vector<double>& w, const std::vector<double>& sigma,
                      const std::vector<std::complex<double>>& x);

struct FlattenRecord {
  size_t block;
  uint64_t block_start;
  double normalizer;     // max(1, max_{j<=k} sup_j)
  double criterion_lhs;  // N / max_{j<=k} sup_j
  double criterion_rhs;  // k * log(r_N)
  bool ok;
};

struct FlattenedWeight {
  Weight weight;  // v = sigma * w, bounded by 1
  std::vector<FlattenRecord> records;
};

// Blockwise-decreasing renormalization v = sigma * w of a pasted weight;
// checks the sublacunarity growth criterion at every block start and
// throws if a block fails.
FlattenedWeight flatten(const PastedWeight& w, uint64_t horizon);

}  // namespace rotlab
