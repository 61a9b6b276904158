#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "rotlab/empirical.hpp"
#include "rotlab/paste.hpp"
#include "rotlab/regions.hpp"
#include "rotlab/sequences.hpp"
#include "rotlab/torus.hpp"

namespace rotlab {

// S = {r in R : r alpha in B}; membership is an exact fixed-point
// interval test, so the set is bit-reproducible.
IndexSet visit_set(const IndexSet& R, TorusPoint alpha, const TorusRegion& B);

struct VisitSpectrumRow {
  int64_t p;
  std::complex<double> empirical;
  std::complex<double> target;  // lambda(1_B e_p) / lambda(B)
  double error;
};

struct VisitSpectrumReport {
  std::vector<VisitSpectrumRow> rows;
  double max_error;
  double density;         // #S(N) / #R(N)
  double target_density;  // lambda(B)
};

// Empirical window of the visit set against the normalized coefficients
// of the region.
VisitSpectrumReport visit_spectrum_check(const IndexSet& R, TorusPoint alpha,
                                         const TorusRegion& B, uint64_t N, int64_t pmax);

// A family of sets to paste: member(k) for k = 1..size (size may be
// unbounded), with tolerances eps_k = 2 sup_{l>=k} ||1_{S_k}-1_{S_l}||_1
// known analytically by the caller.
struct SetFamily {
  std::function<IndexSet(size_t k)> member;  // 1-based
  std::function<double(size_t k)> eps;
  size_t count = SIZE_MAX;
};

struct PastedSet {
  IndexSet set;  // materialized on [1, H]
  PasteSchedule schedule;
};

// Lemma-style pasting: the result equals member k on (N_k, N_{k+1}] with
// each breakpoint certified on [N_k, H].
PastedSet paste_sets(const SetFamily& family, uint64_t horizon);

// Eq. 50-style verification ratios (see paste_eq50_ratios).
std::vector<double> verify_pasted_set(const SetFamily& family, const PasteSchedule& schedule);

// Stream of pairwise disjoint intervals with summable lengths whose
// union is the represented region.
struct IntervalStream {
  std::function<std::pair<TorusPoint, TorusPoint>(size_t j)> interval;  // 1-based
  size_t count;        // number of intervals made available
  double tail_bound;   // measure of the un-streamed remainder (>= 0)
};

struct RepresentReport {
  PastedSet pasted;
  std::vector<uint64_t> trace_checkpoints;
  std::vector<double> density_trace;     // A_[N] 1_S
  double target_measure;                 // measure of the truncated union
  Spectrum spectrum;                     // at the horizon
  std::vector<std::complex<double>> target_coeffs;  // normalized region coefficients
  double spectrum_error;
};

// Indicator-representation pipeline: B_k = first k intervals,
// S_k = visit set of B_k, pasted per the seminorm isometry
// ||1_{S_k} - 1_{S_l}||_1 = mu(B_k triangle B_l).
RepresentReport represent_indicator(const IndexSet& R, TorusPoint alpha,
                                    const IntervalStream& B, uint64_t horizon, int64_t pmax);

}  // namespace rotlab
