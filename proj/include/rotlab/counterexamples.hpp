#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotlab/regions.hpp"
#include "rotlab/sequences.hpp"
#include "rotlab/torus.hpp"

namespace rotlab {

// ---- random pair whose intersection has no mean -------------------------

struct DyadicBlockMean {
  uint32_t k;          // block [2^k, 2^{k+1})
  uint64_t block_size;
  uint64_t count;      // #(R cap S) in the block
  double mean;
};

struct DyadicFlipReport {
  IndexSet R;
  IndexSet S;
  std::vector<DyadicBlockMean> block_means;
  double density_R;  // at the horizon
  double density_S;
};

// R = {n : X_n = 1}, S = {n : Y_n = 1} with Y flipped on odd dyadic
// blocks; the intersection is empty on odd blocks and ~1/2 dense on even
// ones.
DyadicFlipReport dyadic_flip_pair(uint64_t seed, uint64_t horizon);

// ---- block-pattern pair with means but not good --------------------------

enum class Letter : uint8_t { AllInts, Odds, Evens };
char letter_char(Letter l);

// Letter of R1 / R2 on the inner block I_n = [n^2, (n+1)^2); R2's
// alphabet switches with the parity of the k with n^2 in [3^k, 3^{k+1}).
Letter pattern_R1(uint64_t n);
Letter pattern_R2(uint64_t n);

// Induced letter cycles (phase = (n-1) mod 3) of the intersection and
// union, per outer parity; std::nullopt marks an empty combination.
std::array<std::optional<Letter>, 3> intersection_cycle(bool k_even);
std::array<Letter, 3> union_cycle(bool k_even);

struct OuterBlockRow {
  uint32_t k;  // J_k = [3^k, 3^{k+1})
  double inter_density;
  double inter_avg;  // average of e(n/2) over the members in J_k
  uint64_t inter_count;
  double union_density;
  double union_avg;
  uint64_t union_count;
};

struct BlockPatternReport {
  IndexSet R1;
  IndexSet R2;
  std::vector<OuterBlockRow> rows;   // k = 0..kmax
  double inter_global_density;       // at N = 3^{kmax+1} - 1
  double union_global_density;
};

BlockPatternReport block_pattern_pair(uint32_t kmax);

// ---- open set whose visit set is not good --------------------------------

struct OpenSetStep {
  uint32_t k;
  uint64_t N_k;
  uint64_t eps_ulps;        // snapped-down 1 / (2^{k+4} N_k)
  uint64_t interval_count;  // intervals added at this step
  u128 measure_ulps;        // exact measure (or certified upper bound)
  bool measure_is_upper_bound;
  bool measure_bound_ok;    // lambda(U_k) <= 2 sum N_i eps_i (same parity)
  bool disjoint_ok;         // every added interval avoids U_{k-1}
};

struct OpenSetCheckpoint {
  uint32_t k;
  uint64_t N_k;
  double average;  // A_{n <= N_k} 1_U(n alpha), U the even-family union
};

struct BadOpenSetResult {
  bool completed = false;       // false: horizon cap hit, partial state below
  uint32_t steps_done = 0;
  std::vector<OpenSetStep> steps;
  std::vector<OpenSetCheckpoint> checkpoints;
  bool parity_disjoint_ok = false;  // largest even vs largest odd stage
};

inline constexpr uint64_t kOpenSetSearchCap = 100'000'000ull;

// The inductive construction: U_0 = union of eps_0-balls around the
// first N_0 orbit points; each later stage covers the fresh orbit points
// avoiding the previous stage, with radii capped by eps_{k+1} and halved
// against the distance to keep stages of opposite parity exactly
// disjoint.
BadOpenSetResult bad_open_set(TorusPoint alpha, uint64_t N0, uint32_t steps);

}  // namespace rotlab
