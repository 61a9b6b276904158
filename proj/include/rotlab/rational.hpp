#pragma once

#include <cstdint>
#include <vector>

#include "rotlab/sequences.hpp"
#include "rotlab/torus.hpp"

namespace rotlab {

// A probability vector on the q-th roots of unity T_q = {j/q}.
struct ResidueTorus {
  uint32_t q;
  std::vector<double> masses;  // masses[j] = nu(j/q), sum 1

  static ResidueTorus make(uint32_t q, std::vector<double> masses);
};

// The union S of visit sets S_j = {r in R_j : r gamma in [0, nu(j/q))},
// R_j the residue class solving j' a = j (mod q).  Its transform measure
// at a/q converges to nu.
IndexSet represent_rational(uint64_t a, uint64_t q, const ResidueTorus& nu, TorusPoint gamma);

// Empirical atom masses #S_j(N) / #S(N), j = 0..q-1, classes by s*a mod q.
std::vector<double> atom_masses(const IndexSet& S, uint64_t a, uint64_t q, uint64_t N);

}  // namespace rotlab
