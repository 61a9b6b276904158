#include "rotlab/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rotlab/regions.hpp"

namespace rotlab {

ResidueTorus ResidueTorus::make(uint32_t q, std::vector<double> masses) {
  if (q == 0 || masses.size() != q) throw std::invalid_argument("ResidueTorus: bad size");
  double sum = 0.0;
  for (double m : masses) {
    if (m < 0.0) throw std::invalid_argument("ResidueTorus: negative mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("ResidueTorus: masses must sum to 1");
  return ResidueTorus{q, std::move(masses)};
}

IndexSet represent_rational(uint64_t a, uint64_t q, const ResidueTorus& nu, TorusPoint gamma) {
  if (q == 0 || nu.q != q) throw std::invalid_argument("represent_rational: q mismatch");
  if (a == 0 || std::gcd(a, q) != 1)
    throw std::invalid_argument("represent_rational: gcd(a,q) != 1");
  if (gamma.frac == 0) throw std::invalid_argument("represent_rational: gamma must be irrational");

  // membership threshold per residue class: r gamma in [0, nu(j/q));
  // u128 so that mass 1 keeps the whole torus and mass 0 nothing.
  auto thresholds = std::make_shared<std::vector<u128>>();
  for (uint32_t j = 0; j < q; ++j) {
    double m = nu.masses[j];
    u128 t;
    if (m >= 1.0) {
      t = static_cast<u128>(1) << 64;
    } else {
      long double scaled = static_cast<long double>(m) * 18446744073709551616.0L;
      t = static_cast<u128>(std::floor(scaled + 0.5L));
    }
    thresholds->push_back(t);
  }

  std::string desc = "rational_rep(a=" + std::to_string(a) + ",q=" + std::to_string(q) +
                     ",gamma=" + gamma.to_hex() + ")";
  // n belongs to R_j for j = n*a mod q; keep n iff n*gamma falls in the
  // residue's window.
  return filter_set(make_naturals(), std::move(desc), [a, q, gamma, thresholds](uint64_t n) {
    uint64_t j = static_cast<uint64_t>((static_cast<unsigned __int128>(n) * a) % q);
    return static_cast<u128>(orbit_point(n, gamma).frac) < (*thresholds)[j];
  });
}

std::vector<double> atom_masses(const IndexSet& S, uint64_t a, uint64_t q, uint64_t N) {
  if (q == 0) throw std::invalid_argument("atom_masses: q must be positive");
  std::vector<uint64_t> counts(q, 0);
  uint64_t total = 0;
  S.for_each_upto(N, [&](uint64_t s) {
    uint64_t j = static_cast<uint64_t>((static_cast<unsigned __int128>(s) * a) % q);
    ++counts[j];
    ++total;
  });
  if (total == 0) throw std::runtime_error("atom_masses: empty prefix");
  std::vector<double> out(q);
  for (uint64_t j = 0; j < q; ++j)
    out[j] = static_cast<double>(counts[j]) / static_cast<double>(total);
  return out;
}

}  // namespace rotlab
