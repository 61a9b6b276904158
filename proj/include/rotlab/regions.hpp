#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "rotlab/torus.hpp"

namespace rotlab {

using u128 = unsigned __int128;
inline constexpr u128 kTorusOne = static_cast<u128>(1) << 64;  // 1.0 in ulps

// Finite union of half-open intervals [a,b) of the torus, pairwise
// disjoint, endpoints on the 2^-64 grid.  Canonical form: sorted
// non-wrapping pieces; hi == 0 encodes the top endpoint 2^64.
class TorusRegion {
 public:
  struct Piece {
    uint64_t lo;
    uint64_t hi;  // exclusive; 0 means 2^64
  };

  TorusRegion() = default;
  // Intervals [a,b); an interval with a == b is empty, intervals may wrap
  // through 0.  Overlapping input intervals are rejected.
  static TorusRegion from_intervals(const std::vector<std::pair<TorusPoint, TorusPoint>>& iv);
  static TorusRegion full();
  static TorusRegion empty() { return TorusRegion(); }
  // CSV rows "a,b", decimal fractions or 0x-prefixed hex fixed point.
  static TorusRegion from_csv(const std::string& path);

  bool contains(TorusPoint x) const;
  u128 measure_ulps() const;
  double measure() const { return std::ldexp(static_cast<double>(measure_ulps()), -64); }
  bool is_empty() const { return pieces_.empty(); }
  const std::vector<Piece>& pieces() const { return pieces_; }

  // integral of e_p over the region: lambda(1_B e_p); exact endpoints.
  std::complex<double> fourier_integral(int64_t p) const;

  std::string to_string() const;

 private:
  std::vector<Piece> pieces_;
};

// Finite union of open intervals of the torus, with exact membership,
// closure membership, distance and measure.  Used by the inductive
// open-set construction, where strict disjointness from a previous
// stage must hold at the bit level.
class OpenIntervalSet {
 public:
  struct Piece {
    uint64_t lo;
    uint64_t hi;  // 0 means 2^64; open at both ends
  };

  bool contains(TorusPoint x) const;
  bool closure_contains(TorusPoint x) const;
  // Circular distance (in ulps) from x to the closure; 0 if inside.
  // The set must be nonempty.
  uint64_t distance_to_closure(TorusPoint x) const;
  // True iff the open interval (center-delta, center+delta) meets the set.
  bool meets_open_interval(TorusPoint center, uint64_t delta) const;

  // Insert open intervals (center - delta, center + delta); merges
  // overlaps, keeps touching pieces separate (shared endpoints stay
  // excluded).
  void add_intervals(const std::vector<std::pair<uint64_t, uint64_t>>& center_delta);
  void add_set(const OpenIntervalSet& other);

  u128 measure_ulps() const { return measure_; }
  double measure() const { return std::ldexp(static_cast<double>(measure_), -64); }
  size_t piece_count() const { return pieces_.size(); }
  bool empty() const { return pieces_.empty() && !zero_inside_; }
  // True iff the two open sets are disjoint.
  bool disjoint_from(const OpenIntervalSet& other) const;

 private:
  void insert_pieces(std::vector<Piece> add);
  void recompute_measure();

  std::vector<Piece> pieces_;  // sorted by lo, overlap-free interiors
  bool zero_inside_ = false;   // the torus point 0 lies in the open set
  u128 measure_ = 0;
};

}  // namespace rotlab
