#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace rotlab {

// Certificate for one breakpoint of the pasting recursion.
struct PasteCertRecord {
  size_t k = 0;             // step index (member k enters the pool here)
  uint64_t N_k = 0;         // chosen breakpoint (greedy-minimal)
  uint64_t growth_floor = 0;
  uint64_t prefix_bound = 0;  // smallest N allowed by the finite-prefix sums
  uint64_t pair_bound = 0;    // smallest N past every pair violation up to H
};

// The output certificate of a pasting construction: the glued object
// equals member k on (N_k, N_{k+1}]; positions n <= N_1 are left empty.
// Pair conditions "for every N >= N_k" are certified on [N_k, H] only,
// and H is recorded here.
struct PasteSchedule {
  std::vector<uint64_t> breakpoints;  // N_1 < N_2 < ... < N_m
  std::vector<double> eps;            // tolerance of member k
  std::vector<double> block_sup;      // sup bound of member k (weights; 1 for sets)
  uint64_t horizon = 0;
  bool truncated = false;  // horizon exhausted before the family was
  std::vector<PasteCertRecord> records;

  // member owning position n (1-based member id; 0 = before the first
  // breakpoint, owned by nothing).
  size_t owner(uint64_t n) const;
  size_t block_count() const { return breakpoints.size(); }
};

// A Cauchy family to paste.  Members are indexed from 1; values are
// 0/1 indicators for sets and w_k(n) for weights.  A joint scan hands
// out the values of the requested members at n = 1, 2, 3, ...
class PasteFamily {
 public:
  virtual ~PasteFamily() = default;

  // Number of members, or SIZE_MAX when the family is unbounded.
  virtual size_t size() const = 0;
  virtual double tolerance(size_t k) const = 0;   // eps_k
  virtual double member_sup(size_t /*k*/) const { return 1.0; }

  class Scan {
   public:
    virtual ~Scan() = default;
    // Advance to the next position and fill out[i] with the value of
    // member ids[i] there.  Returns false when the scan ends early.
    virtual bool next(double* out) = 0;
  };
  virtual std::unique_ptr<Scan> scan(const std::vector<size_t>& ids) const = 0;
};

// Greedy-minimal breakpoint recursion with growth floor N_k >= 2 N_{k-1}.
// Every "for all N >= N_k" clause is checked on [N_k, H].
PasteSchedule paste_family(const PasteFamily& family, uint64_t horizon);

// Max over N in [N_{j+2}, H] of A_[N]|f_j - f_paste| / eps_j, for every
// member j with at least two later breakpoints.  Values < 3 certify the
// pasting bound.
std::vector<double> paste_eq50_ratios(const PasteFamily& family, const PasteSchedule& sched);

}  // namespace rotlab
