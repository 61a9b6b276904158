#include "rotlab/paste.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rotlab/accum.hpp"

namespace rotlab {

size_t PasteSchedule::owner(uint64_t n) const {
  // largest k with N_k < n
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), n);
  size_t idx = static_cast<size_t>(it - breakpoints.begin());
  // breakpoints[idx-1] < n <= breakpoints[idx]
  return idx;  // 0 when n <= N_1
}

namespace {

// One recursion step: a single pass over [1, H] computing, for the given
// pairs, the last position where the running prefix average violates the
// tolerance, plus the fixed-prefix sums of |f_j - f_paste| up to N_prev.
struct StepScanResult {
  std::vector<uint64_t> last_violation;  // per pair
  std::vector<double> prefix_diff;       // per j in [k-2]: sum_{n<=N_prev}|f_j - f_S|
};

}  // namespace

PasteSchedule paste_family(const PasteFamily& family, uint64_t horizon) {
  if (horizon < 2) throw std::invalid_argument("paste_family: horizon too small");
  const size_t m = family.size();
  if (m < 2) throw std::invalid_argument("paste_family: need at least two members");

  PasteSchedule sched;
  sched.horizon = horizon;
  sched.breakpoints.push_back(1);  // N_1 = 1

  // eps_k == 0 means the family is eventually constant in seminorm; the
  // pasted object is member k itself from there on.
  if (family.tolerance(1) == 0.0) {
    sched.eps.push_back(0.0);
    sched.block_sup.push_back(family.member_sup(1));
    sched.records.push_back({1, 1, 0, 0, 0});
    return sched;
  }

  for (size_t k = 2; k <= m; ++k) {
    const uint64_t N_prev = sched.breakpoints.back();
    for (size_t j = 1; j + 1 <= k; ++j) {
      if (!(family.tolerance(j) > 0.0)) {
        sched.truncated = true;  // cannot certify a zero tolerance at finite scale
        break;
      }
    }
    if (sched.truncated) break;

    // pairs (j, k-1) and (j, k) for j in [k-2]; for k == 2 the paper's
    // second step uses (1, 2) and, when present, (1, 3) with eps_1
    std::vector<std::pair<size_t, size_t>> pairs;
    std::vector<double> pair_eps;
    if (k == 2) {
      pairs.push_back({1, 2});
      pair_eps.push_back(family.tolerance(1));
      if (m >= 3) {
        pairs.push_back({1, 3});
        pair_eps.push_back(family.tolerance(1));
      }
    } else {
      for (size_t j = 1; j + 2 <= k; ++j) {
        pairs.push_back({j, k - 1});
        pair_eps.push_back(family.tolerance(j));
        pairs.push_back({j, k});
        pair_eps.push_back(family.tolerance(j));
      }
    }
    // members needed this step: 1..k, plus 3 at step 2
    std::vector<size_t> scan_ids(k);
    for (size_t i = 0; i < k; ++i) scan_ids[i] = i + 1;
    if (k == 2 && m >= 3) scan_ids.push_back(3);
    auto scan = family.scan(scan_ids);
    auto slot = [&](size_t member) -> size_t {
      for (size_t i = 0; i < scan_ids.size(); ++i)
        if (scan_ids[i] == member) return i;
      throw std::logic_error("paste_family: member not in scan");
    };

    std::vector<size_t> pa(pairs.size()), pb(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
      pa[i] = slot(pairs[i].first);
      pb[i] = slot(pairs[i].second);
    }

    std::vector<Kahan> pair_sum(pairs.size());
    std::vector<uint64_t> last_violation(pairs.size(), 0);
    std::vector<Kahan> prefix_diff(k >= 3 ? k - 2 : 0);

    std::vector<double> vals(scan_ids.size());
    for (uint64_t n = 1; n <= horizon; ++n) {
      if (!scan->next(vals.data())) {
        throw std::runtime_error("paste_family: member scan ended before the horizon");
      }
      for (size_t i = 0; i < pairs.size(); ++i) {
        pair_sum[i].add(std::abs(vals[pa[i]] - vals[pb[i]]));
        if (pair_sum[i].value() >= pair_eps[i] * static_cast<double>(n))
          last_violation[i] = n;
      }
      if (n <= N_prev && k >= 3) {
        const size_t own = sched.owner(n);  // member owning position n so far
        const double fS = own == 0 ? 0.0 : vals[slot(own)];
        for (size_t j = 1; j + 2 <= k; ++j)
          prefix_diff[j - 1].add(std::abs(vals[slot(j)] - fS));
      }
    }

    uint64_t bound_pairs = 0;
    for (uint64_t lv : last_violation) bound_pairs = std::max(bound_pairs, lv);
    uint64_t bound_prefix = 0;
    if (k == 2) {
      // N_1 / N_2 < eps_1
      bound_prefix = static_cast<uint64_t>(
          std::floor(static_cast<double>(N_prev) / family.tolerance(1)));
    } else {
      for (size_t j = 1; j + 2 <= k; ++j) {
        double eps_j = family.tolerance(j);
        bound_prefix = std::max(
            bound_prefix,
            static_cast<uint64_t>(std::floor(prefix_diff[j - 1].value() / eps_j)));
      }
    }
    const uint64_t growth_floor = 2 * N_prev;
    uint64_t N_k = std::max({N_prev + 1, growth_floor, bound_pairs + 1, bound_prefix + 1});
    if (N_k > horizon) {
      sched.truncated = true;
      break;
    }
    sched.breakpoints.push_back(N_k);
    sched.block_sup.resize(sched.breakpoints.size());
    for (size_t i = 0; i < sched.breakpoints.size(); ++i)
      sched.block_sup[i] = family.member_sup(i + 1);
    sched.records.push_back({k, N_k, growth_floor, bound_prefix + 1, bound_pairs + 1});
  }

  sched.eps.resize(sched.breakpoints.size());
  for (size_t j = 1; j <= sched.breakpoints.size(); ++j)
    sched.eps[j - 1] = family.tolerance(j);
  sched.block_sup.resize(sched.breakpoints.size());
  for (size_t i = 0; i < sched.breakpoints.size(); ++i)
    sched.block_sup[i] = family.member_sup(i + 1);
  return sched;
}

std::vector<double> paste_eq50_ratios(const PasteFamily& family, const PasteSchedule& sched) {
  const size_t m = sched.breakpoints.size();
  std::vector<double> ratios;
  if (m < 3) return ratios;
  // member j is covered by the bound for N >= N_{j+2}
  const size_t j_max = m - 2;
  std::vector<size_t> ids;
  for (size_t j = 1; j <= m; ++j) ids.push_back(j);
  auto scan = family.scan(ids);
  std::vector<Kahan> diff(j_max);
  ratios.assign(j_max, 0.0);
  std::vector<double> vals(ids.size());
  for (uint64_t n = 1; n <= sched.horizon; ++n) {
    if (!scan->next(vals.data())) break;
    const size_t own = sched.owner(n);
    const double fS = own == 0 ? 0.0 : vals[own - 1];
    for (size_t j = 1; j <= j_max; ++j) {
      diff[j - 1].add(std::abs(vals[j - 1] - fS));
      if (n >= sched.breakpoints[j + 1]) {  // N >= N_{j+2}
        double avg = diff[j - 1].value() / static_cast<double>(n);
        ratios[j - 1] = std::max(ratios[j - 1], avg / family.tolerance(j));
      }
    }
  }
  return ratios;
}

}  // namespace rotlab
