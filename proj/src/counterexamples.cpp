#include "rotlab/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rotlab/accum.hpp"
#include "rotlab/rng.hpp"

namespace rotlab {

namespace {

uint32_t dyadic_block(uint64_t n) {  // k with n in [2^k, 2^{k+1})
  uint32_t k = 63;
  while (!(n >> k)) --k;
  return k;
}

bool flip_X(uint64_t seed, uint64_t n) { return keyed_bernoulli(seed, n, 0.5); }

bool flip_Y(uint64_t seed, uint64_t n) {
  bool x = flip_X(seed, n);
  return (dyadic_block(n) % 2 == 0) ? x : !x;
}

}  // namespace

DyadicFlipReport dyadic_flip_pair(uint64_t seed, uint64_t horizon) {
  if (horizon < (1ull << 10)) throw std::invalid_argument("dyadic_flip_pair: horizon too small");
  DyadicFlipReport rep{
      filter_set(make_naturals(), "dyadic_flip_R(seed=" + std::to_string(seed) + ")",
                 [seed](uint64_t n) { return flip_X(seed, n); }),
      filter_set(make_naturals(), "dyadic_flip_S(seed=" + std::to_string(seed) + ")",
                 [seed](uint64_t n) { return flip_Y(seed, n); }),
      {},
      0.0,
      0.0};

  const uint32_t kmax = dyadic_block(horizon);
  uint64_t countR = 0, countS = 0;
  std::vector<uint64_t> inter_counts(kmax + 1, 0);
  for (uint64_t n = 1; n <= horizon; ++n) {
    bool x = flip_X(seed, n);
    bool y = (dyadic_block(n) % 2 == 0) ? x : !x;
    countR += x;
    countS += y;
    if (x && y) ++inter_counts[dyadic_block(n)];
  }
  for (uint32_t k = 0; k <= kmax; ++k) {
    uint64_t lo = 1ull << k;
    uint64_t hi = std::min<uint64_t>(horizon + 1, 1ull << (k + 1));
    if (hi <= lo) break;
    uint64_t size = hi - lo;
    rep.block_means.push_back(
        {k, size, inter_counts[k], static_cast<double>(inter_counts[k]) / static_cast<double>(size)});
  }
  rep.density_R = static_cast<double>(countR) / static_cast<double>(horizon);
  rep.density_S = static_cast<double>(countS) / static_cast<double>(horizon);
  return rep;
}

char letter_char(Letter l) {
  switch (l) {
    case Letter::AllInts: return 'N';
    case Letter::Odds: return 'O';
    case Letter::Evens: return 'E';
  }
  return '?';
}

namespace {

uint64_t isqrt64(uint64_t x) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

uint32_t outer_block_of(uint64_t x) {  // k with x in [3^k, 3^{k+1})
  uint32_t k = 0;
  uint64_t p = 1;
  while (p * 3 <= x) {
    p *= 3;
    ++k;
  }
  return k;
}

constexpr Letter kCycleR1[3] = {Letter::AllInts, Letter::Odds, Letter::Evens};
constexpr Letter kCycleR2Even[3] = {Letter::Evens, Letter::Odds, Letter::AllInts};
constexpr Letter kCycleR2Odd[3] = {Letter::Odds, Letter::AllInts, Letter::Evens};

bool letter_member(Letter l, uint64_t x) {
  switch (l) {
    case Letter::AllInts: return true;
    case Letter::Odds: return (x & 1) != 0;
    case Letter::Evens: return (x & 1) == 0;
  }
  return false;
}

std::optional<Letter> letter_intersect(Letter a, Letter b) {
  if (a == Letter::AllInts) return b;
  if (b == Letter::AllInts) return a;
  if (a == b) return a;
  return std::nullopt;  // odds cap evens
}

Letter letter_union(Letter a, Letter b) {
  if (a == b) return a;
  return Letter::AllInts;  // N with anything, or odds with evens
}

}  // namespace

Letter pattern_R1(uint64_t n) { return kCycleR1[(n - 1) % 3]; }

Letter pattern_R2(uint64_t n) {
  uint32_t k = outer_block_of(n * n);
  return (k % 2 == 0) ? kCycleR2Even[(n - 1) % 3] : kCycleR2Odd[(n - 1) % 3];
}

std::array<std::optional<Letter>, 3> intersection_cycle(bool k_even) {
  std::array<std::optional<Letter>, 3> out;
  const Letter* r2 = k_even ? kCycleR2Even : kCycleR2Odd;
  for (int i = 0; i < 3; ++i) out[i] = letter_intersect(kCycleR1[i], r2[i]);
  return out;
}

std::array<Letter, 3> union_cycle(bool k_even) {
  std::array<Letter, 3> out{};
  const Letter* r2 = k_even ? kCycleR2Even : kCycleR2Odd;
  for (int i = 0; i < 3; ++i) out[i] = letter_union(kCycleR1[i], r2[i]);
  return out;
}

BlockPatternReport block_pattern_pair(uint32_t kmax) {
  if (kmax > 16) throw std::invalid_argument("block_pattern_pair: kmax too large");
  BlockPatternReport rep{
      filter_set(make_naturals(), "block_pattern_R1",
                 [](uint64_t x) { return letter_member(pattern_R1(isqrt64(x)), x); }),
      filter_set(make_naturals(), "block_pattern_R2",
                 [](uint64_t x) { return letter_member(pattern_R2(isqrt64(x)), x); }),
      {},
      0.0,
      0.0};

  uint64_t horizon = 1;
  for (uint32_t i = 0; i <= kmax; ++i) horizon *= 3;  // 3^{kmax+1}
  const uint64_t N = horizon - 1;

  struct Acc {
    uint64_t count = 0;
    int64_t signed_sum = 0;  // sum of e(n/2) = (-1)^n, exact in integers
  };
  std::vector<Acc> inter(kmax + 1), uni(kmax + 1);
  uint64_t inter_total = 0, union_total = 0;
  for (uint64_t x = 1; x <= N; ++x) {
    uint64_t n = isqrt64(x);
    Letter l1 = pattern_R1(n);
    Letter l2 = pattern_R2(n);
    bool in1 = letter_member(l1, x);
    bool in2 = letter_member(l2, x);
    uint32_t k = outer_block_of(x);
    int sign = (x & 1) ? -1 : 1;
    if (in1 && in2) {
      ++inter[k].count;
      inter[k].signed_sum += sign;
      ++inter_total;
    }
    if (in1 || in2) {
      ++uni[k].count;
      uni[k].signed_sum += sign;
      ++union_total;
    }
  }
  uint64_t p = 1;
  for (uint32_t k = 0; k <= kmax; ++k) {
    uint64_t size = 2 * p;  // |J_k| = 3^{k+1} - 3^k
    OuterBlockRow row;
    row.k = k;
    row.inter_count = inter[k].count;
    row.inter_density = static_cast<double>(inter[k].count) / static_cast<double>(size);
    row.inter_avg = inter[k].count == 0
                        ? 0.0
                        : static_cast<double>(inter[k].signed_sum) / static_cast<double>(inter[k].count);
    row.union_count = uni[k].count;
    row.union_density = static_cast<double>(uni[k].count) / static_cast<double>(size);
    row.union_avg = uni[k].count == 0
                        ? 0.0
                        : static_cast<double>(uni[k].signed_sum) / static_cast<double>(uni[k].count);
    rep.rows.push_back(row);
    p *= 3;
  }
  rep.inter_global_density = static_cast<double>(inter_total) / static_cast<double>(N);
  rep.union_global_density = static_cast<double>(union_total) / static_cast<double>(N);
  return rep;
}

// ---- open set construction ------------------------------------------------

namespace {

uint64_t eps_ulps_for(uint32_t k, uint64_t N_k) {
  // floor(2^64 / (2^{k+4} N_k)) = floor(2^{60-k} / N_k)
  if (k > 60) throw std::runtime_error("bad_open_set: step index too large");
  u128 num = static_cast<u128>(1) << (60 - k);
  uint64_t eps = static_cast<uint64_t>(num / N_k);
  if (eps == 0) throw std::runtime_error("bad_open_set: radius underflows the grid");
  return eps;
}

}  // namespace

BadOpenSetResult bad_open_set(TorusPoint alpha, uint64_t N0, uint32_t steps) {
  if (alpha.frac == 0) throw std::invalid_argument("bad_open_set: alpha must be irrational");
  if (N0 < 2) throw std::invalid_argument("bad_open_set: N0 must exceed 1");
  if (steps < 2) throw std::invalid_argument("bad_open_set: need at least two steps");

  BadOpenSetResult res;
  std::vector<OpenIntervalSet> U(steps + 1);
  std::vector<uint64_t> breakpoints{N0};
  std::vector<uint64_t> eps{eps_ulps_for(0, N0)};
  // 2 sum N_i eps_i per parity, in ulps (exact budget of the measure bound)
  u128 budget[2] = {0, 0};
  budget[0] = 2 * static_cast<u128>(N0) * eps[0];

  // stage 0: eps_0-balls around the first N_0 orbit points
  {
    std::vector<std::pair<uint64_t, uint64_t>> iv;
    for (uint64_t n = 1; n <= N0; ++n) iv.push_back({orbit_point(n, alpha).frac, eps[0]});
    U[0].add_intervals(iv);
    res.steps.push_back({0, N0, eps[0], N0, U[0].measure_ulps(), false,
                         U[0].measure_ulps() <= budget[0], true});
  }

  // streaming state for a final stage too large to materialize
  constexpr uint64_t kMaterializeCap = 4'000'000;
  bool streamed_last = false;
  u128 streamed_measure_upper = 0;

  for (uint32_t k = 0; k < steps; ++k) {
    const OpenIntervalSet& prev = U[k];
    const u128 lambda_prev = prev.measure_ulps();

    // least N_{k+1} > N_k with #{n <= N : n alpha in closure(U_k)} <= 2 lambda(U_k) N
    uint64_t N_next = 0;
    uint64_t closure_count = 0;
    {
      uint64_t n = 0;
      const uint64_t N_k = breakpoints.back();
      const u128 two_lambda = 2 * lambda_prev;
      while (true) {
        ++n;
        if (n > kOpenSetSearchCap) break;
        if (prev.closure_contains(orbit_point(n, alpha))) ++closure_count;
        if (n > N_k && static_cast<u128>(closure_count) * kTorusOne <= two_lambda * n) {
          N_next = n;
          break;
        }
      }
    }
    if (N_next == 0) {
      res.steps_done = k;
      res.completed = false;
      return res;
    }
    breakpoints.push_back(N_next);
    const uint64_t eps_next = eps_ulps_for(k + 1, N_next);
    eps.push_back(eps_next);
    budget[(k + 1) % 2] += 2 * static_cast<u128>(N_next) * eps_next;

    const uint64_t center_estimate = N_next - closure_count;
    const bool is_last = (k + 1 == steps);
    const bool stream = is_last && center_estimate > kMaterializeCap;

    OpenSetStep step;
    step.k = k + 1;
    step.N_k = N_next;
    step.eps_ulps = eps_next;
    step.interval_count = 0;
    step.disjoint_ok = true;
    step.measure_is_upper_bound = stream;

    if (!stream) {
      std::vector<std::pair<uint64_t, uint64_t>> iv;
      iv.reserve(center_estimate);
      for (uint64_t n = 1; n <= N_next; ++n) {
        TorusPoint x = orbit_point(n, alpha);
        if (prev.closure_contains(x)) continue;
        uint64_t dist = prev.distance_to_closure(x);
        uint64_t delta = std::max<uint64_t>(1, std::min(dist, eps_next) / 2);
        iv.push_back({x.frac, delta});
      }
      step.interval_count = iv.size();
      if (k >= 1) U[k + 1] = U[k - 1];  // U_{k+1} extends U_{k-1}
      U[k + 1].add_intervals(iv);
      for (auto [c, d] : iv) {
        if (prev.meets_open_interval(TorusPoint{c}, d)) step.disjoint_ok = false;
      }
      step.measure_ulps = U[k + 1].measure_ulps();
    } else {
      streamed_last = true;
      u128 added = 0;
      for (uint64_t n = 1; n <= N_next; ++n) {
        TorusPoint x = orbit_point(n, alpha);
        if (prev.closure_contains(x)) continue;
        uint64_t dist = prev.distance_to_closure(x);
        uint64_t delta = std::max<uint64_t>(1, std::min(dist, eps_next) / 2);
        if (prev.meets_open_interval(x, delta)) step.disjoint_ok = false;
        added += 2 * static_cast<u128>(delta);
        ++step.interval_count;
      }
      // subadditive certificate: lambda(U_{k+1}) <= lambda(U_{k-1}) + sum 2 delta
      streamed_measure_upper = (k >= 1 ? U[k - 1].measure_ulps() : 0) + added;
      step.measure_ulps = streamed_measure_upper;
    }
    step.measure_bound_ok = step.measure_ulps <= budget[(k + 1) % 2];
    res.steps.push_back(step);
  }

  res.steps_done = steps;
  res.completed = true;

  // parity disjointness of the two largest stages (families are nested)
  {
    uint32_t last_even = (steps % 2 == 0) ? steps : steps - 1;
    uint32_t last_odd = (steps % 2 == 1) ? steps : steps - 1;
    if (streamed_last) {
      // the streamed stage was verified interval-by-interval above
      uint32_t a = std::min(last_even, last_odd);
      uint32_t b = a > 0 ? a - 1 : 0;
      res.parity_disjoint_ok = U[a].disjoint_from(U[b]);
      res.parity_disjoint_ok = res.parity_disjoint_ok && res.steps.back().disjoint_ok;
    } else {
      res.parity_disjoint_ok = U[last_even].disjoint_from(U[last_odd]);
    }
  }

  // prefix averages of 1_U(n alpha), U the union of the even stages.
  // With the last stage streamed (steps even), membership for n <= N_steps
  // is: in U_{steps-2}, or outside the closure of U_{steps-1}.
  {
    const uint32_t last_even = (steps % 2 == 0) ? steps : steps - 1;
    const OpenIntervalSet& even_materialized =
        (streamed_last && steps % 2 == 0) ? U[steps - 2] : U[last_even];
    const OpenIntervalSet* odd_guard =
        (streamed_last && steps % 2 == 0) ? &U[steps - 1] : nullptr;
    auto member = [&](TorusPoint x) {
      if (even_materialized.contains(x)) return true;
      if (odd_guard) return !odd_guard->closure_contains(x);
      return false;
    };
    uint64_t count = 0;
    size_t ci = 0;
    const uint64_t N_max = breakpoints.back();
    for (uint64_t n = 1; n <= N_max; ++n) {
      if (member(orbit_point(n, alpha))) ++count;
      if (ci < breakpoints.size() && n == breakpoints[ci]) {
        res.checkpoints.push_back({static_cast<uint32_t>(ci), breakpoints[ci],
                                   static_cast<double>(count) / static_cast<double>(n)});
        ++ci;
      }
    }
  }
  return res;
}

}  // namespace rotlab
