#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotlab {

inline constexpr uint64_t kMaxElement = (1ull << 63) - 1;
inline constexpr uint64_t kMaxHorizon = 100'000'000ull;

// Single-consumer cursor over a strictly increasing integer sequence.
class SequenceCursor {
 public:
  virtual ~SequenceCursor() = default;
  // Next element, or nullopt when the sequence is exhausted.
  virtual std::optional<uint64_t> next() = 0;
};

// A strictly increasing sequence of positive integers, restartable from
// its descriptor.  Two cursors over the same IndexSet emit identical
// prefixes.
class IndexSet {
 public:
  using CursorFactory = std::function<std::unique_ptr<SequenceCursor>()>;

  IndexSet() = default;
  IndexSet(std::string descriptor, CursorFactory factory)
      : descriptor_(std::move(descriptor)), factory_(std::move(factory)) {}

  const std::string& descriptor() const { return descriptor_; }

  std::unique_ptr<SequenceCursor> cursor() const { return factory_(); }

  // Visit elements <= limit in increasing order.  Enforces strict
  // monotonicity and the element bound.
  template <typename F>
  void for_each_upto(uint64_t limit, F&& f) const {
    auto cur = cursor();
    uint64_t prev = 0;
    while (auto v = cur->next()) {
      if (*v == 0 || *v > kMaxElement) throw std::runtime_error("IndexSet: element out of range in " + descriptor_);
      if (*v <= prev) throw std::runtime_error("IndexSet: non-increasing generator in " + descriptor_);
      prev = *v;
      if (*v > limit) return;
      f(*v);
    }
  }

  // #R(N), the counting function.
  uint64_t count_upto(uint64_t limit) const {
    uint64_t c = 0;
    for_each_upto(limit, [&](uint64_t) { ++c; });
    return c;
  }

  std::vector<uint64_t> elements_upto(uint64_t limit) const {
    std::vector<uint64_t> out;
    for_each_upto(limit, [&](uint64_t v) { out.push_back(v); });
    return out;
  }

  // Bitset over [0, limit]: word i>>6, bit i&63.
  std::vector<uint64_t> prefix_bitset(uint64_t limit) const {
    std::vector<uint64_t> bits((limit >> 6) + 1, 0);
    for_each_upto(limit, [&](uint64_t v) { bits[v >> 6] |= (1ull << (v & 63)); });
    return bits;
  }

 private:
  std::string descriptor_;
  CursorFactory factory_;
};

inline bool bitset_test(const std::vector<uint64_t>& bits, uint64_t i) {
  return (bits[i >> 6] >> (i & 63)) & 1;
}

// Base families: naturals, k-th powers, primes (sieved), floor(n^2 log n),
// arithmetic progressions, and explicit lists.
IndexSet make_naturals();
IndexSet make_kth_powers(uint32_t k);
IndexSet make_primes();
IndexSet make_n2logn();
// {j' + t*q : t >= 0} intersected with the positive integers; 0 <= jp < q
// or jp == q are both accepted.
IndexSet make_progression(uint64_t q, uint64_t jp);
IndexSet make_explicit(std::vector<uint64_t> elements, std::string label = "explicit");
// Newline-delimited decimal integers; must be strictly increasing.
IndexSet make_explicit_from_file(const std::string& path);

// Filter a base set by an arbitrary element predicate.
IndexSet filter_set(const IndexSet& base, std::string descriptor,
                    std::function<bool(uint64_t)> keep);

struct GrowthReport {
  std::vector<uint64_t> checkpoints;
  std::vector<uint64_t> counts;  // #R(N) at each checkpoint
  std::vector<double> ratios;    // log N / #R(N); +inf when the count is 0
};

// Sublacunarity diagnostic: ratios log N / #R(N) should tend to 0.
GrowthReport sublacunarity_report(const IndexSet& R, const std::vector<uint64_t>& checkpoints);

// Partial relative densities #(S cap R(N)) / #R(N).  S must be a subset
// of R on the scanned prefix; a violation names the offending element.
std::vector<double> relative_mean_trace(const IndexSet& S, const IndexSet& R,
                                        const std::vector<uint64_t>& checkpoints);

}  // namespace rotlab
