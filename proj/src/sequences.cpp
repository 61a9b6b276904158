#include "rotlab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace rotlab {

namespace {

class NaturalsCursor final : public SequenceCursor {
 public:
  std::optional<uint64_t> next() override { return ++n_; }

 private:
  uint64_t n_ = 0;
};

class KthPowersCursor final : public SequenceCursor {
 public:
  explicit KthPowersCursor(uint32_t k) : k_(k) {}
  std::optional<uint64_t> next() override {
    ++n_;
    uint64_t v = 1;
    for (uint32_t i = 0; i < k_; ++i) {
      if (v > kMaxElement / n_) return std::nullopt;
      v *= n_;
    }
    return v;
  }

 private:
  uint32_t k_;
  uint64_t n_ = 0;
};

// Segmented sieve of Eratosthenes.
class PrimesCursor final : public SequenceCursor {
 public:
  std::optional<uint64_t> next() override {
    while (true) {
      if (pos_ < segment_.size()) return segment_[pos_++];
      if (!advance_segment()) return std::nullopt;
    }
  }

 private:
  static constexpr uint64_t kSegment = 1ull << 20;

  bool advance_segment() {
    if (lo_ > kMaxElement) return false;
    uint64_t hi = std::min(lo_ + kSegment, kMaxElement + 1);
    extend_small_primes(hi);
    std::vector<bool> composite(hi - lo_, false);
    for (uint64_t p : small_primes_) {
      if (p * p >= hi) break;
      uint64_t start = std::max(p * p, ((lo_ + p - 1) / p) * p);
      for (uint64_t m = start; m < hi; m += p) composite[m - lo_] = true;
    }
    segment_.clear();
    for (uint64_t v = std::max<uint64_t>(lo_, 2); v < hi; ++v) {
      if (!composite[v - lo_]) segment_.push_back(v);
    }
    pos_ = 0;
    lo_ = hi;
    return true;
  }

  void extend_small_primes(uint64_t hi) {
    uint64_t need = static_cast<uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
    if (small_limit_ >= need) return;
    uint64_t n = std::max<uint64_t>(need, 1024);
    std::vector<bool> sieve(n + 1, true);
    small_primes_.clear();
    for (uint64_t p = 2; p <= n; ++p) {
      if (!sieve[p]) continue;
      small_primes_.push_back(p);
      for (uint64_t m = p * p; m <= n; m += p) sieve[m] = true;
    }
    small_limit_ = n;
  }

  uint64_t lo_ = 0;
  uint64_t small_limit_ = 0;
  std::vector<uint64_t> small_primes_;
  std::vector<uint64_t> segment_;
  size_t pos_ = 0;
};

// floor(n^2 log n) for n >= 2 (the n = 1 term is 0 and is excluded).
class N2LogNCursor final : public SequenceCursor {
 public:
  std::optional<uint64_t> next() override {
    ++n_;
    long double v = static_cast<long double>(n_) * n_ * std::log(static_cast<long double>(n_));
    if (v > static_cast<long double>(kMaxElement)) return std::nullopt;
    return static_cast<uint64_t>(v);
  }

 private:
  uint64_t n_ = 1;
};

class ProgressionCursor final : public SequenceCursor {
 public:
  ProgressionCursor(uint64_t q, uint64_t first) : q_(q), next_(first) {}
  std::optional<uint64_t> next() override {
    if (next_ > kMaxElement) return std::nullopt;
    uint64_t v = next_;
    next_ += q_;
    return v;
  }

 private:
  uint64_t q_;
  uint64_t next_;
};

class VectorCursor final : public SequenceCursor {
 public:
  explicit VectorCursor(std::shared_ptr<const std::vector<uint64_t>> v) : v_(std::move(v)) {}
  std::optional<uint64_t> next() override {
    if (pos_ >= v_->size()) return std::nullopt;
    return (*v_)[pos_++];
  }

 private:
  std::shared_ptr<const std::vector<uint64_t>> v_;
  size_t pos_ = 0;
};

class FilterCursor final : public SequenceCursor {
 public:
  FilterCursor(std::unique_ptr<SequenceCursor> base, const std::function<bool(uint64_t)>* keep)
      : base_(std::move(base)), keep_(keep) {}
  std::optional<uint64_t> next() override {
    while (auto v = base_->next()) {
      if ((*keep_)(*v)) return v;
    }
    return std::nullopt;
  }

 private:
  std::unique_ptr<SequenceCursor> base_;
  const std::function<bool(uint64_t)>* keep_;
};

}  // namespace

IndexSet make_naturals() {
  return IndexSet("naturals", [] { return std::make_unique<NaturalsCursor>(); });
}

IndexSet make_kth_powers(uint32_t k) {
  if (k < 1) throw std::invalid_argument("kth_powers: k must be >= 1");
  return IndexSet("kth_powers(" + std::to_string(k) + ")",
                  [k] { return std::make_unique<KthPowersCursor>(k); });
}

IndexSet make_primes() {
  return IndexSet("primes", [] { return std::make_unique<PrimesCursor>(); });
}

IndexSet make_n2logn() {
  return IndexSet("n2logn", [] { return std::make_unique<N2LogNCursor>(); });
}

IndexSet make_progression(uint64_t q, uint64_t jp) {
  if (q < 1) throw std::invalid_argument("progression: q must be >= 1");
  if (jp > q) throw std::invalid_argument("progression: residue out of range");
  uint64_t first = (jp == 0) ? q : jp;
  return IndexSet("progression(" + std::to_string(q) + "," + std::to_string(jp) + ")",
                  [q, first] { return std::make_unique<ProgressionCursor>(q, first); });
}

IndexSet make_explicit(std::vector<uint64_t> elements, std::string label) {
  for (size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == 0 || elements[i] > kMaxElement)
      throw std::invalid_argument("explicit set: element out of range");
    if (i > 0 && elements[i] <= elements[i - 1])
      throw std::invalid_argument("explicit set: not strictly increasing");
  }
  auto shared = std::make_shared<const std::vector<uint64_t>>(std::move(elements));
  return IndexSet(std::move(label), [shared] { return std::make_unique<VectorCursor>(shared); });
}

IndexSet make_explicit_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<uint64_t> elems;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    elems.push_back(std::stoull(line));
  }
  return make_explicit(std::move(elems), "explicit(" + path + ")");
}

IndexSet filter_set(const IndexSet& base, std::string descriptor,
                    std::function<bool(uint64_t)> keep) {
  auto pred = std::make_shared<const std::function<bool(uint64_t)>>(std::move(keep));
  auto factory = base;  // copy: holds the base factory
  return IndexSet(std::move(descriptor), [factory, pred] {
    return std::make_unique<FilterCursor>(factory.cursor(), pred.get());
  });
}

GrowthReport sublacunarity_report(const IndexSet& R, const std::vector<uint64_t>& checkpoints) {
  for (size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("sublacunarity_report: checkpoints must increase");
  }
  GrowthReport rep;
  rep.checkpoints = checkpoints;
  if (checkpoints.empty()) return rep;
  rep.counts.assign(checkpoints.size(), 0);
  uint64_t count = 0;
  size_t ci = 0;
  R.for_each_upto(checkpoints.back(), [&](uint64_t v) {
    while (ci < checkpoints.size() && v > checkpoints[ci]) rep.counts[ci++] = count;
    ++count;
  });
  while (ci < checkpoints.size()) rep.counts[ci++] = count;
  for (size_t i = 0; i < checkpoints.size(); ++i) {
    double logN = std::log(static_cast<double>(checkpoints[i]));
    rep.ratios.push_back(rep.counts[i] == 0 ? std::numeric_limits<double>::infinity()
                                            : logN / static_cast<double>(rep.counts[i]));
  }
  return rep;
}

std::vector<double> relative_mean_trace(const IndexSet& S, const IndexSet& R,
                                        const std::vector<uint64_t>& checkpoints) {
  for (size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("relative_mean_trace: checkpoints must increase");
  }
  if (checkpoints.empty()) return {};
  const uint64_t limit = checkpoints.back();

  auto sc = S.cursor();
  auto rc = R.cursor();
  std::optional<uint64_t> sv = sc->next();
  std::vector<double> out;
  uint64_t r_count = 0, s_count = 0;
  size_t ci = 0;
  while (auto rv = rc->next()) {
    if (*rv > limit) break;
    while (ci < checkpoints.size() && *rv > checkpoints[ci]) {
      out.push_back(r_count == 0 ? 0.0 : static_cast<double>(s_count) / static_cast<double>(r_count));
      ++ci;
    }
    if (sv && *sv < *rv) {
      throw std::runtime_error("relative_mean_trace: element " + std::to_string(*sv) +
                               " of S is not in R");
    }
    ++r_count;
    if (sv && *sv == *rv) {
      ++s_count;
      sv = sc->next();
    }
  }
  if (sv && *sv <= limit) {
    throw std::runtime_error("relative_mean_trace: element " + std::to_string(*sv) +
                             " of S is not in R");
  }
  while (ci < checkpoints.size()) {
    out.push_back(r_count == 0 ? 0.0 : static_cast<double>(s_count) / static_cast<double>(r_count));
    ++ci;
  }
  return out;
}

}  // namespace rotlab
