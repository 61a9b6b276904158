#include "rotlab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rotlab/accum.hpp"

namespace rotlab {

IndexSet visit_set(const IndexSet& R, TorusPoint alpha, const TorusRegion& B) {
  std::string desc = "visit(" + R.descriptor() + ",alpha=" + alpha.to_hex() + ",B=" +
                     B.to_string() + ")";
  TorusRegion region = B;
  return filter_set(R, std::move(desc),
                    [region, alpha](uint64_t r) { return region.contains(orbit_point(r, alpha)); });
}

VisitSpectrumReport visit_spectrum_check(const IndexSet& R, TorusPoint alpha,
                                         const TorusRegion& B, uint64_t N, int64_t pmax) {
  if (B.measure_ulps() == 0) throw std::invalid_argument("visit_spectrum_check: mu(B) = 0");
  IndexSet S = visit_set(R, alpha, B);
  Spectrum emp = spectrum_set(S, alpha, N, pmax);
  VisitSpectrumReport rep;
  rep.density = static_cast<double>(S.count_upto(N)) / static_cast<double>(R.count_upto(N));
  rep.target_density = B.measure();
  rep.max_error = 0.0;
  const double mass = B.measure();
  for (int64_t p = -pmax; p <= pmax; ++p) {
    std::complex<double> target = B.fourier_integral(p) / mass;
    double err = std::abs(emp.at(p) - target);
    rep.rows.push_back({p, emp.at(p), target, err});
    rep.max_error = std::max(rep.max_error, err);
  }
  return rep;
}

namespace {

// Joint scanner over cached member bitsets.
class SetScan final : public PasteFamily::Scan {
 public:
  SetScan(std::vector<const std::vector<uint64_t>*> bits, uint64_t limit)
      : bits_(std::move(bits)), limit_(limit) {}
  bool next(double* out) override {
    if (n_ >= limit_) return false;
    ++n_;
    for (size_t i = 0; i < bits_.size(); ++i) out[i] = bitset_test(*bits_[i], n_) ? 1.0 : 0.0;
    return true;
  }

 private:
  std::vector<const std::vector<uint64_t>*> bits_;
  uint64_t limit_;
  uint64_t n_ = 0;
};

class SetPasteFamily final : public PasteFamily {
 public:
  SetPasteFamily(const SetFamily& fam, uint64_t horizon) : fam_(fam), horizon_(horizon) {}

  size_t size() const override { return fam_.count; }
  double tolerance(size_t k) const override { return fam_.eps(k); }

  std::unique_ptr<Scan> scan(const std::vector<size_t>& ids) const override {
    std::vector<const std::vector<uint64_t>*> bits;
    for (size_t id : ids) bits.push_back(&bitset_for(id));
    return std::make_unique<SetScan>(std::move(bits), horizon_);
  }

  const std::vector<uint64_t>& bitset_for(size_t k) const {
    auto it = cache_.find(k);
    if (it == cache_.end()) {
      it = cache_.emplace(k, fam_.member(k).prefix_bitset(horizon_)).first;
    }
    return it->second;
  }

 private:
  const SetFamily& fam_;
  uint64_t horizon_;
  mutable std::map<size_t, std::vector<uint64_t>> cache_;
};

}  // namespace

PastedSet paste_sets(const SetFamily& family, uint64_t horizon) {
  SetPasteFamily pf(family, horizon);
  PasteSchedule sched = paste_family(pf, horizon);

  // eps_1 = 0: the family is constant in seminorm and the pasted set is
  // the first member itself
  if (sched.breakpoints.size() == 1 && sched.eps.size() == 1 && sched.eps[0] == 0.0) {
    std::vector<uint64_t> elems;
    const std::vector<uint64_t>& member_bits = pf.bitset_for(1);
    for (uint64_t n = 1; n <= horizon; ++n) {
      if (bitset_test(member_bits, n)) elems.push_back(n);
    }
    return {make_explicit(std::move(elems), "pasted(constant family)"), std::move(sched)};
  }

  // materialize the pasted set on [1, horizon]
  std::vector<uint64_t> bits((horizon >> 6) + 1, 0);
  const size_t blocks = sched.breakpoints.size();
  for (size_t k = 1; k <= blocks; ++k) {
    uint64_t lo = sched.breakpoints[k - 1];  // exclusive
    uint64_t hi = (k < blocks) ? sched.breakpoints[k] : horizon;  // inclusive
    if (lo >= hi) continue;
    const std::vector<uint64_t>& member_bits = pf.bitset_for(k);
    for (uint64_t n = lo + 1; n <= hi; ++n) {
      if (bitset_test(member_bits, n)) bits[n >> 6] |= (1ull << (n & 63));
    }
  }
  std::vector<uint64_t> elems;
  for (uint64_t n = 1; n <= horizon; ++n) {
    if (bitset_test(bits, n)) elems.push_back(n);
  }
  PastedSet out{make_explicit(std::move(elems), "pasted(" + std::to_string(blocks) + " blocks)"),
                std::move(sched)};
  return out;
}

std::vector<double> verify_pasted_set(const SetFamily& family, const PasteSchedule& schedule) {
  SetPasteFamily pf(family, schedule.horizon);
  return paste_eq50_ratios(pf, schedule);
}

RepresentReport represent_indicator(const IndexSet& R, TorusPoint alpha,
                                    const IntervalStream& B, uint64_t horizon, int64_t pmax) {
  if (B.count == 0) throw std::invalid_argument("represent_indicator: empty stream");
  if (B.count == 1 && B.tail_bound == 0.0) {
    // a single interval reduces to the plain visit set
    TorusRegion region = TorusRegion::from_intervals({B.interval(1)});
    IndexSet S = visit_set(R, alpha, region);
    RepresentReport rep;
    rep.pasted.set = make_explicit(S.elements_upto(horizon), S.descriptor());
    rep.pasted.schedule.breakpoints = {1};
    rep.pasted.schedule.eps = {0.0};
    rep.pasted.schedule.horizon = horizon;
    rep.target_measure = region.measure();
    for (uint64_t N = 10; N <= horizon; N *= 10) rep.trace_checkpoints.push_back(N);
    if (rep.trace_checkpoints.empty() || rep.trace_checkpoints.back() != horizon)
      rep.trace_checkpoints.push_back(horizon);
    for (uint64_t N : rep.trace_checkpoints)
      rep.density_trace.push_back(static_cast<double>(rep.pasted.set.count_upto(N)) /
                                  static_cast<double>(N));
    rep.spectrum = spectrum_set(rep.pasted.set, alpha, horizon, pmax);
    rep.spectrum_error = 0.0;
    for (int64_t p = -pmax; p <= pmax; ++p) {
      std::complex<double> t = region.fourier_integral(p) / region.measure();
      rep.target_coeffs.push_back(t);
      rep.spectrum_error = std::max(rep.spectrum_error, std::abs(rep.spectrum.at(p) - t));
    }
    return rep;
  }
  // nested unions B_k = I_1 u ... u I_k and their exact measures
  std::vector<std::vector<std::pair<TorusPoint, TorusPoint>>> prefixes(B.count + 1);
  std::vector<double> measure(B.count + 1, 0.0);
  std::vector<TorusRegion> regions(B.count + 1);
  for (size_t j = 1; j <= B.count; ++j) {
    prefixes[j] = prefixes[j - 1];
    prefixes[j].push_back(B.interval(j));
    regions[j] = TorusRegion::from_intervals(prefixes[j]);
    measure[j] = regions[j].measure();
  }
  const double total = measure[B.count];

  SetFamily fam;
  fam.count = B.count;
  IndexSet base = R;
  auto regs = std::make_shared<std::vector<TorusRegion>>(regions.begin() + 1, regions.end());
  fam.member = [base, alpha, regs](size_t k) { return visit_set(base, alpha, (*regs)[k - 1]); };
  // isometry: ||1_{S_k} - 1_{S_l}||_1 = mu(B_k triangle B_l) = mu(B_l) - mu(B_k)
  std::vector<double> meas(measure);
  double tail = B.tail_bound;
  fam.eps = [meas, total, tail](size_t k) { return 2.0 * (total - meas[k] + tail); };

  RepresentReport rep;
  rep.pasted = paste_sets(fam, horizon);
  rep.target_measure = total;

  for (uint64_t N = 10; N <= horizon; N *= 10) rep.trace_checkpoints.push_back(N);
  if (rep.trace_checkpoints.empty() || rep.trace_checkpoints.back() != horizon)
    rep.trace_checkpoints.push_back(horizon);
  {
    uint64_t count = 0;
    size_t ci = 0;
    rep.density_trace.assign(rep.trace_checkpoints.size(), 0.0);
    rep.pasted.set.for_each_upto(horizon, [&](uint64_t s) {
      while (ci < rep.trace_checkpoints.size() && s > rep.trace_checkpoints[ci]) {
        rep.density_trace[ci] =
            static_cast<double>(count) / static_cast<double>(rep.trace_checkpoints[ci]);
        ++ci;
      }
      ++count;
    });
    while (ci < rep.trace_checkpoints.size()) {
      rep.density_trace[ci] =
          static_cast<double>(count) / static_cast<double>(rep.trace_checkpoints[ci]);
      ++ci;
    }
  }

  rep.spectrum = spectrum_set(rep.pasted.set, alpha, horizon, pmax);
  rep.spectrum_error = 0.0;
  const TorusRegion& full = regions[B.count];
  for (int64_t p = -pmax; p <= pmax; ++p) {
    std::complex<double> t = full.fourier_integral(p) / total;
    rep.target_coeffs.push_back(t);
    rep.spectrum_error = std::max(rep.spectrum_error, std::abs(rep.spectrum.at(p) - t));
  }
  return rep;
}

}  // namespace rotlab
