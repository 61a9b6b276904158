#include "rotlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "rotlab/accum.hpp"

namespace rotlab {

double Weight::mean_upto(uint64_t positions) const {
  Kahan acc;
  uint64_t pos = 0;
  auto cur = base.cursor();
  while (pos < positions) {
    auto r = cur->next();
    if (!r) break;
    ++pos;
    acc.add(value(pos, *r));
  }
  if (pos == 0) throw std::runtime_error("Weight::mean_upto: empty base");
  return acc.value() / static_cast<double>(pos);
}

Weight weight_from_density(const DensityFunction& rho, const IndexSet& R, TorusPoint alpha) {
  DensityFunction f = rho;
  Weight w;
  w.base = R;
  w.value = [f, alpha](uint64_t, uint64_t r) { return f.eval(orbit_point(r, alpha).to_double()); };
  w.sup_bound = rho.sup();
  w.label = "rho(.alpha) on " + R.descriptor();
  return w;
}

namespace {

// Joint scan over the positions of the common base, evaluating every
// requested member's weight.
class WeightScan final : public PasteFamily::Scan {
 public:
  WeightScan(const IndexSet& base, std::vector<const WeightFn*> fns)
      : cursor_(base.cursor()), fns_(std::move(fns)) {}
  bool next(double* out) override {
    auto r = cursor_->next();
    if (!r) return false;
    ++pos_;
    for (size_t i = 0; i < fns_.size(); ++i) out[i] = (*fns_[i])(pos_, *r);
    return true;
  }

 private:
  std::unique_ptr<SequenceCursor> cursor_;
  uint64_t pos_ = 0;
  std::vector<const WeightFn*> fns_;
};

class WeightPasteFamily final : public PasteFamily {
 public:
  WeightPasteFamily(const IndexSet& base, const std::vector<Weight>& fam,
                    const std::vector<double>& eps)
      : base_(base), fam_(fam), eps_(eps) {}

  size_t size() const override { return fam_.size(); }
  double tolerance(size_t k) const override { return eps_.at(k - 1); }
  double member_sup(size_t k) const override {
    return fam_.at(k - 1).sup_bound.value_or(std::numeric_limits<double>::infinity());
  }

  std::unique_ptr<Scan> scan(const std::vector<size_t>& ids) const override {
    std::vector<const WeightFn*> fns;
    for (size_t id : ids) fns.push_back(&fam_.at(id - 1).value);
    return std::make_unique<WeightScan>(base_, std::move(fns));
  }

 private:
  const IndexSet& base_;
  const std::vector<Weight>& fam_;
  const std::vector<double>& eps_;
};

Weight pasted_weight_value(const IndexSet& base, std::vector<Weight> family,
                           const PasteSchedule& sched, std::string label) {
  auto fams = std::make_shared<std::vector<Weight>>(std::move(family));
  auto schedp = std::make_shared<PasteSchedule>(sched);
  Weight w;
  w.base = base;
  w.label = std::move(label);
  double sup = 0.0;
  for (size_t k = 0; k < sched.breakpoints.size(); ++k) {
    sup = std::max(sup, (*fams)[k].sup_bound.value_or(
                            std::numeric_limits<double>::infinity()));
  }
  w.sup_bound = sup;
  w.value = [fams, schedp](uint64_t pos, uint64_t elem) -> double {
    size_t own = schedp->owner(pos);
    if (own == 0) return 0.0;
    return (*fams)[own - 1].value(pos, elem);
  };
  return w;
}

}  // namespace

PastedWeight paste_weights(const IndexSet& base, const std::vector<Weight>& family,
                           const std::vector<double>& eps, uint64_t horizon) {
  if (family.size() < 2) throw std::invalid_argument("paste_weights: need at least two members");
  if (eps.size() != family.size()) throw std::invalid_argument("paste_weights: eps size mismatch");
  for (const Weight& w : family) {
    if (w.base.descriptor() != base.descriptor())
      throw std::invalid_argument("paste_weights: members must share the base set");
  }
  WeightPasteFamily pf(base, family, eps);
  PasteSchedule sched = paste_family(pf, horizon);
  if (sched.breakpoints.size() == 1 && sched.eps.size() == 1 && sched.eps[0] == 0.0) {
    Weight w = family[0];  // constant family in seminorm
    return {std::move(w), std::move(sched)};
  }
  Weight w = pasted_weight_value(base, family, sched,
                                 "pasted-weight(" + std::to_string(sched.breakpoints.size()) +
                                     " blocks) on " + base.descriptor());
  return {std::move(w), std::move(sched)};
}

DensityRepresentReport represent_density(const DensityFunction& rho, const IndexSet& R,
                                         TorusPoint alpha, uint64_t horizon, int64_t pmax) {
  const double mass = rho.integral();
  if (!(mass > 0.0)) throw std::invalid_argument("represent_density: mu(rho) = 0");

  // Bounded approximants: truncate at a level doubling per block until
  // the full sup is reached, then mollify jumps with ramp 2^-k.
  const double sup = rho.sup();
  std::vector<DensityFunction> approx;
  std::vector<Weight> members;
  std::vector<double> dist_to_rho;
  const size_t kmax = 24;
  double level = std::min(sup, 2.0);
  for (size_t k = 1; k <= kmax; ++k) {
    DensityFunction trunc = (level < sup) ? rho.truncate(level) : rho;
    DensityFunction rk = trunc.mollify(std::ldexp(1.0, -static_cast<int>(k)));
    approx.push_back(rk);
    members.push_back(weight_from_density(rk, R, alpha));
    dist_to_rho.push_back(rk.l1_distance(rho));
    level *= 2.0;
  }
  // eps_k = 2 sup_{l >= k} ||rho_l - rho_k||_1, bounded through rho by
  // the triangle inequality and the exact pairwise distances on hand.
  std::vector<double> eps(approx.size());
  for (size_t k = 0; k < approx.size(); ++k) {
    double worst = dist_to_rho[k] + dist_to_rho.back();
    for (size_t l = k; l < approx.size(); ++l)
      worst = std::max(worst, approx[k].l1_distance(approx[l]));
    eps[k] = 2.0 * worst;
  }

  DensityRepresentReport rep;
  rep.approximants = approx;
  rep.target_mass = mass;
  rep.pasted = paste_weights(R, members, eps, horizon);

  for (uint64_t N = 10; N <= horizon; N *= 10) rep.trace_checkpoints.push_back(N);
  if (rep.trace_checkpoints.empty() || rep.trace_checkpoints.back() != horizon)
    rep.trace_checkpoints.push_back(horizon);
  for (uint64_t N : rep.trace_checkpoints) rep.mean_trace.push_back(rep.pasted.weight.mean_upto(N));

  rep.spectrum = spectrum_weight(R, rep.pasted.weight.value, rep.pasted.weight.label, alpha,
                                 horizon, pmax);
  rep.spectrum_error = 0.0;
  for (int64_t p = -pmax; p <= pmax; ++p) {
    std::complex<double> t = rho.fourier(p) / mass;
    rep.spectrum_error = std::max(rep.spectrum_error, std::abs(rep.spectrum.at(p) - t));
  }
  return rep;
}

QMeasure q_measure(const std::vector<double>& sigma, const std::vector<double>& w) {
  if (sigma.size() != w.size()) throw std::invalid_argument("q_measure: size mismatch");
  for (size_t j = 1; j < sigma.size(); ++j) {
    if (sigma[j] > sigma[j - 1]) throw std::invalid_argument("q_measure: sigma not nonincreasing");
  }
  QMeasure q;
  q.masses.resize(sigma.size());
  Kahan wsum, total;
  for (size_t j = 0; j < sigma.size(); ++j) {
    wsum.add(w[j]);
    double next = (j + 1 < sigma.size()) ? sigma[j + 1] : 0.0;
    q.masses[j] = (sigma[j] - next) * wsum.value();
    total.add(q.masses[j]);
  }
  q.total = total.value();
  return q;
}

SbpResult sbp_average(const std::vector<double>& w, const std::vector<double>& sigma,
                      const std::vector<std::complex<double>>& x) {
  const size_t N = w.size();
  if (sigma.size() != N || x.size() != N) throw std::invalid_argument("sbp_average: size mismatch");
  for (size_t j = 1; j < N; ++j) {
    if (sigma[j] > sigma[j - 1])
      throw std::invalid_argument("sbp_average: sigma not nonincreasing");
  }
  for (size_t j = 0; j < N; ++j) {
    if (sigma[j] < 0.0 || w[j] < 0.0) throw std::invalid_argument("sbp_average: negative mass");
  }

  // direct route
  KahanComplex vx;
  Kahan vmass;
  for (size_t j = 0; j < N; ++j) {
    vx.add(sigma[j] * w[j] * x[j]);
    vmass.add(sigma[j] * w[j]);
  }
  if (!(vmass.value() > 0.0)) throw std::invalid_argument("sbp_average: zero total mass");

  // summation-by-parts route: sum_j (sigma_j - sigma_{j+1}) * (prefix w x sum)
  KahanComplex qx;
  Kahan qmass;
  KahanComplex wx_prefix;
  Kahan w_prefix;
  for (size_t j = 0; j < N; ++j) {
    wx_prefix.add(w[j] * x[j]);
    w_prefix.add(w[j]);
    double step = sigma[j] - ((j + 1 < N) ? sigma[j + 1] : 0.0);
    qx.add(step * wx_prefix.value());
    qmass.add(step * w_prefix.value());
  }

  SbpResult out;
  out.direct = vx.value() / vmass.value();
  out.via_q = qx.value() / qmass.value();
  out.v_mass = vmass.value();
  out.q_mass = qmass.value();
  out.relative_difference =
      std::abs(out.direct - out.via_q) /
      std::max({std::abs(out.direct), std::abs(out.via_q), 1e-30});
  return out;
}

FlattenedWeight flatten(const PastedWeight& pw, uint64_t horizon) {
  const PasteSchedule& sched = pw.schedule;
  const size_t blocks = sched.breakpoints.size();
  if (blocks == 0) throw std::invalid_argument("flatten: empty schedule");
  for (double s : sched.block_sup) {
    if (!std::isfinite(s)) throw std::invalid_argument("flatten: unbounded block");
  }

  // running max of the block bounds; normalizer never inflates a weight
  std::vector<double> running_max(blocks), normalizer(blocks);
  double rm = 0.0;
  for (size_t k = 0; k < blocks; ++k) {
    rm = std::max(rm, sched.block_sup[k]);
    running_max[k] = rm;
    normalizer[k] = std::max(1.0, rm);
  }

  // growth criterion N / max_{j<=k} sup_j > k log(r_N) at block starts
  FlattenedWeight out;
  {
    auto cur = pw.weight.base.cursor();
    uint64_t pos = 0;
    size_t k = 0;
    uint64_t next_start = sched.breakpoints[0] + 1;  // first owned position
    while (k < blocks && pos < horizon) {
      auto r = cur->next();
      if (!r) break;
      ++pos;
      if (pos == next_start) {
        FlattenRecord rec;
        rec.block = k + 1;
        rec.block_start = pos;
        rec.normalizer = normalizer[k];
        rec.criterion_lhs = static_cast<double>(pos) / running_max[k];
        rec.criterion_rhs = static_cast<double>(k + 1) * std::log(static_cast<double>(*r));
        rec.ok = rec.criterion_lhs > rec.criterion_rhs;
        out.records.push_back(rec);
        if (!rec.ok) {
          throw std::runtime_error("flatten: growth criterion failed at block " +
                                   std::to_string(k + 1) + " (N=" + std::to_string(pos) + ")");
        }
        ++k;
        next_start = (k < blocks) ? sched.breakpoints[k] + 1 : 0;
      }
    }
  }

  auto schedp = std::make_shared<PasteSchedule>(sched);
  auto norm = std::make_shared<std::vector<double>>(normalizer);
  WeightFn base_fn = pw.weight.value;
  Weight v;
  v.base = pw.weight.base;
  v.label = "flattened(" + pw.weight.label + ")";
  v.sup_bound = 1.0;
  v.value = [base_fn, schedp, norm](uint64_t pos, uint64_t elem) -> double {
    size_t own = schedp->owner(pos);
    if (own == 0) return 0.0;
    return base_fn(pos, elem) / (*norm)[own - 1];
  };
  out.weight = std::move(v);
  return out;
}

}  // namespace rotlab
