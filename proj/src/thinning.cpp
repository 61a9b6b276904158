#include "rotlab/thinning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rotlab/accum.hpp"
#include "rotlab/rng.hpp"
#include "rotlab/trig_grid.hpp"

namespace rotlab {

double DeviationCertificate::max_ratio() const {
  double m = 0.0;
  for (const DeviationRow& r : rows) m = std::max(m, r.ratio);
  return m;
}

namespace {

class ThinnedCursor final : public SequenceCursor {
 public:
  ThinnedCursor(std::unique_ptr<SequenceCursor> base, const Weight* sigma, uint64_t seed)
      : base_(std::move(base)), sigma_(sigma), seed_(seed) {}
  std::optional<uint64_t> next() override {
    while (auto r = base_->next()) {
      ++pos_;
      double p = sigma_->value(pos_, *r);
      if (p < 0.0 || p > 1.0)
        throw std::runtime_error("thin: sigma outside [0,1] at element " + std::to_string(*r));
      if (keyed_bernoulli(seed_, *r, p)) return r;
    }
    return std::nullopt;
  }

 private:
  std::unique_ptr<SequenceCursor> base_;
  const Weight* sigma_;
  uint64_t pos_ = 0;
  uint64_t seed_;
};

IndexSet thinned_set(const Weight& sigma, uint64_t seed) {
  auto sigp = std::make_shared<Weight>(sigma);
  std::string desc = "thinned(" + sigma.label + ",seed=" + std::to_string(seed) + ")";
  IndexSet base = sigma.base;
  return IndexSet(std::move(desc), [base, sigp, seed] {
    return std::make_unique<ThinnedCursor>(base.cursor(), sigp.get(), seed);
  });
}

}  // namespace

ThinResult thin(const Weight& sigma, const ThinningConfig& config) {
  if (config.grid_multiplier < 1) throw std::invalid_argument("thin: grid multiplier must be >= 1");
  if (config.c < 13.0) throw std::invalid_argument("thin: certificate constant must be >= 13");
  ThinResult out{thinned_set(sigma, config.seed), {}};
  out.certificate.seed = config.seed;
  out.certificate.grid_multiplier = config.grid_multiplier;
  if (config.checkpoints.empty()) return out;

  std::vector<uint64_t> cps = config.checkpoints;
  std::sort(cps.begin(), cps.end());
  const uint64_t maxN = cps.back();

  std::vector<std::complex<double>> c(maxN + 1, {0.0, 0.0});
  std::vector<double> mass_at(cps.size(), 0.0);
  {
    Kahan running;
    size_t ci = 0;
    uint64_t pos = 0;
    auto cur = sigma.base.cursor();
    while (auto r = cur->next()) {
      if (*r > maxN) break;
      while (ci < cps.size() && *r > cps[ci]) mass_at[ci++] = running.value();
      ++pos;
      double p = sigma.value(pos, *r);
      if (p < 0.0 || p > 1.0)
        throw std::runtime_error("thin: sigma outside [0,1] at element " + std::to_string(*r));
      bool kept = keyed_bernoulli(config.seed, *r, p);
      c[*r] = {(kept ? 1.0 : 0.0) - p, 0.0};
      running.add(p);
    }
    while (ci < cps.size()) mass_at[ci++] = running.value();
  }

  for (size_t i = 0; i < cps.size(); ++i) {
    const uint64_t N = cps[i];
    uint64_t grid = static_cast<uint64_t>(config.grid_multiplier) * N;
    bool capped = grid > kGridCap;
    if (capped) grid = kGridCap;
    std::vector<std::complex<double>> prefix(c.begin(), c.begin() + static_cast<size_t>(N) + 1);
    double max_abs = grid_max_abs(prefix, grid);
    double normalizer = std::sqrt(std::log(static_cast<double>(N)) * mass_at[i]);
    DeviationRow row{N, grid, capped, max_abs, mass_at[i], normalizer,
                     normalizer > 0.0 ? max_abs / normalizer : 0.0};
    out.certificate.rows.push_back(row);
  }
  return out;
}

double bernstein_bound(uint64_t /*K*/, double variance_sum, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("bernstein_bound: t must be positive");
  if (variance_sum < 0.0) throw std::invalid_argument("bernstein_bound: negative variance");
  double gauss = variance_sum == 0.0 ? 0.0 : std::exp(-(t * t / 8.0) / variance_sum);
  return 4.0 * std::max(gauss, std::exp(-t / 3.0));
}

namespace {

// Element-capped weighted average A^w_{r in R(N)} e(r beta).
std::complex<double> weighted_average_elements(const Weight& w, uint64_t N, TorusPoint beta) {
  KahanComplex acc;
  Kahan mass;
  uint64_t pos = 0;
  auto cur = w.base.cursor();
  while (auto r = cur->next()) {
    if (*r > N) break;
    ++pos;
    double wn = w.value(pos, *r);
    acc.add(wn * torus_exp(orbit_point(*r, beta)));
    mass.add(wn);
  }
  if (!(mass.value() > 0.0)) throw std::runtime_error("set_from_bounded_weight: zero weight mass");
  return acc.value() / mass.value();
}

std::complex<double> set_average_elements(const IndexSet& S, uint64_t N, TorusPoint beta) {
  KahanComplex acc;
  uint64_t count = 0;
  S.for_each_upto(N, [&](uint64_t s) {
    acc.add(torus_exp(orbit_point(s, beta)));
    ++count;
  });
  if (count == 0) throw std::runtime_error("set_from_bounded_weight: thinned set empty");
  return acc.value() / static_cast<double>(count);
}

}  // namespace

BoundedWeightSetReport set_from_bounded_weight(const Weight& w, TorusPoint alpha,
                                               const ThinningConfig& config, uint64_t N,
                                               int64_t pmax) {
  if (!w.sup_bound.has_value() || !std::isfinite(*w.sup_bound))
    throw std::invalid_argument("set_from_bounded_weight: weight must carry a finite bound");
  const double bound = *w.sup_bound;
  if (!(bound > 0.0)) throw std::invalid_argument("set_from_bounded_weight: zero bound");

  Weight sigma;
  sigma.base = w.base;
  sigma.label = "(" + w.label + ")/" + std::to_string(bound);
  sigma.sup_bound = 1.0;
  WeightFn wv = w.value;
  sigma.value = [wv, bound](uint64_t pos, uint64_t elem) { return wv(pos, elem) / bound; };

  BoundedWeightSetReport rep;
  rep.thin_result = thin(sigma, config);

  // w(R(N)) and the Eq.-114-shaped rate
  Kahan wmass;
  {
    uint64_t pos = 0;
    auto cur = w.base.cursor();
    while (auto r = cur->next()) {
      if (*r > N) break;
      ++pos;
      wmass.add(w.value(pos, *r));
    }
  }
  const double rate = std::sqrt(bound * std::log(static_cast<double>(N)) /
                                std::max(1e-300, wmass.value()));

  std::vector<std::pair<std::string, TorusPoint>> probes;
  for (int64_t p = -pmax; p <= pmax; ++p) {
    if (p == 0) continue;
    probes.push_back({"p*alpha,p=" + std::to_string(p),
                      TorusPoint{static_cast<uint64_t>(p) * alpha.frac}});
  }
  for (int i = 0; i < 8; ++i) {
    TorusPoint beta{keyed_u64(config.seed ^ 0x9e3779b97f4a7c15ull, static_cast<uint64_t>(i))};
    probes.push_back({"random#" + std::to_string(i), beta});
  }

  rep.max_ratio = 0.0;
  for (auto& [label, beta] : probes) {
    double dev = std::abs(set_average_elements(rep.thin_result.set, N, beta) -
                          weighted_average_elements(w, N, beta));
    double ratio = dev / rate;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.probes.push_back({label, beta, dev, rate, ratio});
  }
  return rep;
}

}  // namespace rotlab
