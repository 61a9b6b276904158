#include "rotlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace rotlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> unit(double x) { return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)}; }

}  // namespace

DensityFunction DensityFunction::constant(double c) {
  return from_segments({{0.0, 1.0, c, c}});
}

DensityFunction DensityFunction::step(const std::vector<std::pair<double, double>>& sv) {
  if (sv.empty() || sv.front().first != 0.0)
    throw std::invalid_argument("DensityFunction::step: breakpoints must start at 0");
  std::vector<Segment> segs;
  for (size_t i = 0; i < sv.size(); ++i) {
    double a = sv[i].first;
    double b = (i + 1 < sv.size()) ? sv[i + 1].first : 1.0;
    if (b <= a) throw std::invalid_argument("DensityFunction::step: breakpoints not increasing");
    segs.push_back({a, b, sv[i].second, sv[i].second});
  }
  return from_segments(std::move(segs));
}

DensityFunction DensityFunction::box(double a, double b, double height) {
  if (!(0.0 <= a && a < b && b <= 1.0)) throw std::invalid_argument("box: need 0 <= a < b <= 1");
  std::vector<Segment> segs;
  if (a > 0.0) segs.push_back({0.0, a, 0.0, 0.0});
  segs.push_back({a, b, height, height});
  if (b < 1.0) segs.push_back({b, 1.0, 0.0, 0.0});
  return from_segments(std::move(segs));
}

DensityFunction DensityFunction::from_segments(std::vector<Segment> segs) {
  if (segs.empty()) throw std::invalid_argument("DensityFunction: no segments");
  if (segs.front().a != 0.0 || segs.back().b != 1.0)
    throw std::invalid_argument("DensityFunction: segments must cover [0,1)");
  for (size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    if (!(s.a < s.b)) throw std::invalid_argument("DensityFunction: empty segment");
    if (i > 0 && segs[i - 1].b != s.a)
      throw std::invalid_argument("DensityFunction: segments must be contiguous");
    if (s.va < 0.0 || s.vb < 0.0) throw std::invalid_argument("DensityFunction: negative value");
  }
  DensityFunction f;
  f.segs_ = std::move(segs);
  return f;
}

size_t DensityFunction::find_segment(double x) const {
  auto it = std::upper_bound(segs_.begin(), segs_.end(), x,
                             [](double v, const Segment& s) { return v < s.a; });
  if (it == segs_.begin()) return 0;
  return static_cast<size_t>(it - segs_.begin()) - 1;
}

double DensityFunction::eval(double x) const {
  x -= std::floor(x);
  const Segment& s = segs_[find_segment(x)];
  double t = (x - s.a) / (s.b - s.a);
  return s.va + (s.vb - s.va) * t;
}

double DensityFunction::eval_left(double x) const {
  x -= std::floor(x);
  if (x == 0.0) return segs_.back().vb;
  size_t i = find_segment(x);
  if (segs_[i].a == x) return i == 0 ? segs_.back().vb : segs_[i - 1].vb;
  const Segment& s = segs_[i];
  double t = (x - s.a) / (s.b - s.a);
  return s.va + (s.vb - s.va) * t;
}

double DensityFunction::integral() const {
  double total = 0.0;
  for (const Segment& s : segs_) total += (s.b - s.a) * 0.5 * (s.va + s.vb);
  return total;
}

double DensityFunction::sup() const {
  double m = 0.0;
  for (const Segment& s : segs_) m = std::max({m, s.va, s.vb});
  return m;
}

std::complex<double> DensityFunction::fourier(int64_t p) const {
  if (p == 0) return {integral(), 0.0};
  // over [a,b): f(x) = va + m(x-a) with m = (vb-va)/(b-a);
  // integral f e_p = (vb e(pb) - va e(pa)) / (2 pi i p) - m (e(pb) - e(pa)) / (2 pi i p)^2
  const std::complex<double> tpip{0.0, kTwoPi * static_cast<double>(p)};
  std::complex<double> total{0.0, 0.0};
  for (const Segment& s : segs_) {
    const double m = (s.vb - s.va) / (s.b - s.a);
    const std::complex<double> ea = unit(static_cast<double>(p) * s.a);
    const std::complex<double> eb = unit(static_cast<double>(p) * s.b);
    total += (s.vb * eb - s.va * ea) / tpip - m * (eb - ea) / (tpip * tpip);
  }
  return total;
}

DensityFunction DensityFunction::scaled(double c) const {
  std::vector<Segment> segs = segs_;
  for (Segment& s : segs) {
    s.va *= c;
    s.vb *= c;
  }
  return from_segments(std::move(segs));
}

DensityFunction DensityFunction::truncate(double level) const {
  std::vector<Segment> out;
  for (const Segment& s : segs_) {
    if (s.va <= level && s.vb <= level) {
      out.push_back(s);
      continue;
    }
    if (s.va >= level && s.vb >= level) {
      out.push_back({s.a, s.b, level, level});
      continue;
    }
    // one crossing strictly inside
    double t = (level - s.va) / (s.vb - s.va);
    double xc = s.a + t * (s.b - s.a);
    if (s.va < level) {
      out.push_back({s.a, xc, s.va, level});
      out.push_back({xc, s.b, level, level});
    } else {
      out.push_back({s.a, xc, level, level});
      out.push_back({xc, s.b, level, s.vb});
    }
  }
  return from_segments(std::move(out));
}

DensityFunction DensityFunction::mollify(double h) const {
  // jump locations (segment boundaries, including the wrap point 0)
  std::vector<double> jumps;
  for (size_t i = 0; i < segs_.size(); ++i) {
    double left = (i == 0) ? segs_.back().vb : segs_[i - 1].vb;
    if (left != segs_[i].va) jumps.push_back(segs_[i].a);
  }
  if (jumps.empty()) return *this;

  double min_gap = 1.0;
  for (size_t i = 0; i < jumps.size(); ++i) {
    double next = (i + 1 < jumps.size()) ? jumps[i + 1] : jumps[0] + 1.0;
    min_gap = std::min(min_gap, next - jumps[i]);
  }
  h = std::min(h, 0.999 * min_gap);

  struct Ramp {
    double start, end;  // mod 1; may wrap
    double vs, ve;
    bool covers(double x) const {
      double d = x - start;
      d -= std::floor(d);
      double len = end - start;
      len -= std::floor(len);
      return d <= len;
    }
    double value(double x) const {
      double d = x - start;
      d -= std::floor(d);
      double len = end - start;
      len -= std::floor(len);
      return vs + (ve - vs) * (d / len);
    }
  };
  std::vector<Ramp> ramps;
  std::set<double> cuts;
  cuts.insert(0.0);
  for (const Segment& s : segs_) cuts.insert(s.a);
  for (double j : jumps) {
    double a = j - h / 2, b = j + h / 2;
    double am = a - std::floor(a), bm = b - std::floor(b);
    ramps.push_back({am, bm, eval_left(am), eval(bm)});
    cuts.insert(am);
    cuts.insert(bm);
  }

  std::vector<double> ys(cuts.begin(), cuts.end());
  auto value_pair = [&](double ya, double yb) -> std::pair<double, double> {
    double mid = ya + 0.5 * (yb - ya);
    for (const Ramp& r : ramps) {
      if (r.covers(mid)) return {r.value(ya), r.value(yb)};
    }
    return {eval(ya), eval_left(yb == 0.0 ? 1.0 : yb)};
  };
  std::vector<Segment> out;
  for (size_t i = 0; i < ys.size(); ++i) {
    double a = ys[i];
    double b = (i + 1 < ys.size()) ? ys[i + 1] : 1.0;
    if (b <= a) continue;
    auto [va, vb] = value_pair(a, b == 1.0 ? 1.0 : b);
    out.push_back({a, b, va, vb});
  }
  return from_segments(std::move(out));
}

double DensityFunction::l1_distance(const DensityFunction& other) const {
  std::set<double> cuts;
  for (const Segment& s : segs_) cuts.insert(s.a);
  for (const Segment& s : other.segs_) cuts.insert(s.a);
  std::vector<double> ys(cuts.begin(), cuts.end());
  double total = 0.0;
  for (size_t i = 0; i < ys.size(); ++i) {
    double a = ys[i];
    double b = (i + 1 < ys.size()) ? ys[i + 1] : 1.0;
    if (b <= a) continue;
    double da = eval(a) - other.eval(a);
    double bl = (b == 1.0) ? 1.0 : b;
    double db = eval_left(bl) - other.eval_left(bl);
    if (da * db >= 0.0) {
      total += 0.5 * std::abs(da + db) * (b - a);
    } else {
      double t = da / (da - db);  // zero crossing
      double xc = a + t * (b - a);
      total += 0.5 * std::abs(da) * (xc - a) + 0.5 * std::abs(db) * (b - xc);
    }
  }
  return total;
}

}  // namespace rotlab
