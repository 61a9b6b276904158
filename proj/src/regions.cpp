#include "rotlab/regions.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rotlab {

namespace {

inline u128 hi128(uint64_t hi) { return hi == 0 ? kTorusOne : static_cast<u128>(hi); }

}  // namespace

TorusRegion TorusRegion::from_intervals(
    const std::vector<std::pair<TorusPoint, TorusPoint>>& iv) {
  std::vector<Piece> pieces;
  for (auto [a, b] : iv) {
    if (a.frac == b.frac) continue;  // empty interval
    if (a.frac < b.frac) {
      pieces.push_back({a.frac, b.frac});
    } else {  // wraps through 0: [a, 1) and [0, b)
      pieces.push_back({a.frac, 0});
      if (b.frac > 0) pieces.push_back({0, b.frac});
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  std::vector<Piece> merged;
  for (const Piece& p : pieces) {
    if (!merged.empty()) {
      Piece& last = merged.back();
      if (static_cast<u128>(p.lo) < hi128(last.hi))
        throw std::invalid_argument("TorusRegion: overlapping intervals");
      if (static_cast<u128>(p.lo) == hi128(last.hi)) {  // touching: merge
        last.hi = p.hi;
        continue;
      }
    }
    merged.push_back(p);
  }
  TorusRegion r;
  r.pieces_ = std::move(merged);
  return r;
}

TorusRegion TorusRegion::full() {
  TorusRegion r;
  r.pieces_.push_back({0, 0});
  return r;
}

TorusRegion TorusRegion::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::pair<TorusPoint, TorusPoint>> iv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!std::isdigit(static_cast<unsigned char>(line[0])) && line[0] != '.' && line[0] != '0')
      continue;  // header row
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b)) continue;
    iv.emplace_back(torus_from_string(a), torus_from_string(b));
  }
  return from_intervals(iv);
}

bool TorusRegion::contains(TorusPoint x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x.frac,
                             [](uint64_t v, const Piece& p) { return v < p.lo; });
  if (it == pieces_.begin()) return false;
  --it;
  return static_cast<u128>(x.frac) < hi128(it->hi);
}

u128 TorusRegion::measure_ulps() const {
  u128 total = 0;
  for (const Piece& p : pieces_) total += hi128(p.hi) - p.lo;
  return total;
}

std::complex<double> TorusRegion::fourier_integral(int64_t p) const {
  if (p == 0) return {measure(), 0.0};
  // integral over [a,b) of e(px) dx = (e(pb) - e(pa)) / (2 pi i p)
  std::complex<double> num{0.0, 0.0};
  for (const Piece& piece : pieces_) {
    num += character(p, TorusPoint{piece.hi}) - character(p, TorusPoint{piece.lo});
  }
  const std::complex<double> denom{0.0, 2.0 * std::numbers::pi * static_cast<double>(p)};
  return num / denom;
}

std::string TorusRegion::to_string() const {
  std::string s = "{";
  for (size_t i = 0; i < pieces_.size(); ++i) {
    if (i) s += " u ";
    s += "[" + TorusPoint{pieces_[i].lo}.to_hex() + "," +
         (pieces_[i].hi == 0 ? std::string("1") : TorusPoint{pieces_[i].hi}.to_hex()) + ")";
  }
  return s + "}";
}

bool OpenIntervalSet::contains(TorusPoint x) const {
  if (x.frac == 0) return zero_inside_;
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x.frac,
                             [](uint64_t v, const Piece& p) { return v <= p.lo; });
  if (it == pieces_.begin()) return false;
  --it;
  return it->lo < x.frac && static_cast<u128>(x.frac) < hi128(it->hi);
}

bool OpenIntervalSet::closure_contains(TorusPoint x) const {
  if (pieces_.empty()) return zero_inside_ && x.frac == 0;
  if (x.frac == 0) {
    return zero_inside_ || pieces_.front().lo == 0 || pieces_.back().hi == 0;
  }
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x.frac,
                             [](uint64_t v, const Piece& p) { return v < p.lo; });
  if (it == pieces_.begin()) return false;
  --it;
  return static_cast<u128>(x.frac) <= hi128(it->hi);
}

uint64_t OpenIntervalSet::distance_to_closure(TorusPoint x) const {
  if (pieces_.empty()) throw std::logic_error("distance_to_closure on empty set");
  if (closure_contains(x)) return 0;
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x.frac,
                             [](uint64_t v, const Piece& p) { return v < p.lo; });
  // successor piece (circular): gap going up from x to its lo
  const Piece& succ = (it == pieces_.end()) ? pieces_.front() : *it;
  uint64_t up = succ.lo - x.frac;  // u64 wraparound gives the circular gap
  // predecessor piece (circular): gap going down from x to its hi
  const Piece& pred = (it == pieces_.begin()) ? pieces_.back() : *(it - 1);
  uint64_t down = x.frac - pred.hi;  // hi == 0 encodes 2^64 and wraps correctly
  return std::min(up, down);
}

bool OpenIntervalSet::meets_open_interval(TorusPoint center, uint64_t delta) const {
  if (pieces_.empty()) return false;
  return distance_to_closure(center) < delta;
}

void OpenIntervalSet::add_intervals(
    const std::vector<std::pair<uint64_t, uint64_t>>& center_delta) {
  std::vector<Piece> add;
  add.reserve(center_delta.size() + 2);
  for (auto [c, delta] : center_delta) {
    if (delta == 0 || delta >= (1ull << 62))
      throw std::invalid_argument("OpenIntervalSet: bad radius");
    uint64_t s = c - delta;
    uint64_t e = c + delta;
    if (s < e) {
      add.push_back({s, e});
    } else {  // wraps through the top
      add.push_back({s, 0});
      if (e > 0) {
        add.push_back({0, e});
        zero_inside_ = true;
      }
    }
  }
  insert_pieces(std::move(add));
}

void OpenIntervalSet::add_set(const OpenIntervalSet& other) {
  zero_inside_ = zero_inside_ || other.zero_inside_;
  insert_pieces(other.pieces_);
}

void OpenIntervalSet::insert_pieces(std::vector<Piece> add) {
  if (add.empty()) return;
  add.insert(add.end(), pieces_.begin(), pieces_.end());
  std::sort(add.begin(), add.end(), [](const Piece& a, const Piece& b) {
    return a.lo != b.lo ? a.lo < b.lo : hi128(a.hi) < hi128(b.hi);
  });
  std::vector<Piece> merged;
  merged.reserve(add.size());
  for (const Piece& p : add) {
    if (!merged.empty()) {
      Piece& last = merged.back();
      if (static_cast<u128>(p.lo) < hi128(last.hi)) {  // positive overlap
        if (hi128(p.hi) > hi128(last.hi)) last.hi = p.hi;
        continue;
      }
    }
    merged.push_back(p);
  }
  pieces_ = std::move(merged);
  recompute_measure();
}

void OpenIntervalSet::recompute_measure() {
  measure_ = 0;
  for (const Piece& p : pieces_) measure_ += hi128(p.hi) - p.lo;
}

bool OpenIntervalSet::disjoint_from(const OpenIntervalSet& other) const {
  if (zero_inside_ && other.contains(TorusPoint{0})) return false;
  if (other.zero_inside_ && contains(TorusPoint{0})) return false;
  if (zero_inside_ && other.zero_inside_) return false;
  size_t i = 0, j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    const Piece& a = pieces_[i];
    const Piece& b = other.pieces_[j];
    if (static_cast<u128>(a.lo) < hi128(b.hi) && static_cast<u128>(b.lo) < hi128(a.hi))
      return false;  // open intervals overlap with positive measure
    if (hi128(a.hi) <= hi128(b.hi)) ++i; else ++j;
  }
  return true;
}

}  // namespace rotlab
