#include "indefspec/interval.hpp"

#include <algorithm>
#include <sstream>

namespace indefspec {

IntervalUnion::IntervalUnion(std::vector<Interval> parts) : parts_(std::move(parts)) {
  normalize();
}

void IntervalUnion::add(Interval iv) {
  if (iv.lo > iv.hi) std::swap(iv.lo, iv.hi);
  parts_.push_back(iv);
  normalize();
}

void IntervalUnion::normalize() {
  if (parts_.empty()) return;
  std::sort(parts_.begin(), parts_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  merged.push_back(parts_.front());
  for (size_t i = 1; i < parts_.size(); ++i) {
    Interval& back = merged.back();
    if (parts_[i].lo <= back.hi) {
      back.hi = std::max(back.hi, parts_[i].hi);
    } else {
      merged.push_back(parts_[i]);
    }
  }
  parts_ = std::move(merged);
}

bool IntervalUnion::contains(double x) const {
  for (const auto& p : parts_)
    if (p.contains(x)) return true;
  return false;
}

double IntervalUnion::distance(double x) const {
  double best = kInf;
  for (const auto& p : parts_) {
    if (p.contains(x)) return 0.0;
    best = std::min(best, std::min(std::abs(x - p.lo), std::abs(x - p.hi)));
  }
  return best;
}

bool IntervalUnion::unbounded_below() const {
  return !parts_.empty() && parts_.front().lo == -kInf;
}

bool IntervalUnion::unbounded_above() const {
  return !parts_.empty() && parts_.back().hi == kInf;
}

double IntervalUnion::inf() const { return parts_.empty() ? kInf : parts_.front().lo; }
double IntervalUnion::sup() const { return parts_.empty() ? -kInf : parts_.back().hi; }

IntervalUnion IntervalUnion::unioned(const IntervalUnion& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::clipped(Interval window) const {
  std::vector<Interval> out;
  for (const auto& p : parts_) {
    double lo = std::max(p.lo, window.lo);
    double hi = std::min(p.hi, window.hi);
    if (lo <= hi) out.push_back({lo, hi});
  }
  return IntervalUnion(std::move(out));
}

std::vector<Interval> IntervalUnion::gaps_within(Interval window) const {
  std::vector<Interval> gaps;
  double cursor = window.lo;
  for (const auto& p : parts_) {
    if (p.hi < window.lo) continue;
    if (p.lo > window.hi) break;
    if (p.lo > cursor) gaps.push_back({cursor, std::min(p.lo, window.hi)});
    cursor = std::max(cursor, p.hi);
  }
  if (cursor < window.hi) gaps.push_back({cursor, window.hi});
  return gaps;
}

bool IntervalUnion::overlaps_interval(Interval iv) const {
  for (const auto& p : parts_) {
    double lo = std::max(p.lo, iv.lo);
    double hi = std::min(p.hi, iv.hi);
    if (lo < hi) return true;
  }
  return false;
}

std::string IntervalUnion::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << " u ";
    if (parts_[i].is_point())
      os << "{" << parts_[i].lo << "}";
    else
      os << "[" << parts_[i].lo << ", " << parts_[i].hi << "]";
  }
  if (parts_.empty()) os << "{}";
  return os.str();
}

}  // namespace indefspec
