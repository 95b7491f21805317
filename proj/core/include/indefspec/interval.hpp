#pragma once

#include <string>
#include <vector>

#include "indefspec/types.hpp"

namespace indefspec {

/// Closed interval; lo == hi encodes a single point, infinite endpoints allowed.
struct Interval {
  double lo = 0;
  double hi = 0;
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool is_point() const { return lo == hi; }
  double length() const { return hi - lo; }
};

/// Finite union of disjoint closed intervals kept sorted and merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> parts);

  void add(Interval iv);
  void add_point(double x) { add({x, x}); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  bool contains(double x) const;
  /// Distance from x to the set (0 if inside); +inf for the empty set.
  double distance(double x) const;

  bool unbounded_below() const;
  bool unbounded_above() const;
  double inf() const;  // +inf for empty set
  double sup() const;  // -inf for empty set

  IntervalUnion unioned(const IntervalUnion& other) const;
  /// Intersection with a single interval.
  IntervalUnion clipped(Interval window) const;

  /// Maximal open gaps between components, clipped to `window`.
  std::vector<Interval> gaps_within(Interval window) const;

  /// True if any component overlaps `iv` in a set of positive length.
  bool overlaps_interval(Interval iv) const;

  std::string str() const;

 private:
  void normalize();
  std::vector<Interval> parts_;
};

}  // namespace indefspec
