#pragma once

#include <cmath>
#include <string>

#include "convex_enclose/errors.hpp"

namespace convex_enclose {

// Closed interval [lo, hi] with finite endpoints and lo < hi.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw DomainError("Interval: endpoints must be finite");
    if (!(lo < hi))
      throw DomainError("Interval: need lo < hi, got [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double length() const { return hi_ - lo_; }
  double midpoint() const { return 0.5 * (lo_ + hi_); }

  bool contains(double t) const { return lo_ <= t && t <= hi_; }
  bool contains_interior(double t) const { return lo_ < t && t < hi_; }
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

}  // namespace convex_enclose
