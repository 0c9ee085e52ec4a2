#pragma once

#include <ostream>

#include "convex_enclose/extended_real.hpp"

namespace convex_enclose {

// Certified two-sided bound lo <= quantity <= hi.
class Enclosure {
 public:
  // Throws InternalInconsistencyError when lo > hi.
  Enclosure(ExtendedReal lo, ExtendedReal hi);

  // Builds an enclosure from bounds computed by two different floating-point
  // paths. When they cross by no more than round-off (rel_noise times the
  // magnitude of the bounds) the hull [min, max] is returned, which is still a
  // valid enclosure; a larger crossing throws InternalInconsistencyError.
  static Enclosure from_bounds(ExtendedReal lo, ExtendedReal hi, double rel_noise = 1e-12);

  static Enclosure point(double v) { return {v, v}; }

  ExtendedReal lo() const { return lo_; }
  ExtendedReal hi() const { return hi_; }

  // hi - lo; +inf when either side is unbounded.
  ExtendedReal width() const;
  bool is_bounded() const { return lo_.is_finite() && hi_.is_finite(); }
  bool contains(double v) const { return lo_ <= v && v <= hi_; }

  // Containment with an absolute slack on both sides.
  bool contains(double v, double slack) const {
    return lo_ <= ExtendedReal(v + slack) && ExtendedReal(v - slack) <= hi_;
  }

  // The enclosure shifted by a finite offset.
  Enclosure shifted(double offset) const { return {lo_ + offset, hi_ + offset}; }

  friend bool operator==(const Enclosure&, const Enclosure&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Enclosure& e) {
    return os << '[' << e.lo_ << ", " << e.hi_ << ']';
  }

 private:
  ExtendedReal lo_;
  ExtendedReal hi_;
};

}  // namespace convex_enclose
