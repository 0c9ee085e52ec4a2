#include "convex_enclose/extended_real.hpp"

#include <algorithm>
#include <cstdio>

#include "convex_enclose/enclosure.hpp"

namespace convex_enclose {

std::string ExtendedReal::to_string() const {
  if (is_plus_infinity()) return "+inf";
  if (is_minus_infinity()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

Enclosure::Enclosure(ExtendedReal lo, ExtendedReal hi) : lo_(lo), hi_(hi) {
  if (hi < lo)
    throw InternalInconsistencyError("Enclosure: lower bound " + lo.to_string() + " exceeds upper bound " +
                                     hi.to_string());
}

Enclosure Enclosure::from_bounds(ExtendedReal lo, ExtendedReal hi, double rel_noise) {
  if (lo <= hi) return {lo, hi};
  // Both finite here: hi < lo rules out lo = -inf and hi = +inf, and the
  // remaining infinite cases are genuine inconsistencies.
  if (lo.is_finite() && hi.is_finite()) {
    const double scale = std::max(std::abs(lo.value()), std::abs(hi.value()));
    if (lo.value() - hi.value() <= rel_noise * scale) return {hi, lo};
  }
  throw InternalInconsistencyError("Enclosure: lower bound " + lo.to_string() + " exceeds upper bound " +
                                   hi.to_string());
}

ExtendedReal Enclosure::width() const {
  if (!is_bounded()) return ExtendedReal::plus_infinity();
  return hi_ - lo_;
}

}  // namespace convex_enclose
