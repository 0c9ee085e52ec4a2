#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <string>

#include "convex_enclose/errors.hpp"

namespace convex_enclose {

// A real number or one of the two infinities.
//
// Backed by a double, but NaN can never be stored: every operation whose
// result would be indeterminate (inf - inf, 0 * inf) throws ArithmeticError
// instead of producing a silent value.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  ExtendedReal(double v) : value_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) throw ArithmeticError("ExtendedReal: NaN is not an extended real");
  }

  static ExtendedReal plus_infinity() { return {std::numeric_limits<double>::infinity()}; }
  static ExtendedReal minus_infinity() { return {-std::numeric_limits<double>::infinity()}; }

  bool is_finite() const { return std::isfinite(value_); }
  bool is_plus_infinity() const { return value_ == std::numeric_limits<double>::infinity(); }
  bool is_minus_infinity() const { return value_ == -std::numeric_limits<double>::infinity(); }

  // Raw value; +-infinity map to the IEEE infinities.
  double value() const { return value_; }

  // Value of a quantity that must be finite.
  double finite_value() const {
    if (!is_finite()) throw ArithmeticError("ExtendedReal: expected a finite value, got " + to_string());
    return value_;
  }

  std::string to_string() const;

  friend ExtendedReal operator-(ExtendedReal x) { return {-x.value_}; }

  friend ExtendedReal operator+(ExtendedReal x, ExtendedReal y) {
    if (x.is_plus_infinity() && y.is_minus_infinity()) throw ArithmeticError("ExtendedReal: +inf + -inf");
    if (x.is_minus_infinity() && y.is_plus_infinity()) throw ArithmeticError("ExtendedReal: -inf + +inf");
    return {x.value_ + y.value_};
  }
  friend ExtendedReal operator-(ExtendedReal x, ExtendedReal y) { return x + (-y); }

  friend ExtendedReal operator*(ExtendedReal x, ExtendedReal y) {
    if ((x.value_ == 0.0 && !y.is_finite()) || (y.value_ == 0.0 && !x.is_finite()))
      throw ArithmeticError("ExtendedReal: 0 * inf");
    return {x.value_ * y.value_};
  }

  // Division by a nonzero finite scalar.
  friend ExtendedReal operator/(ExtendedReal x, double d) {
    if (d == 0.0 || !std::isfinite(d)) throw ArithmeticError("ExtendedReal: division by zero or infinity");
    return {x.value_ / d};
  }

  ExtendedReal& operator+=(ExtendedReal y) { return *this = *this + y; }
  ExtendedReal& operator-=(ExtendedReal y) { return *this = *this - y; }

  friend bool operator==(ExtendedReal x, ExtendedReal y) { return x.value_ == y.value_; }
  friend std::strong_ordering operator<=>(ExtendedReal x, ExtendedReal y) {
    // NaN is excluded by construction, so the order is total.
    if (x.value_ < y.value_) return std::strong_ordering::less;
    if (x.value_ > y.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, ExtendedReal x) { return os << x.to_string(); }

 private:
  double value_ = 0.0;
};

// weight * x where a zero weight annihilates an infinite x. Used for the
// squared-distance weights of the quadrature formulas, where a tag sitting on a
// cell endpoint makes one weight vanish and the matching slope may be infinite.
inline ExtendedReal weighted(double weight, ExtendedReal x) {
  if (weight == 0.0) return 0.0;
  return ExtendedReal(weight) * x;
}

inline ExtendedReal max(ExtendedReal x, ExtendedReal y) { return x < y ? y : x; }
inline ExtendedReal min(ExtendedReal x, ExtendedReal y) { return y < x ? y : x; }

}  // namespace convex_enclose
