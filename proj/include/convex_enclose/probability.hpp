#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "convex_enclose/convex_function.hpp"
#include "convex_enclose/enclosure.hpp"

namespace convex_enclose {

// A random variable on [a, b] whose density is nonnegative, monotone
// nondecreasing and integrates to 1. Its CDF is then convex, and the Ostrowski
// bounds applied to the CDF enclose probabilities.
class RandomVariableModel {
 public:
  static RandomVariableModel uniform(double a, double b);
  // Density proportional to t^k on [a, b], a >= 0, k >= 0.
  static RandomVariableModel power(double k, double a, double b);
  // Density proportional to e^(rate t) on [a, b], rate > 0.
  static RandomVariableModel truncated_exponential(double rate, double a, double b);
  // Piecewise-constant density: levels[j] on [breaks[j], breaks[j+1]).
  // Levels must be nondecreasing and nonnegative.
  static RandomVariableModel steps(std::vector<double> breaks, std::vector<double> levels);
  // Arbitrary density given by values only. The CDF, the expectation and the
  // one-sided density limits are computed numerically. With normalize set the
  // density is rescaled to unit mass; otherwise its mass must be 1 within 1e-9.
  // A continuous density uses its own values as the one-sided limits.
  static RandomVariableModel from_density(std::function<double(double)> pdf, Interval support,
                                          std::vector<double> breakpoints = {}, bool normalize = false,
                                          bool continuous = false);

  const Interval& support() const { return cdf_.domain(); }
  const std::string& name() const { return name_; }

  double pdf(double t) const;
  // f(t+), t in [a, b).
  double pdf_right_limit(double t) const { return cdf_.right_derivative(t).value(); }
  // f(t-), t in (a, b].
  double pdf_left_limit(double t) const { return cdf_.left_derivative(t).value(); }

  double cdf(double t) const { return cdf_(t); }
  // The CDF as a convex function whose one-sided derivatives are the density limits.
  const ConvexFunction& cdf_function() const { return cdf_; }
  double expectation() const { return expectation_; }
  // False when the density limits are estimated from samples.
  bool certified() const { return cdf_.certified(); }

 private:
  RandomVariableModel(std::string name, std::function<double(double)> pdf, ConvexFunction cdf, double expectation);

  // Mass and monotonicity checks shared by all factories.
  void validate(double mass) const;

  std::string name_;
  std::function<double(double)> pdf_;
  ConvexFunction cdf_;
  double expectation_;
};

// Encloses  b - E(X) - (b - a) F(x). Both bounds for interior x; at x = a or
// x = b only the upper bound holds and the lower one is -inf.
Enclosure cdf_gap_enclosure(const RandomVariableModel& m, double x);

// Encloses F(x) = Pr(X <= x), clipped to [0, 1].
Enclosure cdf_enclosure(const RandomVariableModel& m, double x);

// Encloses Pr(X <= (a+b)/2):
//   [(b-E)/(b-a) - (1/8)(b-a)(f(b-) - f(a+)), (b-E)/(b-a) - (1/8)(b-a)(f(m+) - f(m-))]
// clipped to [0, 1].
Enclosure median_point_probability(const RandomVariableModel& m);

// b - int_a^b F via the reference oracle. Throws InconsistentModelError when
// it disagrees with the stored expectation by more than 1e-8.
double expectation_from_cdf(const RandomVariableModel& m);

}  // namespace convex_enclose
