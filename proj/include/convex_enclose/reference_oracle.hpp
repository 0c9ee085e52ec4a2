#pragma once

#include <functional>
#include <string>

#include "convex_enclose/convex_function.hpp"
#include "convex_enclose/interval.hpp"

namespace convex_enclose {

class DiscreteDistribution;
class DivergenceKernel;

// Ground truth for the containment tests. Shares no code with the bound
// formulas: it only ever sees function values (or a closed-form
// antiderivative).
namespace oracle {

enum class Method { closed_form, adaptive_simpson };

struct OracleResult {
  double value = 0.0;
  double est_error = 0.0;  // 0 for closed-form results
  Method method = Method::closed_form;
};

std::string to_string(Method m);

enum class Route {
  automatic,  // closed form when the model has an antiderivative
  simpson,    // always adaptive Simpson
};

inline constexpr double kDefaultRelativeTolerance = 1e-13;
inline constexpr int kMaxDepth = 60;

// Integral of f over range. The adaptive-Simpson route splits at the model's
// kinks and refines until est_error <= rel_tol * (1 + |result|).
// Throws DomainError when range is not inside f.domain(), OracleFailureError
// when refinement needs more than kMaxDepth levels.
OracleResult reference_integral(const ConvexFunction& f, const Interval& range,
                                double rel_tol = kDefaultRelativeTolerance, Route route = Route::automatic);
OracleResult reference_integral(const ConvexFunction& f, double rel_tol = kDefaultRelativeTolerance,
                                Route route = Route::automatic);

// Adaptive Simpson on a bare callable, for integrands that are not convex
// (t * pdf(t) and the like). Splits at the given breakpoints.
OracleResult simpson_integral(const std::function<double(double)>& g, const Interval& range,
                              const std::vector<double>& breakpoints = {},
                              double rel_tol = kDefaultRelativeTolerance);

// The HH divergence with every inner integral taken by adaptive Simpson.
double brute_force_hh(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q,
                      double rel_tol = kDefaultRelativeTolerance);

}  // namespace oracle
}  // namespace convex_enclose
