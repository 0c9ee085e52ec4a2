#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "convex_enclose/extended_real.hpp"
#include "convex_enclose/interval.hpp"

namespace convex_enclose {

// The interval-independent description of a function of one real variable:
// a value oracle, optional closed-form one-sided derivatives and
// antiderivative, and the set of points where it is allowed to live.
//
// A model is bound to a concrete closed interval by ConvexFunction.
struct FunctionModel {
  std::string name;
  std::function<double(double)> value;
  // Both empty or both set. Empty means derivatives are estimated from samples.
  std::function<ExtendedReal(double)> left_derivative;
  std::function<ExtendedReal(double)> right_derivative;
  // Optional: any antiderivative, continuous on the support.
  std::function<double(double)> antiderivative;
  // Set when the derivative oracles above are themselves numerical estimates
  // (e.g. one-sided limits of a sampled density).
  bool derivatives_estimated = false;
  // Points where the function may fail to be differentiable.
  std::vector<double> kinks;
  // Natural domain. support_lo_open excludes the left end point itself
  // (e.g. 0 for -ln t).
  double support_lo = -std::numeric_limits<double>::infinity();
  double support_hi = std::numeric_limits<double>::infinity();
  bool support_lo_open = false;

  bool admits(const Interval& domain) const;
  bool has_derivative_oracles() const { return static_cast<bool>(left_derivative); }
  bool has_closed_form_derivatives() const { return has_derivative_oracles() && !derivatives_estimated; }
};

// (A, B) = (f'_+(lo), f'_-(hi)), the extreme slopes of a convex function.
struct EndpointSlopes {
  ExtendedReal A;
  ExtendedReal B;
};

// A convex function on a closed interval together with its one-sided
// derivative oracles. Immutable and cheap to copy (shares the model).
class ConvexFunction {
 public:
  // Throws DomainError when the model's support does not contain domain.
  ConvexFunction(Interval domain, std::shared_ptr<const FunctionModel> model);

  const Interval& domain() const { return domain_; }
  const std::string& name() const { return model_->name; }
  const FunctionModel& model() const { return *model_; }
  std::shared_ptr<const FunctionModel> model_ptr() const { return model_; }

  // True when derivative oracles are closed-form rather than estimated.
  bool certified() const { return model_->has_closed_form_derivatives(); }

  double eval(double t) const;
  double operator()(double t) const { return eval(t); }

  // f'_+(t) for t in [lo, hi).
  ExtendedReal right_derivative(double t) const;
  // f'_-(t) for t in (lo, hi].
  ExtendedReal left_derivative(double t) const;

  EndpointSlopes endpoint_slopes() const;

  // Same function on a subinterval (or any interval inside the support).
  ConvexFunction restricted(Interval sub) const { return {sub, model_}; }

  bool has_antiderivative() const { return static_cast<bool>(model_->antiderivative); }
  std::optional<double> antiderivative(double t) const;

  // Kinks of the model lying strictly inside [lo, hi], sorted.
  std::vector<double> kinks_inside(const Interval& range) const;

 private:
  Interval domain_;
  std::shared_ptr<const FunctionModel> model_;
};

// Estimate of the one-sided derivative of a convex function from difference
// quotients over h_k = h0 * 2^-k, h0 = (hi - lo)/16 (shrunk to fit inside the
// domain). For convex f the quotients are monotone in h, which gives both the
// stopping rule and the round-off detector.
ExtendedReal estimate_right_derivative(const std::function<double(double)>& f, const Interval& domain, double t);
ExtendedReal estimate_left_derivative(const std::function<double(double)>& f, const Interval& domain, double t);

// One-sided limits g(t+) / g(t-) of a monotone nondecreasing function,
// estimated with the same step sequence as the derivative estimates.
double estimate_right_limit(const std::function<double(double)>& g, const Interval& domain, double t);
double estimate_left_limit(const std::function<double(double)>& g, const Interval& domain, double t);

struct ConvexityReport {
  enum class Kind { none, midpoint, slope_order, slope_gap };

  bool passed = true;
  // Largest violation found, already scaled into the units of the test that
  // produced it (function values for midpoint, slopes otherwise).
  double worst_violation = 0.0;
  Kind worst_kind = Kind::none;
  // Witness pair for the worst violation (s == t for slope_gap).
  double witness_s = 0.0;
  double witness_t = 0.0;
  std::size_t pairs_checked = 0;

  std::string describe() const;
};

class NonConvexError : public InputError {
 public:
  explicit NonConvexError(ConvexityReport report);
  const ConvexityReport& report() const { return report_; }

 private:
  ConvexityReport report_;
};

inline constexpr double kDefaultConvexityTolerance = 1e-9;

// Samples a deterministic grid plus seeded random pairs and checks midpoint
// convexity and slope monotonicity. tol is relative to the sampled range of
// the function (and of its slopes, for the derivative checks).
ConvexityReport check_convexity(const ConvexFunction& f, std::size_t n_samples = 64,
                                double tol = kDefaultConvexityTolerance, std::uint64_t seed = 0x5eed);

// check_convexity, throwing NonConvexError with the witness when it fails.
void require_convex(const ConvexFunction& f, std::size_t n_samples = 64, double tol = kDefaultConvexityTolerance);

}  // namespace convex_enclose
