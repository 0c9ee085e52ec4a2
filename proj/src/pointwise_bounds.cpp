#include "convex_enclose/pointwise_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace convex_enclose {

namespace {

void require_interior(const ConvexFunction& f, double x, const char* what) {
  if (!f.domain().contains_interior(x))
    throw PreconditionError(std::string(what) + ": x must lie strictly inside the domain");
}

void require_closed(const ConvexFunction& f, double x, const char* what) {
  if (!f.domain().contains(x)) throw DomainError(std::string(what) + ": x outside the domain");
}

// Interior one-sided derivatives of a finite convex function are finite.
double interior_slope(ExtendedReal d, const char* what) {
  if (!d.is_finite())
    throw InternalInconsistencyError(std::string(what) + ": infinite one-sided derivative at an interior point");
  return d.value();
}

struct FiniteSlopes {
  double A;
  double B;
};

FiniteSlopes finite_endpoint_slopes(const ConvexFunction& f, const char* what) {
  const EndpointSlopes s = f.endpoint_slopes();
  if (!s.A.is_finite() || !s.B.is_finite())
    throw UnboundedSlopeError(std::string(what) + ": endpoint slopes must be finite (A = " + s.A.to_string() +
                              ", B = " + s.B.to_string() + ")");
  return {s.A.value(), s.B.value()};
}

}  // namespace

double ostrowski_lower(const ConvexFunction& f, double x) {
  require_interior(f, x, "ostrowski_lower");
  const double a = f.domain().lo(), b = f.domain().hi();
  const double right = interior_slope(f.right_derivative(x), "ostrowski_lower");
  const double left = interior_slope(f.left_derivative(x), "ostrowski_lower");
  return 0.5 * ((b - x) * (b - x) * right - (x - a) * (x - a) * left);
}

ExtendedReal ostrowski_upper(const ConvexFunction& f, double x) {
  require_closed(f, x, "ostrowski_upper");
  const double a = f.domain().lo(), b = f.domain().hi();
  const EndpointSlopes s = f.endpoint_slopes();
  if (s.A.is_minus_infinity() || s.B.is_plus_infinity()) return ExtendedReal::plus_infinity();
  return 0.5 * ((b - x) * (b - x) * s.B.value() - (x - a) * (x - a) * s.A.value());
}

Enclosure ostrowski_enclosure(const ConvexFunction& f, double x) {
  require_interior(f, x, "ostrowski_enclosure");
  return Enclosure::from_bounds(ostrowski_lower(f, x), ostrowski_upper(f, x));
}

Enclosure hh_refinement(const ConvexFunction& f) {
  const Interval& dom = f.domain();
  const double m = dom.midpoint();
  const double jump = interior_slope(f.right_derivative(m), "hh_refinement") -
                      interior_slope(f.left_derivative(m), "hh_refinement");
  const EndpointSlopes s = f.endpoint_slopes();
  const ExtendedReal upper = (s.B - s.A) * ExtendedReal(dom.length() / 8.0);
  return Enclosure::from_bounds(jump * dom.length() / 8.0, upper);
}

double differentiable_lower(const ConvexFunction& f, double x) {
  require_interior(f, x, "differentiable_lower");
  const double left = interior_slope(f.left_derivative(x), "differentiable_lower");
  const double right = interior_slope(f.right_derivative(x), "differentiable_lower");
  const double allowed = f.certified() ? 0.0 : 1e-6 * std::max(1.0, std::abs(right));
  if (std::abs(right - left) > allowed)
    throw NotDifferentiableError("differentiable_lower: f'_-(x) != f'_+(x) at x = " + ExtendedReal(x).to_string());
  return (f.domain().midpoint() - x) * right;
}

Enclosure window_enclosure(const ConvexFunction& f, double x, double h) {
  if (!(h > 0.0)) throw PreconditionError("window_enclosure: h must be positive");
  const double lo = x - 0.5 * h, hi = x + 0.5 * h;
  if (!(f.domain().contains(lo) && f.domain().contains(hi)))
    throw DomainError("window_enclosure: window [x - h/2, x + h/2] leaves the domain");
  const double jump = interior_slope(f.right_derivative(x), "window_enclosure") -
                      interior_slope(f.left_derivative(x), "window_enclosure");
  const ExtendedReal spread = f.left_derivative(hi) - f.right_derivative(lo);
  const double c = h * h / 8.0;
  return Enclosure::from_bounds(c * jump, ExtendedReal(c) * spread);
}

double quadratic_form_upper(const ConvexFunction& f, double x) {
  require_closed(f, x, "quadratic_form_upper");
  const auto [A, B] = finite_endpoint_slopes(f, "quadratic_form_upper");
  if (B == A) throw DegenerateSlopesError("quadratic_form_upper: B = A (affine); use ostrowski_upper");
  const double a = f.domain().lo(), b = f.domain().hi();
  const double x0 = (b * B - a * A) / (B - A);
  const double len = b - a;
  return 0.5 * (B - A) * ((x - x0) * (x - x0) - A * B * len * len / ((B - A) * (B - A)));
}

BestPoint best_evaluation_point(const ConvexFunction& f) {
  const auto [A, B] = finite_endpoint_slopes(f, "best_evaluation_point");
  const double a = f.domain().lo(), b = f.domain().hi();
  double x;
  if (B > A) {
    // Upward parabola with vertex x0.
    x = std::clamp((b * B - a * A) / (B - A), a, b);
  } else {
    // B == A: the bound is (1/2) A (b - a)(a + b - 2x), linear in x.
    x = A > 0.0 ? b : a;
  }
  return {x, ostrowski_upper(f, x).value()};
}

double classical_ostrowski_bound(const ConvexFunction& f, double x) {
  require_closed(f, x, "classical_ostrowski_bound");
  const auto [A, B] = finite_endpoint_slopes(f, "classical_ostrowski_bound");
  const double M = std::max(std::abs(A), std::abs(B));
  const double len = f.domain().length();
  const double off = x - f.domain().midpoint();
  return (0.25 + off * off / (len * len)) * len * M;
}

QuadraticVertexDiagnostic quadratic_vertex_diagnostic(const ConvexFunction& f, double mean) {
  const auto [A, B] = finite_endpoint_slopes(f, "quadratic_vertex_diagnostic");
  if (B == A) throw DegenerateSlopesError("quadratic_vertex_diagnostic: B = A (affine)");
  const double a = f.domain().lo(), b = f.domain().hi();
  QuadraticVertexDiagnostic d{};
  d.x0 = (b * B - a * A) / (B - A);
  d.inside = f.domain().contains(d.x0);
  d.printed_lower = 0.5 * A * B / (B - A) * (b - a);
  d.vertex_gap = d.inside ? f(d.x0) - mean : std::numeric_limits<double>::quiet_NaN();
  return d;
}

}  // namespace convex_enclose
