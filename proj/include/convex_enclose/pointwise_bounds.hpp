#pragma once

#include "convex_enclose/convex_function.hpp"
#include "convex_enclose/enclosure.hpp"

namespace convex_enclose {

// Bounds on the Ostrowski difference  D(x) = int_a^b f - (b - a) f(x)
// for a convex f on [a, b].

// (1/2)[(b-x)^2 f'_+(x) - (x-a)^2 f'_-(x)] <= D(x), x in (a, b).
// Attained by k|t - (a+b)/2| at the midpoint.
double ostrowski_lower(const ConvexFunction& f, double x);

// D(x) <= (1/2)[(b-x)^2 f'_-(b) - (x-a)^2 f'_+(a)], x in [a, b].
// +inf when f'_+(a) = -inf or f'_-(b) = +inf.
ExtendedReal ostrowski_upper(const ConvexFunction& f, double x);

// [ostrowski_lower, ostrowski_upper] for interior x.
Enclosure ostrowski_enclosure(const ConvexFunction& f, double x);

// Encloses  mean(f) - f((a+b)/2)  in
// [(1/8)(f'_+(m) - f'_-(m))(b-a), (1/8)(f'_-(b) - f'_+(a))(b-a)].
Enclosure hh_refinement(const ConvexFunction& f);

// ((a+b)/2 - x) f'(x) <= mean(f) - f(x) at a point of differentiability.
// Throws NotDifferentiableError at a kink.
double differentiable_lower(const ConvexFunction& f, double x);

// Encloses  int_{x-h/2}^{x+h/2} f - h f(x)  in
// [(1/8)h^2 (f'_+(x) - f'_-(x)), (1/8)h^2 (f'_-(x+h/2) - f'_+(x-h/2))].
// The window must lie inside f.domain().
Enclosure window_enclosure(const ConvexFunction& f, double x, double h);

// The upper bound rewritten as a quadratic in x around
// x0 = (bB - aA)/(B - A). Needs finite A != B.
double quadratic_form_upper(const ConvexFunction& f, double x);

struct BestPoint {
  double x;
  double bound;
};

// Exact minimizer of ostrowski_upper over [a, b].
BestPoint best_evaluation_point(const ConvexFunction& f);

// Classical Ostrowski bound on |f(x) - mean(f)| with M = max(|A|, |B|).
// A comparison baseline; it needs finite endpoint slopes.
double classical_ostrowski_bound(const ConvexFunction& f, double x);

// Remark-2 diagnostic at x0 = (bB - aA)/(B - A): the printed lower quantity
// (1/2) AB/(B-A) (b-a) next to the actual f(x0) - mean(f). Reported only;
// never asserted.
struct QuadraticVertexDiagnostic {
  double x0;
  bool inside;             // x0 in [a, b]
  double printed_lower;    // (1/2) AB/(B-A) (b-a)
  double vertex_gap;       // f(x0) - mean(f), NaN when x0 is outside
};
QuadraticVertexDiagnostic quadratic_vertex_diagnostic(const ConvexFunction& f, double mean);

}  // namespace convex_enclose
