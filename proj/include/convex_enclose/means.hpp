#pragma once

#include <vector>

#include "convex_enclose/convex_function.hpp"
#include "convex_enclose/extended_real.hpp"

namespace convex_enclose {

// lower <= gap <= upper, where gap = mean of f over [a, b] minus mean over
// [c, d] and [c, d] is a subinterval of [a, b].
struct MeanComparison {
  double lower;
  double gap;
  ExtendedReal upper;
};

// Throws DomainError unless sub lies inside f.domain(). The gap comes from the
// reference oracle so the triple can be checked independently.
MeanComparison mean_comparison(const ConvexFunction& f, const Interval& sub);

struct SpecialMeans {
  double arithmetic;   // A = (a+b)/2
  double logarithmic;  // L = (b-a)/(ln b - ln a)
  double identric;     // I = (1/e)(b^b/a^a)^(1/(b-a))
  double p_logarithmic;  // L_p = [(b^(p+1) - a^(p+1))/((p+1)(b-a))]^(1/p)
};

// Needs 0 < a < b and p not in {-1, 0}.
SpecialMeans special_means(double a, double b, double p);

struct MeanKernelCheck {
  const char* kernel;   // "t^p", "1/t" or "-ln t"
  MeanComparison comparison;
  // The gap written through special means: L_p^p(a,b) - L_p^p(c,d),
  // 1/L(a,b) - 1/L(c,d), ln I(c,d) - ln I(a,b).
  double gap_from_special_means;
  bool sandwich_holds;
};

// Runs mean_comparison for t^p, 1/t and -ln t on [a, b] with sub [c, d].
// Needs [c, d] inside [a, b] inside (0, inf). Throws
// InternalInconsistencyError if a sandwich fails beyond round-off.
std::vector<MeanKernelCheck> verify_mean_inequalities(double a, double b, double c, double d, double p);

}  // namespace convex_enclose
