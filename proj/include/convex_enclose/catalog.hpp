#pragma once

#include <memory>
#include <string>
#include <vector>

#include "convex_enclose/convex_function.hpp"

namespace convex_enclose::catalog {

using ModelPtr = std::shared_ptr<const FunctionModel>;

// Convex functions with closed-form one-sided derivatives and antiderivatives.

// t^p, p <= 0 or p >= 1. Support (0, inf) for p < 0, [0, inf) for p >= 1,
// the whole line when p is a nonnegative even integer (or p in {0, 1}).
ModelPtr power(double p);
// -ln t on (0, inf).
ModelPtr neg_log();
// t ln t on [0, inf), with 0 ln 0 = 0.
ModelPtr x_log_x();
// e^t.
ModelPtr exponential();
// |t - c|.
ModelPtr abs_shift(double c);
// max(0, t - c).
ModelPtr hinge(double c);
// slope * t + intercept.
ModelPtr affine(double slope, double intercept);
// -sqrt(t) on [0, inf).
ModelPtr neg_sqrt();

// scale * g(t) + slope * t + intercept, scale >= 0. Keeps closed forms.
ModelPtr scaled(const ModelPtr& g, double scale, double slope = 0.0, double intercept = 0.0);

// k |t - center|, the family for which the constants 1/2 and 1/8 are attained.
ModelPtr sharpness_witness(double k, double center);

// Lookup by name for the CLI and the test corpora. Accepted spellings:
// "square", "cube", "power:<p>", "neg-log", "xlogx", "exp", "abs:<c>",
// "hinge:<c>", "affine:<slope>:<intercept>", "neg-sqrt".
// Throws InputError for unknown names.
ModelPtr by_name(const std::string& name);
std::vector<std::string> names();

inline ConvexFunction on(const ModelPtr& model, double lo, double hi) { return {Interval(lo, hi), model}; }

}  // namespace convex_enclose::catalog
