#include "convex_enclose/means.hpp"

#include <cmath>

#include "convex_enclose/catalog.hpp"
#include "convex_enclose/reference_oracle.hpp"

namespace convex_enclose {

MeanComparison mean_comparison(const ConvexFunction& f, const Interval& sub) {
  const Interval& dom = f.domain();
  if (!dom.contains(sub)) throw DomainError("mean_comparison: [c, d] must lie inside [a, b]");
  const double a = dom.lo(), b = dom.hi(), c = sub.lo(), d = sub.hi();

  const double mean_sub = oracle::reference_integral(f, sub).value / sub.length();
  const double mean_all = oracle::reference_integral(f, dom).value / dom.length();
  const double fc = f(c), fd = f(d);

  const double lower = 0.5 * (a + b) * (fd - fc) / (d - c) - (d * fd - c * fc) / (d - c) + mean_sub;

  const EndpointSlopes s = f.endpoint_slopes();
  const double right_moment = (b - d) * (b - d) + (b - d) * (b - c) + (b - c) * (b - c);
  const double left_moment = (d - a) * (d - a) + (d - a) * (c - a) + (c - a) * (c - a);
  const ExtendedReal upper =
      (weighted(right_moment, s.B) - weighted(left_moment, s.A)) / (6.0 * (b - a));

  return {lower, mean_all - mean_sub, upper};
}

SpecialMeans special_means(double a, double b, double p) {
  if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) throw DomainError("special_means: need 0 < a < b");
  if (p == 0.0 || p == -1.0) throw InputError("special_means: L_p is defined here for p not in {-1, 0}");
  SpecialMeans m{};
  m.arithmetic = 0.5 * (a + b);
  m.logarithmic = (b - a) / (std::log(b) - std::log(a));
  m.identric = std::exp((b * std::log(b) - a * std::log(a)) / (b - a) - 1.0);
  m.p_logarithmic =
      std::pow((std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / ((p + 1.0) * (b - a)), 1.0 / p);
  return m;
}

std::vector<MeanKernelCheck> verify_mean_inequalities(double a, double b, double c, double d, double p) {
  const Interval outer(a, b), inner(c, d);
  if (!(a > 0.0)) throw DomainError("verify_mean_inequalities: [a, b] must lie in (0, inf)");
  if (!outer.contains(inner)) throw DomainError("verify_mean_inequalities: [c, d] must lie inside [a, b]");

  const SpecialMeans whole = special_means(a, b, p);
  const SpecialMeans part = special_means(c, d, p);

  struct Kernel {
    const char* name;
    catalog::ModelPtr model;
    double gap;
  };
  const Kernel kernels[] = {
      {"t^p", catalog::power(p), std::pow(whole.p_logarithmic, p) - std::pow(part.p_logarithmic, p)},
      {"1/t", catalog::power(-1.0), 1.0 / whole.logarithmic - 1.0 / part.logarithmic},
      {"-ln t", catalog::neg_log(), std::log(part.identric) - std::log(whole.identric)},
  };

  std::vector<MeanKernelCheck> out;
  for (const Kernel& k : kernels) {
    const ConvexFunction f(outer, k.model);
    const MeanComparison cmp = mean_comparison(f, inner);
    const double slack = 1e-10 * (std::abs(cmp.gap) + std::abs(f(c)) + std::abs(f(d)) + 1e-300);
    const bool holds = cmp.lower <= cmp.gap + slack && ExtendedReal(cmp.gap - slack) <= cmp.upper;
    if (!holds)
      throw InternalInconsistencyError(std::string("verify_mean_inequalities: sandwich fails for ") + k.name);
    out.push_back({k.name, cmp, k.gap, holds});
  }
  return out;
}

}  // namespace convex_enclose
