#include "convex_enclose/reference_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "convex_enclose/divergence.hpp"

namespace convex_enclose::oracle {

namespace {

class AdaptiveSimpson {
 public:
  AdaptiveSimpson(const std::function<double(double)>& g, double noise_floor) : g_(g), noise_floor_(noise_floor) {}

  double integrate(double a, double b, double tol) {
    const double fa = g_(a), fb = g_(b), fm = g_(0.5 * (a + b));
    return refine(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 0);
  }

  double error() const { return error_; }

 private:
  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g_(lm), frm = g_(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= noise_floor_ || !(a < lm && rm < b)) {
      error_ += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= kMaxDepth) throw OracleFailureError("reference_integral: adaptive Simpson did not converge");
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  const std::function<double(double)>& g_;
  double noise_floor_;
  double error_ = 0.0;
};

}  // namespace

std::string to_string(Method m) { return m == Method::closed_form ? "closed-form" : "adaptive-simpson"; }

OracleResult simpson_integral(const std::function<double(double)>& g, const Interval& range,
                              const std::vector<double>& breakpoints, double rel_tol) {
  if (!(rel_tol > 0.0)) throw PreconditionError("reference_integral: tolerance must be positive");
  std::vector<double> cuts{range.lo()};
  for (double k : breakpoints)
    if (range.contains_interior(k)) cuts.push_back(k);
  cuts.push_back(range.hi());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Coarse pass: sizes the tolerance and the round-off floor.
  double coarse = 0.0, coarse_abs = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    for (int j = 0; j <= 8; ++j) {
      const double w = (j == 0 || j == 8) ? 0.5 : 1.0;
      const double v = g(a + (b - a) * j / 8.0);
      coarse += w * v * (b - a) / 8.0;
      coarse_abs += w * std::abs(v) * (b - a) / 8.0;
    }
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double tol = rel_tol * (1.0 + std::abs(coarse));
  const double noise_floor = 64.0 * eps * coarse_abs;

  AdaptiveSimpson simpson(g, noise_floor);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double share = (cuts[i + 1] - cuts[i]) / range.length();
    total += simpson.integrate(cuts[i], cuts[i + 1], tol * share);
  }
  return {total, simpson.error(), Method::adaptive_simpson};
}

OracleResult reference_integral(const ConvexFunction& f, const Interval& range, double rel_tol, Route route) {
  if (!f.domain().contains(range)) throw DomainError("reference_integral: range outside the function's domain");
  if (route == Route::automatic && f.has_antiderivative()) {
    const double v = *f.antiderivative(range.hi()) - *f.antiderivative(range.lo());
    return {v, 0.0, Method::closed_form};
  }
  const auto& model = f.model();
  return simpson_integral(model.value, range, f.kinks_inside(range), rel_tol);
}

OracleResult reference_integral(const ConvexFunction& f, double rel_tol, Route route) {
  return reference_integral(f, f.domain(), rel_tol, route);
}

double brute_force_hh(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q,
                      double rel_tol) {
  if (p.size() != q.size()) throw InvalidDistributionError("brute_force_hh: index sets differ");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i], qi = q[i];
    if (pi == qi) continue;
    const double r = qi / pi;
    const Interval span(std::min(1.0, r), std::max(1.0, r));
    const OracleResult inner = reference_integral(f.on(span), span, rel_tol, Route::simpson);
    // int_1^r f = sign(r - 1) * int over span.
    const double signed_inner = r > 1.0 ? inner.value : -inner.value;
    total += pi * pi / (qi - pi) * signed_inner;
  }
  return total;
}

}  // namespace convex_enclose::oracle
