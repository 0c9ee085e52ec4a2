#include "convex_enclose/convex_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace convex_enclose {

namespace {

constexpr int kMaxHalvings = 40;
constexpr double kLimitTolerance = 1e-9;
// How many trailing steps must keep growing before a non-converged quotient
// sequence is declared divergent.
constexpr int kDivergenceRun = 12;

// Limit of a sequence that is monotone in k for exact arithmetic: nonincreasing
// when `decreasing`, nondecreasing otherwise. Returns the limit estimate, or
// the matching infinity when the terms run away geometrically and
// `allow_divergence` is set.
ExtendedReal monotone_limit(const std::function<double(int)>& term, bool decreasing, bool allow_divergence) {
  double prev = term(0);
  double prev_step = 0.0;
  int growing_run = 0;
  for (int k = 1; k <= kMaxHalvings; ++k) {
    const double cur = term(k);
    const double step = decreasing ? prev - cur : cur - prev;
    if (std::abs(cur - prev) < kLimitTolerance * std::max(1.0, std::abs(cur))) return cur;
    // Wrong-way move: round-off now dominates the truncation error.
    if (step < 0.0) return prev;
    growing_run = (k > 1 && step >= prev_step) ? growing_run + 1 : 0;
    prev_step = step;
    prev = cur;
  }
  if (allow_divergence && growing_run >= kDivergenceRun)
    return decreasing ? ExtendedReal::minus_infinity() : ExtendedReal::plus_infinity();
  return prev;
}

// One-sided slope from difference quotients at halving steps. The quotients
// are extrapolated in the step (their error is a power series in h for smooth
// f), and the most self-consistent table entry wins. Quotients that grow
// without settling signal a vertical tangent.
ExtendedReal extrapolated_slope(const std::function<double(int)>& term, bool decreasing) {
  constexpr int kOrder = 6;
  constexpr double kTarget = 1e-13;
  std::vector<double> prev_row, row;
  double best = term(0), best_err = std::numeric_limits<double>::infinity();
  double prev_raw = best, prev_step = 0.0;
  int growing_run = 0;
  prev_row.push_back(best);
  for (int k = 1; k <= kMaxHalvings; ++k) {
    const double raw = term(k);
    const double step = decreasing ? prev_raw - raw : raw - prev_raw;
    growing_run = (k > 1 && step > 0.0 && step >= prev_step) ? growing_run + 1 : 0;
    prev_step = step;
    prev_raw = raw;

    row.assign(1, raw);
    const int depth = std::min(k, kOrder);
    double factor = 1.0;
    for (int j = 1; j <= depth; ++j) {
      factor *= 2.0;
      row.push_back(row[j - 1] + (row[j - 1] - prev_row[j - 1]) / (factor - 1.0));
      const double err = std::max(std::abs(row[j] - row[j - 1]), std::abs(row[j] - prev_row[j - 1]));
      if (err <= best_err) {
        best_err = err;
        best = row[j];
      }
    }
    if (best_err <= kTarget * std::max(1.0, std::abs(best))) return best;
    if (growing_run >= kDivergenceRun)
      return decreasing ? ExtendedReal::minus_infinity() : ExtendedReal::plus_infinity();
    // Round-off has taken over once the diagonal drifts far past the best error.
    if (k > kOrder && std::abs(row[depth] - prev_row[std::min(depth, static_cast<int>(prev_row.size()) - 1)]) >
                          64.0 * best_err &&
        best_err <= 1e-6 * std::max(1.0, std::abs(best)))
      return best;
    prev_row.swap(row);
  }
  return best;
}

double initial_step(const Interval& domain, double room) { return std::min(domain.length() / 16.0, room); }

}  // namespace

bool FunctionModel::admits(const Interval& domain) const {
  const bool lo_ok = support_lo_open ? domain.lo() > support_lo : domain.lo() >= support_lo;
  return lo_ok && domain.hi() <= support_hi;
}

ConvexFunction::ConvexFunction(Interval domain, std::shared_ptr<const FunctionModel> model)
    : domain_(domain), model_(std::move(model)) {
  if (!model_ || !model_->value) throw PreconditionError("ConvexFunction: model has no value oracle");
  if (static_cast<bool>(model_->left_derivative) != static_cast<bool>(model_->right_derivative))
    throw PreconditionError("ConvexFunction: model must provide both one-sided derivatives or neither");
  if (!model_->admits(domain_)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "ConvexFunction: [%.17g, %.17g] is outside the support of %s", domain_.lo(),
                  domain_.hi(), model_->name.c_str());
    throw DomainError(buf);
  }
}

double ConvexFunction::eval(double t) const {
  if (!domain_.contains(t)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "eval: t = %.17g outside [%.17g, %.17g]", t, domain_.lo(), domain_.hi());
    throw DomainError(buf);
  }
  return model_->value(t);
}

ExtendedReal ConvexFunction::right_derivative(double t) const {
  if (t == domain_.hi()) throw PreconditionError("right_derivative: undefined at the right end point");
  if (!domain_.contains(t)) throw DomainError("right_derivative: point outside domain");
  if (model_->has_derivative_oracles()) return model_->right_derivative(t);
  return estimate_right_derivative(model_->value, domain_, t);
}

ExtendedReal ConvexFunction::left_derivative(double t) const {
  if (t == domain_.lo()) throw PreconditionError("left_derivative: undefined at the left end point");
  if (!domain_.contains(t)) throw DomainError("left_derivative: point outside domain");
  if (model_->has_derivative_oracles()) return model_->left_derivative(t);
  return estimate_left_derivative(model_->value, domain_, t);
}

EndpointSlopes ConvexFunction::endpoint_slopes() const {
  return {right_derivative(domain_.lo()), left_derivative(domain_.hi())};
}

std::optional<double> ConvexFunction::antiderivative(double t) const {
  if (!has_antiderivative()) return std::nullopt;
  return model_->antiderivative(t);
}

std::vector<double> ConvexFunction::kinks_inside(const Interval& range) const {
  std::vector<double> out;
  for (double k : model_->kinks)
    if (range.contains_interior(k)) out.push_back(k);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExtendedReal estimate_right_derivative(const std::function<double(double)>& f, const Interval& domain, double t) {
  const double h0 = initial_step(domain, domain.hi() - t);
  const double ft = f(t);
  return extrapolated_slope(
      [&](int k) {
        const double x = t + std::ldexp(h0, -k);
        return (f(x) - ft) / (x - t);
      },
      /*decreasing=*/true);
}

ExtendedReal estimate_left_derivative(const std::function<double(double)>& f, const Interval& domain, double t) {
  const double h0 = initial_step(domain, t - domain.lo());
  const double ft = f(t);
  return extrapolated_slope(
      [&](int k) {
        const double x = t - std::ldexp(h0, -k);
        return (ft - f(x)) / (t - x);
      },
      /*decreasing=*/false);
}

double estimate_right_limit(const std::function<double(double)>& g, const Interval& domain, double t) {
  if (t >= domain.hi()) throw PreconditionError("right limit: undefined at the right end point");
  const double h0 = initial_step(domain, domain.hi() - t);
  return monotone_limit([&](int k) { return g(t + std::ldexp(h0, -k)); }, true, false).value();
}

double estimate_left_limit(const std::function<double(double)>& g, const Interval& domain, double t) {
  if (t <= domain.lo()) throw PreconditionError("left limit: undefined at the left end point");
  const double h0 = initial_step(domain, t - domain.lo());
  return monotone_limit([&](int k) { return g(t - std::ldexp(h0, -k)); }, false, false).value();
}

// ---------------------------------------------------------------------------
// Convexity validation

std::string ConvexityReport::describe() const {
  const char* what = "none";
  switch (worst_kind) {
    case Kind::none: what = "none"; break;
    case Kind::midpoint: what = "midpoint convexity f((s+t)/2) <= (f(s)+f(t))/2"; break;
    case Kind::slope_order: what = "slope order f'_+(s) <= f'_-(t)"; break;
    case Kind::slope_gap: what = "slope gap f'_-(t) <= f'_+(t)"; break;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s: worst violation %.6g (%s) at s = %.17g, t = %.17g", passed ? "convex" : "non-convex",
                worst_violation, what, witness_s, witness_t);
  return buf;
}

NonConvexError::NonConvexError(ConvexityReport report)
    : InputError("function is not convex on its domain; " + report.describe()), report_(report) {}

namespace {

struct Tracker {
  ConvexityReport& report;
  // Largest violation / allowance ratio seen so far.
  double worst_ratio = 0.0;

  void record(double violation, double allowance, ConvexityReport::Kind kind, double s, double t) {
    ++report.pairs_checked;
    if (violation <= 0.0) return;
    const double ratio = allowance > 0.0 ? violation / allowance : std::numeric_limits<double>::infinity();
    if (ratio > 1.0) report.passed = false;
    if (ratio > worst_ratio || report.worst_kind == ConvexityReport::Kind::none) {
      worst_ratio = ratio;
      report.worst_violation = violation;
      report.worst_kind = kind;
      report.witness_s = s;
      report.witness_t = t;
    }
  }
};

}  // namespace

ConvexityReport check_convexity(const ConvexFunction& f, std::size_t n_samples, double tol, std::uint64_t seed) {
  if (n_samples < 3) throw PreconditionError("check_convexity: need at least 3 samples");
  const Interval& dom = f.domain();
  const double eps = std::numeric_limits<double>::epsilon();

  std::vector<double> grid(n_samples);
  std::vector<double> values(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    grid[i] = i + 1 == n_samples ? dom.hi() : dom.lo() + dom.length() * static_cast<double>(i) / (n_samples - 1);
    values[i] = f(grid[i]);
  }
  const auto [vmin, vmax] = std::minmax_element(values.begin(), values.end());
  double fscale = 0.0;
  for (double v : values) fscale = std::max(fscale, std::abs(v));
  const double value_allowance = tol * (*vmax - *vmin) + 8.0 * eps * fscale;

  ConvexityReport report;
  Tracker tracker{report};

  auto midpoint_test = [&](double s, double t, double fs, double ft) {
    const double m = 0.5 * (s + t);
    tracker.record(f(m) - 0.5 * (fs + ft), value_allowance, ConvexityReport::Kind::midpoint, s, t);
  };
  for (std::size_t i = 0; i < n_samples; ++i)
    for (std::size_t j = i + 1; j < n_samples; ++j) midpoint_test(grid[i], grid[j], values[i], values[j]);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(dom.lo(), dom.hi());
  for (std::size_t k = 0; k < 4 * n_samples; ++k) {
    double s = u(rng), t = u(rng);
    if (s > t) std::swap(s, t);
    if (s == t) continue;
    midpoint_test(s, t, f(s), f(t));
  }

  // Slope monotonicity on the grid.
  std::vector<ExtendedReal> right(n_samples), left(n_samples);
  double slope_lo = std::numeric_limits<double>::infinity();
  double slope_hi = -slope_lo;
  double slope_scale = 0.0;
  auto note = [&](ExtendedReal d) {
    if (!d.is_finite()) return;
    slope_lo = std::min(slope_lo, d.value());
    slope_hi = std::max(slope_hi, d.value());
    slope_scale = std::max(slope_scale, std::abs(d.value()));
  };
  for (std::size_t i = 0; i < n_samples; ++i) {
    if (i + 1 < n_samples) note(right[i] = f.right_derivative(grid[i]));
    if (i > 0) note(left[i] = f.left_derivative(grid[i]));
  }
  const double slope_tol = f.certified() ? tol : std::max(tol, 1e-6);
  const double slope_range = slope_hi > slope_lo ? slope_hi - slope_lo : 0.0;
  const double slope_allowance = slope_tol * std::max(slope_range, slope_scale) + 8.0 * eps * slope_scale;
  auto excess = [](ExtendedReal big, ExtendedReal small) {
    if (!(small < big)) return 0.0;
    return (big - small).value();
  };
  for (std::size_t i = 0; i + 1 < n_samples; ++i) {
    tracker.record(excess(right[i], left[i + 1]), slope_allowance, ConvexityReport::Kind::slope_order, grid[i],
                   grid[i + 1]);
    if (i > 0)
      tracker.record(excess(left[i], right[i]), slope_allowance, ConvexityReport::Kind::slope_gap, grid[i], grid[i]);
  }
  return report;
}

void require_convex(const ConvexFunction& f, std::size_t n_samples, double tol) {
  ConvexityReport report = check_convexity(f, n_samples, tol);
  if (!report.passed) throw NonConvexError(report);
}

}  // namespace convex_enclose
