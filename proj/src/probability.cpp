#include "convex_enclose/probability.hpp"

#include <algorithm>
#include <cmath>

#include "convex_enclose/pointwise_bounds.hpp"
#include "convex_enclose/reference_oracle.hpp"

namespace convex_enclose {

namespace {

constexpr double kMassTolerance = 1e-9;

std::shared_ptr<const FunctionModel> cdf_model(std::string name, const Interval& support,
                                               std::function<double(double)> cdf,
                                               std::function<double(double)> left_density,
                                               std::function<double(double)> right_density,
                                               std::function<double(double)> cdf_antiderivative,
                                               std::vector<double> kinks, bool estimated) {
  FunctionModel m;
  m.name = "F[" + name + "]";
  m.value = std::move(cdf);
  m.left_derivative = [g = std::move(left_density)](double t) { return ExtendedReal(g(t)); };
  m.right_derivative = [g = std::move(right_density)](double t) { return ExtendedReal(g(t)); };
  m.antiderivative = std::move(cdf_antiderivative);
  m.derivatives_estimated = estimated;
  m.kinks = std::move(kinks);
  m.support_lo = support.lo();
  m.support_hi = support.hi();
  return std::make_shared<const FunctionModel>(std::move(m));
}

}  // namespace

RandomVariableModel::RandomVariableModel(std::string name, std::function<double(double)> pdf, ConvexFunction cdf,
                                         double expectation)
    : name_(std::move(name)), pdf_(std::move(pdf)), cdf_(std::move(cdf)), expectation_(expectation) {}

double RandomVariableModel::pdf(double t) const {
  if (!support().contains(t)) throw DomainError("pdf: point outside the support");
  return pdf_(t);
}

void RandomVariableModel::validate(double mass) const {
  if (!(std::abs(mass - 1.0) <= kMassTolerance))
    throw InvalidDistributionError("density of " + name_ + " integrates to " + ExtendedReal(mass).to_string() +
                                   ", not 1");
  constexpr int kGrid = 257;
  const Interval& s = support();
  std::vector<double> v(kGrid);
  double scale = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double t = i + 1 == kGrid ? s.hi() : s.lo() + s.length() * i / (kGrid - 1);
    v[i] = pdf_(t);
    if (!(v[i] >= 0.0) || !std::isfinite(v[i]))
      throw InvalidDistributionError("density of " + name_ + " is negative or not finite at t = " +
                                     ExtendedReal(t).to_string());
    scale = std::max(scale, v[i]);
  }
  for (int i = 0; i + 1 < kGrid; ++i)
    if (v[i + 1] < v[i] - 1e-12 * scale)
      throw InvalidDistributionError("density of " + name_ + " is not monotone nondecreasing");
}

RandomVariableModel RandomVariableModel::uniform(double a, double b) {
  const Interval s(a, b);
  const double len = s.length();
  auto density = [len](double) { return 1.0 / len; };
  auto model = cdf_model(
      "uniform", s, [a, len](double t) { return (t - a) / len; }, density, density,
      [a, len](double t) { return 0.5 * (t - a) * (t - a) / len; }, {}, false);
  RandomVariableModel m("uniform", density, ConvexFunction(s, model), 0.5 * (a + b));
  m.validate(1.0);
  return m;
}

RandomVariableModel RandomVariableModel::power(double k, double a, double b) {
  if (!(k >= 0.0)) throw InvalidDistributionError("power density needs k >= 0");
  if (!(a >= 0.0)) throw InvalidDistributionError("power density needs a >= 0");
  const Interval s(a, b);
  const double ak1 = std::pow(a, k + 1.0), bk1 = std::pow(b, k + 1.0);
  const double z = (bk1 - ak1) / (k + 1.0);
  auto density = [k, z](double t) { return std::pow(t, k) / z; };
  auto cdf = [k, z, ak1](double t) { return (std::pow(t, k + 1.0) - ak1) / ((k + 1.0) * z); };
  auto cdf_anti = [k, z, ak1](double t) { return (std::pow(t, k + 2.0) / (k + 2.0) - ak1 * t) / ((k + 1.0) * z); };
  const double expectation = (std::pow(b, k + 2.0) - std::pow(a, k + 2.0)) / ((k + 2.0) * z);
  const std::string name = "power(" + ExtendedReal(k).to_string() + ")";
  RandomVariableModel m(name, density, ConvexFunction(s, cdf_model(name, s, cdf, density, density, cdf_anti, {}, false)),
                        expectation);
  m.validate(cdf(b));
  return m;
}

RandomVariableModel RandomVariableModel::truncated_exponential(double rate, double a, double b) {
  if (!(rate > 0.0)) throw InvalidDistributionError("truncated exponential density needs rate > 0");
  const Interval s(a, b);
  // Scaled by e^(-rate b) so nothing overflows: u(t) = e^(rate (t - b)).
  const double ua = std::exp(rate * (a - b));
  const double one_minus_ua = -std::expm1(rate * (a - b));
  auto u = [rate, b](double t) { return std::exp(rate * (t - b)); };
  auto density = [u, rate, one_minus_ua](double t) { return rate * u(t) / one_minus_ua; };
  auto cdf = [u, ua, one_minus_ua](double t) { return (u(t) - ua) / one_minus_ua; };
  auto cdf_anti = [u, ua, one_minus_ua, rate](double t) { return ((u(t) - ua) / rate - ua * t) / one_minus_ua; };
  const double expectation = b - 1.0 / rate + ua * (b - a) / one_minus_ua;
  const std::string name = "exp(" + ExtendedReal(rate).to_string() + ")";
  RandomVariableModel m(name, density, ConvexFunction(s, cdf_model(name, s, cdf, density, density, cdf_anti, {}, false)),
                        expectation);
  m.validate(cdf(b));
  return m;
}

RandomVariableModel RandomVariableModel::steps(std::vector<double> breaks, std::vector<double> levels) {
  if (breaks.size() < 2 || levels.size() + 1 != breaks.size())
    throw InvalidDistributionError("step density needs n + 1 break points for n levels");
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j)
    if (!(breaks[j] < breaks[j + 1])) throw InvalidDistributionError("step density break points must increase");
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (!(levels[j] >= 0.0)) throw InvalidDistributionError("step density levels must be nonnegative");
    if (j > 0 && levels[j] < levels[j - 1])
      throw InvalidDistributionError("step density levels must be nondecreasing");
  }
  const Interval s(breaks.front(), breaks.back());
  const std::size_t cells = levels.size();

  // Prefix values of F and of int F at each break point.
  std::vector<double> F(cells + 1, 0.0), G(cells + 1, 0.0);
  double expectation = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    const double h = breaks[j + 1] - breaks[j];
    F[j + 1] = F[j] + levels[j] * h;
    G[j + 1] = G[j] + F[j] * h + 0.5 * levels[j] * h * h;
    expectation += 0.5 * levels[j] * (breaks[j + 1] * breaks[j + 1] - breaks[j] * breaks[j]);
  }

  // Cell holding t for the right-continuous convention (last cell keeps b).
  auto right_cell = [breaks, cells](double t) {
    const auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - breaks.begin());
    return std::min(j == 0 ? 0 : j - 1, cells - 1);
  };
  // Cell holding t for the left-continuous convention (first cell keeps a).
  auto left_cell = [breaks, cells](double t) {
    const auto it = std::lower_bound(breaks.begin(), breaks.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - breaks.begin());
    return std::min(j == 0 ? 0 : j - 1, cells - 1);
  };

  auto density = [levels, right_cell](double t) { return levels[right_cell(t)]; };
  auto left_density = [levels, left_cell](double t) { return levels[left_cell(t)]; };
  auto cdf = [breaks, levels, F, right_cell](double t) {
    const std::size_t j = right_cell(t);
    return F[j] + levels[j] * (t - breaks[j]);
  };
  auto cdf_anti = [breaks, levels, F, G, right_cell](double t) {
    const std::size_t j = right_cell(t);
    const double d = t - breaks[j];
    return G[j] + F[j] * d + 0.5 * levels[j] * d * d;
  };
  std::vector<double> kinks(breaks.begin() + 1, breaks.end() - 1);
  RandomVariableModel m("steps", density,
                        ConvexFunction(s, cdf_model("steps", s, cdf, left_density, density, cdf_anti, kinks, false)),
                        expectation);
  m.validate(F[cells]);
  return m;
}

RandomVariableModel RandomVariableModel::from_density(std::function<double(double)> pdf, Interval support,
                                                      std::vector<double> breakpoints, bool normalize,
                                                      bool continuous) {
  const double mass = oracle::simpson_integral(pdf, support, breakpoints).value;
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidDistributionError("density has no positive finite mass");
  const double scale = normalize ? 1.0 / mass : 1.0;
  auto density = [pdf, scale](double t) { return scale * pdf(t); };
  const double a = support.lo();
  auto cdf = [density, a, breakpoints](double t) {
    if (t <= a) return 0.0;
    return oracle::simpson_integral(density, Interval(a, t), breakpoints).value;
  };
  std::function<double(double)> left = density, right = density;
  if (!continuous) {
    left = [density, support](double t) { return estimate_left_limit(density, support, t); };
    right = [density, support](double t) { return estimate_right_limit(density, support, t); };
  }
  const double expectation =
      oracle::simpson_integral([density](double t) { return t * density(t); }, support, breakpoints).value;
  RandomVariableModel m("density", density,
                        ConvexFunction(support, cdf_model("density", support, cdf, left, right, {}, breakpoints, true)),
                        expectation);
  m.validate(normalize ? 1.0 : mass);
  return m;
}

Enclosure cdf_gap_enclosure(const RandomVariableModel& m, double x) {
  const ConvexFunction& F = m.cdf_function();
  if (!F.domain().contains(x)) throw DomainError("cdf_gap_enclosure: x outside [a, b]");
  const ExtendedReal upper = ostrowski_upper(F, x);
  const ExtendedReal lower =
      F.domain().contains_interior(x) ? ExtendedReal(ostrowski_lower(F, x)) : ExtendedReal::minus_infinity();
  return Enclosure::from_bounds(lower, upper);
}

Enclosure cdf_enclosure(const RandomVariableModel& m, double x) {
  const Enclosure gap = cdf_gap_enclosure(m, x);
  const Interval& s = m.support();
  const double tail = s.hi() - m.expectation();
  auto clip = [](ExtendedReal v) { return std::clamp(v.value(), 0.0, 1.0); };
  const ExtendedReal lo = (ExtendedReal(tail) - gap.hi()) / s.length();
  const ExtendedReal hi = (ExtendedReal(tail) - gap.lo()) / s.length();
  return Enclosure::from_bounds(clip(lo), clip(hi));
}

Enclosure median_point_probability(const RandomVariableModel& m) { return cdf_enclosure(m, m.support().midpoint()); }

double expectation_from_cdf(const RandomVariableModel& m) {
  const Interval& s = m.support();
  const double e = s.hi() - oracle::reference_integral(m.cdf_function()).value;
  if (std::abs(e - m.expectation()) > 1e-8 * std::max(1.0, std::abs(e)))
    throw InconsistentModelError("expectation_from_cdf: b - int F = " + ExtendedReal(e).to_string() +
                                 " disagrees with E(X) = " + ExtendedReal(m.expectation()).to_string());
  return e;
}

}  // namespace convex_enclose
