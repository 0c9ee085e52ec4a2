#include "convex_enclose/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "convex_enclose/quadrature.hpp"

namespace convex_enclose {

DiscreteDistribution::DiscreteDistribution(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InvalidDistributionError("distribution: no weights");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw InvalidDistributionError("distribution: every weight must be finite and > 0, got " +
                                     ExtendedReal(std::isnan(w) ? 0.0 : w).to_string());
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidDistributionError("distribution: weights sum to " + ExtendedReal(sum).to_string() + ", not 1");
}

DiscreteDistribution DiscreteDistribution::parse(const std::string& csv) {
  std::vector<double> w;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidDistributionError("distribution: bad weight '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw InvalidDistributionError("distribution: bad weight '" + item + "'");
    w.push_back(v);
  }
  return DiscreteDistribution(std::move(w));
}

DivergenceKernel::DivergenceKernel(std::string name, catalog::ModelPtr model)
    : name_(std::move(name)), model_(std::move(model)) {
  if (!model_ || !model_->value) throw InputError("kernel " + name_ + ": no value oracle");
  if (!(model_->support_lo <= 0.0) || model_->support_hi != std::numeric_limits<double>::infinity())
    throw InputError("kernel " + name_ + ": must be defined on all of (0, inf)");
  if (!model_->has_derivative_oracles()) throw InputError("kernel " + name_ + ": needs one-sided derivative oracles");
  const double at_one = model_->value(1.0);
  if (!(std::abs(at_one) <= 1e-12))
    throw InputError("kernel " + name_ + ": not normalized, f(1) = " + ExtendedReal(at_one).to_string());
}

DivergenceKernel DivergenceKernel::by_name(const std::string& name) {
  using namespace catalog;
  if (name == "chi2") return {name, scaled(power(2.0), 1.0, -2.0, 1.0)};
  if (name == "kl") return {name, x_log_x()};
  if (name == "tv") return {name, abs_shift(1.0)};
  if (name == "burg") return {name, scaled(neg_log(), 1.0, 1.0, -1.0)};
  if (name == "hellinger") return {name, scaled(neg_sqrt(), 2.0, 1.0, 1.0)};
  if (name == "shifted-abs") return {name, scaled(abs_shift(1.25), 1.0, 0.0, -0.25)};
  throw InputError("unknown kernel '" + name + "'");
}

std::vector<std::string> DivergenceKernel::names() { return {"chi2", "kl", "tv", "burg", "hellinger", "shifted-abs"}; }

double DivergenceKernel::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("kernel " + name_ + ": argument must be positive");
  return model_->value(t);
}

ExtendedReal DivergenceKernel::left_derivative(double t) const {
  if (!(t > 0.0)) throw DomainError("kernel " + name_ + ": argument must be positive");
  return model_->left_derivative(t);
}

ExtendedReal DivergenceKernel::right_derivative(double t) const {
  if (!(t > 0.0)) throw DomainError("kernel " + name_ + ": argument must be positive");
  return model_->right_derivative(t);
}

namespace {

void require_same_alphabet(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.size() != q.size())
    throw InvalidDistributionError("p and q live on different index sets (" + std::to_string(p.size()) + " vs " +
                                   std::to_string(q.size()) + " atoms)");
}

// int_1^r f for r != 1.
double inner_integral(const DivergenceKernel& f, double r) {
  const double lo = std::min(1.0, r), hi = std::max(1.0, r);
  const ConvexFunction g = f.on(Interval(lo, hi));
  double over_span;
  if (g.has_antiderivative()) {
    over_span = *g.antiderivative(hi) - *g.antiderivative(lo);
  } else {
    const QuadratureResult res = integrate_adaptive(g, 1e-12);
    over_span = res.estimate + 0.5 * (res.remainder.lo().value() + res.remainder.hi().value());
  }
  return r > 1.0 ? over_span : -over_span;
}

}  // namespace

double csiszar_divergence(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_alphabet(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] * f(q[i] / p[i]);
  return sum;
}

double lin_wong_divergence(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_alphabet(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] * f((p[i] + q[i]) / (2.0 * p[i]));
  return sum;
}

double hh_divergence(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_alphabet(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == q[i]) continue;
    sum += p[i] * p[i] / (q[i] - p[i]) * inner_integral(f, q[i] / p[i]);
  }
  return sum;
}

HhSandwich hh_sandwich(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q) {
  const HhSandwich s{lin_wong_divergence(f, p, q), hh_divergence(f, p, q), 0.5 * csiszar_divergence(f, p, q)};
  const double noise = 1e-12 * (std::abs(s.lin_wong) + std::abs(s.hh) + std::abs(s.half_csiszar)) + 1e-15;
  if (s.lin_wong > s.hh + noise || s.hh > s.half_csiszar + noise)
    throw InternalInconsistencyError("hh_sandwich: ordering lw <= hh <= D_f/2 fails for kernel " + f.name() +
                                     "; is it convex and normalized?");
  return s;
}

Enclosure hh_gap_bounds(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_alphabet(p, q);
  const ExtendedReal slope_at_one = f.right_derivative(1.0);
  ExtendedReal lower = 0.0, upper = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = q[i] - p[i];
    if (diff == 0.0) continue;
    const double mid = (p[i] + q[i]) / (2.0 * p[i]);
    lower += (f.right_derivative(mid) - f.left_derivative(mid)) * ExtendedReal(std::abs(diff));
    upper += (f.left_derivative(q[i] / p[i]) - slope_at_one) * ExtendedReal(diff);
  }
  return Enclosure::from_bounds(lower / 8.0, upper / 8.0);
}

double hh_gap_upper_compact(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q) {
  require_same_alphabet(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += f.left_derivative(q[i] / p[i]).finite_value() * (q[i] - p[i]);
  return sum / 8.0;
}

}  // namespace convex_enclose
