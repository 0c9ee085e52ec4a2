#include "convex_enclose/quadrature.hpp"

#include <cmath>
#include <string>

namespace convex_enclose {

Partition::Partition(std::vector<double> nodes, std::vector<double> tags)
    : nodes_(std::move(nodes)), tags_(std::move(tags)) {
  if (nodes_.size() < 2) throw PreconditionError("Partition: need at least one cell");
  if (tags_.size() + 1 != nodes_.size()) throw PreconditionError("Partition: need exactly one tag per cell");
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (!(nodes_[i] < nodes_[i + 1])) throw PreconditionError("Partition: nodes must be strictly increasing");
    if (!(nodes_[i] <= tags_[i] && tags_[i] <= nodes_[i + 1]))
      throw PreconditionError("Partition: tag " + std::to_string(i) + " lies outside its cell");
  }
  if (!std::isfinite(nodes_.front()) || !std::isfinite(nodes_.back()))
    throw PreconditionError("Partition: nodes must be finite");
}

namespace {

std::vector<double> uniform_nodes(const Interval& range, std::size_t n) {
  if (n == 0) throw PreconditionError("Partition: need n >= 1");
  std::vector<double> nodes(n + 1);
  const double a = range.lo(), len = range.length();
  for (std::size_t i = 0; i < n; ++i) nodes[i] = a + len * static_cast<double>(i) / static_cast<double>(n);
  nodes[n] = range.hi();
  return nodes;
}

void require_spans(const ConvexFunction& f, const Partition& P, const char* what) {
  if (!(P.span() == f.domain()))
    throw DomainError(std::string(what) + ": partition does not span the function's domain");
}

// Slope at a tag for a function assumed differentiable there. At a domain end
// point only one side exists.
ExtendedReal tag_slope(const ConvexFunction& f, double t) {
  const Interval& dom = f.domain();
  if (t == dom.lo()) return f.right_derivative(t);
  if (t == dom.hi()) return f.left_derivative(t);
  const ExtendedReal left = f.left_derivative(t), right = f.right_derivative(t);
  const double allowed = f.certified() ? 0.0 : 1e-6 * std::max(1.0, std::abs(right.value()));
  if (!(left.is_finite() && right.is_finite()) || std::abs(right.value() - left.value()) > allowed)
    throw NotDifferentiableError("differentiable_lower_form: f is not differentiable at tag " +
                                 ExtendedReal(t).to_string());
  return right;
}

}  // namespace

Partition Partition::uniform(const Interval& range, std::size_t n) {
  std::vector<double> nodes = uniform_nodes(range, n);
  std::vector<double> tags(nodes.begin(), nodes.end() - 1);
  return {std::move(nodes), std::move(tags)};
}

Partition Partition::uniform_midpoint(const Interval& range, std::size_t n) {
  return with_midpoint_tags(uniform_nodes(range, n));
}

Partition Partition::with_midpoint_tags(std::vector<double> nodes) {
  std::vector<double> tags;
  if (nodes.size() >= 2) {
    tags.resize(nodes.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) tags[i] = 0.5 * (nodes[i] + nodes[i + 1]);
  }
  return {std::move(nodes), std::move(tags)};
}

Partition Partition::bisected() const {
  std::vector<double> nodes;
  nodes.reserve(2 * nodes_.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    nodes.push_back(nodes_[i]);
    nodes.push_back(0.5 * (nodes_[i] + nodes_[i + 1]));
  }
  nodes.push_back(nodes_.back());
  return with_midpoint_tags(std::move(nodes));
}

Enclosure QuadratureResult::integral() const {
  return {remainder.lo() + estimate, remainder.hi() + estimate};
}

double riemann_sum(const ConvexFunction& f, const Partition& P) {
  require_spans(f, P, "riemann_sum");
  double sum = 0.0;
  for (std::size_t i = 0; i < P.cells(); ++i) sum += P.width(i) * f(P.tags()[i]);
  return sum;
}

Enclosure remainder_enclosure(const ConvexFunction& f, const Partition& P) {
  require_spans(f, P, "remainder_enclosure");
  const auto& x = P.nodes();
  const auto& xi = P.tags();
  ExtendedReal lower = 0.0, upper = 0.0;
  for (std::size_t i = 0; i < P.cells(); ++i) {
    const double right_arm = (x[i + 1] - xi[i]) * (x[i + 1] - xi[i]);
    const double left_arm = (xi[i] - x[i]) * (xi[i] - x[i]);
    if (right_arm != 0.0) {
      lower += weighted(right_arm, f.right_derivative(xi[i]));
      upper += weighted(right_arm, f.left_derivative(x[i + 1]));
    }
    if (left_arm != 0.0) {
      lower -= weighted(left_arm, f.left_derivative(xi[i]));
      upper -= weighted(left_arm, f.right_derivative(x[i]));
    }
  }
  return Enclosure::from_bounds(lower * ExtendedReal(0.5), upper * ExtendedReal(0.5));
}

ExtendedReal remainder_upper_regrouped(const ConvexFunction& f, const Partition& P) {
  require_spans(f, P, "remainder_upper_regrouped");
  const auto& x = P.nodes();
  const auto& xi = P.tags();
  const std::size_t n = P.cells();
  auto sq = [](double v) { return v * v; };

  ExtendedReal total = 0.0;
  if (x[n] != xi[n - 1]) total += weighted(sq(x[n] - xi[n - 1]), f.left_derivative(x[n]));
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] != xi[i - 1]) total += weighted(sq(x[i] - xi[i - 1]), f.left_derivative(x[i]));
    if (xi[i] != x[i]) total -= weighted(sq(xi[i] - x[i]), f.right_derivative(x[i]));
  }
  if (xi[0] != x[0]) total -= weighted(sq(xi[0] - x[0]), f.right_derivative(x[0]));
  return total * ExtendedReal(0.5);
}

double differentiable_lower_form(const ConvexFunction& f, const Partition& P) {
  require_spans(f, P, "differentiable_lower_form");
  const auto& x = P.nodes();
  const auto& xi = P.tags();
  double sum = 0.0;
  for (std::size_t i = 0; i < P.cells(); ++i) {
    const double lever = 0.5 * (x[i] + x[i + 1]) - xi[i];
    const ExtendedReal slope = tag_slope(f, xi[i]);
    if (lever == 0.0) continue;
    if (!slope.is_finite())
      throw UnboundedSlopeError("differentiable_lower_form: infinite slope at tag " + ExtendedReal(xi[i]).to_string());
    sum += lever * P.width(i) * slope.value();
  }
  return sum;
}

QuadratureResult midpoint_rule(const ConvexFunction& f, std::size_t n) {
  if (n == 0) throw PreconditionError("midpoint_rule: need n >= 1");
  Partition P = Partition::uniform_midpoint(f.domain(), n);
  const auto& x = P.nodes();
  const auto& m = P.tags();
  double estimate = 0.0;
  double lower = 0.0;
  ExtendedReal upper = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = P.width(i);
    estimate += h * f(m[i]);
    const ExtendedReal jump = f.right_derivative(m[i]) - f.left_derivative(m[i]);
    lower += jump.finite_value() * h * h;
    upper += (f.left_derivative(x[i + 1]) - f.right_derivative(x[i])) * ExtendedReal(h * h);
  }
  Enclosure remainder = Enclosure::from_bounds(lower / 8.0, upper / 8.0);
  return {estimate, remainder, n, std::move(P)};
}

QuadratureResult integrate_adaptive(const ConvexFunction& f, double tol, std::size_t max_cells) {
  if (!(tol > 0.0)) throw PreconditionError("integrate_adaptive: tol must be positive");
  const EndpointSlopes s = f.endpoint_slopes();
  if (!s.A.is_finite() || !s.B.is_finite())
    throw UnboundedSlopeError("integrate_adaptive: infinite end point slope (A = " + s.A.to_string() +
                              ", B = " + s.B.to_string() + "); the enclosure width can never be finite");
  for (std::size_t n = 1;; n *= 2) {
    QuadratureResult result = midpoint_rule(f, n);
    if (result.remainder.width() <= ExtendedReal(tol)) return result;
    if (2 * n > max_cells)
      throw BudgetExceededError("integrate_adaptive: width " + result.remainder.width().to_string() +
                                    " still above tol after " + std::to_string(n) + " cells",
                                std::move(result));
  }
}

}  // namespace convex_enclose
