#pragma once

#include <cstddef>
#include <vector>

#include "convex_enclose/convex_function.hpp"
#include "convex_enclose/enclosure.hpp"

namespace convex_enclose {

// Tagged division a = x_0 < x_1 < ... < x_n = b with tags xi_i in [x_i, x_{i+1}].
class Partition {
 public:
  // Throws PreconditionError unless n >= 1, nodes strictly increase and every
  // tag sits inside its cell.
  Partition(std::vector<double> nodes, std::vector<double> tags);

  static Partition uniform(const Interval& range, std::size_t n);
  // Uniform cells with each tag at the cell midpoint.
  static Partition uniform_midpoint(const Interval& range, std::size_t n);
  // Same nodes, tags at cell midpoints.
  static Partition with_midpoint_tags(std::vector<double> nodes);

  std::size_t cells() const { return tags_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& tags() const { return tags_; }
  double width(std::size_t i) const { return nodes_[i + 1] - nodes_[i]; }
  Interval span() const { return {nodes_.front(), nodes_.back()}; }

  // Every cell bisected, tags at the new cell midpoints.
  Partition bisected() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> tags_;
};

struct QuadratureResult {
  double estimate;
  // Certified bounds on  int_a^b f - estimate.
  Enclosure remainder;
  std::size_t cells;
  Partition partition;

  // [estimate + remainder.lo, estimate + remainder.hi], which contains the integral.
  Enclosure integral() const;
};

// sum h_i f(xi_i).
double riemann_sum(const ConvexFunction& f, const Partition& P);

// Cell-wise Ostrowski bounds summed over the partition:
//   lo = (1/2) sum [(x_{i+1} - xi_i)^2 f'_+(xi_i) - (xi_i - x_i)^2 f'_-(xi_i)]
//   hi = (1/2) [sum (x_{i+1} - xi_i)^2 f'_-(x_{i+1}) - sum (xi_i - x_i)^2 f'_+(x_i)]
// Encloses  int f - riemann_sum(f, P). Terms with a zero weight are dropped,
// so a tag on a cell end point never asks for the missing one-sided slope.
Enclosure remainder_enclosure(const ConvexFunction& f, const Partition& P);

// Upper remainder bound with the node terms regrouped: end point terms
// (b - xi_{n-1})^2 f'_-(b) and (xi_0 - a)^2 f'_+(a) plus one combined term per
// interior node. Algebraically equal to remainder_enclosure(f, P).hi().
ExtendedReal remainder_upper_regrouped(const ConvexFunction& f, const Partition& P);

// sum ((x_i + x_{i+1})/2 - xi_i) h_i f'(xi_i) for f differentiable at every tag.
// Throws NotDifferentiableError at a kink.
double differentiable_lower_form(const ConvexFunction& f, const Partition& P);

// Composite mid-point rule on n uniform cells with its remainder enclosure
//   [(1/8) sum (f'_+(m_i) - f'_-(m_i)) h_i^2, (1/8) sum (f'_-(x_{i+1}) - f'_+(x_i)) h_i^2].
QuadratureResult midpoint_rule(const ConvexFunction& f, std::size_t n);

inline constexpr std::size_t kDefaultMaxCells = std::size_t{1} << 20;

class BudgetExceededError : public NumericalError {
 public:
  BudgetExceededError(const std::string& what, QuadratureResult best)
      : NumericalError(what), best_(std::move(best)) {}
  const QuadratureResult& best() const { return best_; }

 private:
  QuadratureResult best_;
};

// Doubles n from 1 until the mid-point remainder enclosure is at most tol wide.
// Throws UnboundedSlopeError for infinite end point slopes and
// BudgetExceededError (carrying the last result) once n would pass max_cells.
QuadratureResult integrate_adaptive(const ConvexFunction& f, double tol, std::size_t max_cells = kDefaultMaxCells);

}  // namespace convex_enclose
