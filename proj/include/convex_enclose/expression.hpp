#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "convex_enclose/catalog.hpp"
#include "convex_enclose/errors.hpp"

namespace convex_enclose::expr {

// Half-open byte range [begin, end) into the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class Kind { number, variable, constant, negate, add, subtract, multiply, divide, power, call };

struct Node {
  Kind kind;
  double number = 0.0;   // number, and the value of a constant
  std::string name;      // constant or function name
  std::vector<std::shared_ptr<const Node>> args;
  Span span;
};

using NodePtr = std::shared_ptr<const Node>;

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Value and the two one-sided derivatives at a point. Entries may be +-inf,
// or NaN where the rules meet an indeterminate form.
struct Jet {
  double value;
  double left;
  double right;
};

// Parsed expression in the variable t: literals, constants e and pi,
// + - * / ^, and the functions abs, ln, exp, sqrt, max(.,.).
// ^ is right-associative and binds tighter than unary minus: -t^2 = -(t^2).
class Expression {
 public:
  const NodePtr& root() const { return root_; }
  const std::string& source() const { return source_; }

  double eval(double t) const;
  // Forward-mode one-sided differentiation. Smooth nodes use the usual rules;
  // at abs and max switch points the requested one-sided limit is taken.
  Jet jet(double t) const;

  // False when some construct has no one-sided rule (a power whose exponent
  // depends on t); derivatives must then be estimated from samples.
  bool differentiable_symbolically() const;

  // Fully parenthesized text that parses back to the same tree.
  std::string to_string() const;

  // Zeros of the abs arguments and max differences inside [lo, hi], located
  // by a sign scan plus bisection.
  std::vector<double> switch_points(double lo, double hi) const;

  friend Expression parse_expression(std::string_view src);

 private:
  Expression(NodePtr root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

  NodePtr root_;
  std::string source_;
};

Expression parse_expression(std::string_view src);

// Structural equality (ignores spans).
bool same_tree(const Node& a, const Node& b);

// One-sided derivative evaluator for a given side, as a callable.
enum class Side { left, right };
std::function<double(double)> one_sided_derivative(const Expression& e, Side side);

struct BuiltModel {
  catalog::ModelPtr model;
  bool certified;
  std::vector<std::string> warnings;
};

// Wraps an expression as a FunctionModel on [lo, hi]. Uses the symbolic
// one-sided derivatives when available; otherwise leaves the oracles empty so
// they are estimated from samples, and records a warning.
BuiltModel expression_model(const Expression& e, double lo, double hi);

}  // namespace convex_enclose::expr
