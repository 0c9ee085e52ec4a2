#include "convex_enclose/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "convex_enclose/convex_function.hpp"

namespace convex_enclose::expr {

ParseError::ParseError(const std::string& message, std::size_t position)
    : InputError("parse error at position " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

// ---------------------------------------------------------------------------
// Parsing

struct FunctionInfo {
  const char* name;
  std::size_t arity;
};
constexpr FunctionInfo kFunctions[] = {{"abs", 1}, {"ln", 1}, {"exp", 1}, {"sqrt", 1}, {"max", 2}};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    NodePtr e = expression();
    skip_space();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) throw ParseError(std::string("expected '") + c + "' but the input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  static NodePtr make(Kind kind, Span span, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->span = span;
    n->args = std::move(args);
    return n;
  }

  NodePtr binary(Kind kind, NodePtr lhs, NodePtr rhs) {
    const Span span{lhs->span.begin, rhs->span.end};
    return make(kind, span, {std::move(lhs), std::move(rhs)});
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = binary(Kind::add, lhs, term());
      else if (accept('-')) lhs = binary(Kind::subtract, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = binary(Kind::multiply, lhs, unary());
      else if (accept('/')) lhs = binary(Kind::divide, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    skip_space();
    const std::size_t start = pos_;
    if (accept('-')) {
      NodePtr operand = unary();
      return make(Kind::negate, {start, operand->span.end}, {operand});
    }
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return binary(Kind::power, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      NodePtr inner = expression();
      expect(')');
      return inner;
    }
    throw ParseError(std::string("unexpected '") + c + "'", start);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t count = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    auto n = make(Kind::number, {start, pos_});
    std::const_pointer_cast<Node>(n)->number = std::strtod(text.c_str(), nullptr);
    if (!std::isfinite(n->number)) throw ParseError("number out of range", start);
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    const std::string name(src_.substr(start, pos_ - start));
    if (name == "t") return make(Kind::variable, {start, pos_});
    if (name == "e" || name == "pi") {
      auto n = std::const_pointer_cast<Node>(make(Kind::constant, {start, pos_}));
      n->name = name;
      n->number = name == "e" ? std::numbers::e : std::numbers::pi;
      return n;
    }
    for (const FunctionInfo& fn : kFunctions) {
      if (name != fn.name) continue;
      if (!accept('(')) throw ParseError("function '" + name + "' needs an argument list", pos_);
      std::vector<NodePtr> args{expression()};
      while (accept(',')) args.push_back(expression());
      expect(')');
      if (args.size() != fn.arity)
        throw ParseError("function '" + name + "' takes " + std::to_string(fn.arity) + " argument(s)", start);
      auto n = std::const_pointer_cast<Node>(make(Kind::call, {start, pos_}, std::move(args)));
      n->name = name;
      return n;
    }
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation

double eval_node(const Node& n, double t) {
  switch (n.kind) {
    case Kind::number:
    case Kind::constant: return n.number;
    case Kind::variable: return t;
    case Kind::negate: return -eval_node(*n.args[0], t);
    case Kind::add: return eval_node(*n.args[0], t) + eval_node(*n.args[1], t);
    case Kind::subtract: return eval_node(*n.args[0], t) - eval_node(*n.args[1], t);
    case Kind::multiply: return eval_node(*n.args[0], t) * eval_node(*n.args[1], t);
    case Kind::divide: return eval_node(*n.args[0], t) / eval_node(*n.args[1], t);
    case Kind::power: return std::pow(eval_node(*n.args[0], t), eval_node(*n.args[1], t));
    case Kind::call: {
      const double u = eval_node(*n.args[0], t);
      if (n.name == "abs") return std::abs(u);
      if (n.name == "ln") return std::log(u);
      if (n.name == "exp") return std::exp(u);
      if (n.name == "sqrt") return std::sqrt(u);
      if (n.name == "max") return std::max(u, eval_node(*n.args[1], t));
    }
  }
  return std::nan("");
}

bool depends_on_t(const Node& n) {
  if (n.kind == Kind::variable) return true;
  return std::any_of(n.args.begin(), n.args.end(), [](const NodePtr& a) { return depends_on_t(*a); });
}

// g'(u) * du for a smooth outer function; a zero inner slope wins over an
// infinite outer slope (the composite is then locally constant to first order).
double chain(double outer, double inner) {
  if (inner == 0.0) return 0.0;
  return outer * inner;
}

Jet jet_node(const Node& n, double t) {
  switch (n.kind) {
    case Kind::number:
    case Kind::constant: return {n.number, 0.0, 0.0};
    case Kind::variable: return {t, 1.0, 1.0};
    case Kind::negate: {
      const Jet u = jet_node(*n.args[0], t);
      return {-u.value, -u.left, -u.right};
    }
    case Kind::add:
    case Kind::subtract: {
      const Jet u = jet_node(*n.args[0], t), v = jet_node(*n.args[1], t);
      const double s = n.kind == Kind::add ? 1.0 : -1.0;
      return {u.value + s * v.value, u.left + s * v.left, u.right + s * v.right};
    }
    case Kind::multiply: {
      const Jet u = jet_node(*n.args[0], t), v = jet_node(*n.args[1], t);
      auto d = [&](double du, double dv) { return chain(v.value, du) + chain(u.value, dv); };
      return {u.value * v.value, d(u.left, v.left), d(u.right, v.right)};
    }
    case Kind::divide: {
      const Jet u = jet_node(*n.args[0], t), v = jet_node(*n.args[1], t);
      auto d = [&](double du, double dv) { return (chain(v.value, du) - chain(u.value, dv)) / (v.value * v.value); };
      return {u.value / v.value, d(u.left, v.left), d(u.right, v.right)};
    }
    case Kind::power: {
      const Jet u = jet_node(*n.args[0], t);
      if (depends_on_t(*n.args[1])) return {std::pow(u.value, eval_node(*n.args[1], t)), std::nan(""), std::nan("")};
      const double c = eval_node(*n.args[1], t);
      const double outer = c == 0.0 ? 0.0 : c * std::pow(u.value, c - 1.0);
      return {std::pow(u.value, c), chain(outer, u.left), chain(outer, u.right)};
    }
    case Kind::call: {
      const Jet u = jet_node(*n.args[0], t);
      if (n.name == "abs") {
        if (u.value > 0.0) return u;
        if (u.value < 0.0) return {-u.value, -u.left, -u.right};
        // Kink: |u| grows like |u'_+| h to the right and shrinks like |u'_-| h to the left.
        return {0.0, -std::abs(u.left), std::abs(u.right)};
      }
      if (n.name == "max") {
        const Jet v = jet_node(*n.args[1], t);
        if (u.value > v.value) return u;
        if (u.value < v.value) return v;
        return {u.value, std::min(u.left, v.left), std::max(u.right, v.right)};
      }
      if (n.name == "ln") return {std::log(u.value), u.left / u.value, u.right / u.value};
      if (n.name == "exp") {
        const double e = std::exp(u.value);
        return {e, chain(e, u.left), chain(e, u.right)};
      }
      if (n.name == "sqrt") {
        const double s = std::sqrt(u.value);
        const double outer = 0.5 / s;
        return {s, chain(outer, u.left), chain(outer, u.right)};
      }
    }
  }
  return {std::nan(""), std::nan(""), std::nan("")};
}

bool symbolic_ok(const Node& n) {
  if (n.kind == Kind::power && depends_on_t(*n.args[1])) return false;
  return std::all_of(n.args.begin(), n.args.end(), [](const NodePtr& a) { return symbolic_ok(*a); });
}

// ---------------------------------------------------------------------------
// Printing

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print(const Node& n, std::string& out) {
  auto bin = [&](const char* op) {
    out += '(';
    print(*n.args[0], out);
    out += op;
    print(*n.args[1], out);
    out += ')';
  };
  switch (n.kind) {
    case Kind::number: out += format_number(n.number); return;
    case Kind::constant: out += n.name; return;
    case Kind::variable: out += 't'; return;
    case Kind::negate:
      out += "(-";
      print(*n.args[0], out);
      out += ')';
      return;
    case Kind::add: bin(" + "); return;
    case Kind::subtract: bin(" - "); return;
    case Kind::multiply: bin(" * "); return;
    case Kind::divide: bin(" / "); return;
    case Kind::power: bin(" ^ "); return;
    case Kind::call:
      out += n.name;
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print(*n.args[i], out);
      }
      out += ')';
      return;
  }
}

void collect_switches(const Node& n, std::vector<std::function<double(double)>>& out) {
  if (n.kind == Kind::call && n.name == "abs") {
    const Node* u = n.args[0].get();
    out.push_back([u](double t) { return eval_node(*u, t); });
  } else if (n.kind == Kind::call && n.name == "max") {
    const Node* u = n.args[0].get();
    const Node* v = n.args[1].get();
    out.push_back([u, v](double t) { return eval_node(*u, t) - eval_node(*v, t); });
  }
  for (const NodePtr& a : n.args) collect_switches(*a, out);
}

}  // namespace

Expression parse_expression(std::string_view src) {
  Parser parser(src);
  return Expression(parser.parse(), std::string(src));
}

double Expression::eval(double t) const { return eval_node(*root_, t); }

Jet Expression::jet(double t) const { return jet_node(*root_, t); }

bool Expression::differentiable_symbolically() const { return symbolic_ok(*root_); }

std::string Expression::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

std::vector<double> Expression::switch_points(double lo, double hi) const {
  std::vector<std::function<double(double)>> switches;
  collect_switches(*root_, switches);
  std::vector<double> out;
  constexpr int kScan = 2048;
  for (const auto& s : switches) {
    double prev_t = lo, prev_v = s(lo);
    for (int i = 1; i <= kScan; ++i) {
      const double t = i == kScan ? hi : lo + (hi - lo) * i / kScan;
      const double v = s(t);
      if (v == 0.0) {
        out.push_back(t);
      } else if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
        double a = prev_t, b = t, fa = prev_v;
        for (int k = 0; k < 200 && a < b; ++k) {
          const double m = 0.5 * (a + b);
          if (m == a || m == b) break;
          const double fm = s(m);
          if (fm == 0.0) {
            a = b = m;
            break;
          }
          if ((fm < 0.0) == (fa < 0.0)) a = m, fa = fm;
          else b = m;
        }
        out.push_back(0.5 * (a + b));
      }
      prev_t = t;
      prev_v = v;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool same_tree(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if ((a.kind == Kind::number || a.kind == Kind::constant) && a.number != b.number) return false;
  if (a.name != b.name) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_tree(*a.args[i], *b.args[i])) return false;
  return true;
}

std::function<double(double)> one_sided_derivative(const Expression& e, Side side) {
  return [e, side](double t) {
    const Jet j = e.jet(t);
    return side == Side::left ? j.left : j.right;
  };
}

BuiltModel expression_model(const Expression& e, double lo, double hi) {
  const Interval domain(lo, hi);
  BuiltModel built;
  FunctionModel m;
  m.name = e.source();
  m.value = [e](double t) {
    const double v = e.eval(t);
    if (!std::isfinite(v))
      throw DomainError("expression '" + e.source() + "' is not finite at t = " + ExtendedReal(t).to_string());
    return v;
  };
  m.kinks = e.switch_points(lo, hi);
  m.support_lo = lo;
  m.support_hi = hi;
  built.certified = e.differentiable_symbolically();
  if (built.certified) {
    // A NaN from an indeterminate form at a single point falls back to the
    // difference-quotient estimate there.
    auto value = m.value;
    m.left_derivative = [e, value, domain](double t) {
      const double d = e.jet(t).left;
      return std::isnan(d) ? estimate_left_derivative(value, domain, t) : ExtendedReal(d);
    };
    m.right_derivative = [e, value, domain](double t) {
      const double d = e.jet(t).right;
      return std::isnan(d) ? estimate_right_derivative(value, domain, t) : ExtendedReal(d);
    };
  } else {
    built.warnings.push_back("expression '" + e.source() +
                             "' has a power with a t-dependent exponent; one-sided derivatives are estimated from "
                             "samples and the result is not certified");
  }
  built.model = std::make_shared<const FunctionModel>(std::move(m));
  return built;
}

}  // namespace convex_enclose::expr
