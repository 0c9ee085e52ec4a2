#include "convex_enclose/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace convex_enclose::catalog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ModelPtr finish(FunctionModel m) { return std::make_shared<const FunctionModel>(std::move(m)); }

// Model whose one-sided derivatives coincide everywhere on its support.
FunctionModel smooth(std::string name, std::function<double(double)> value, std::function<double(double)> deriv,
                     std::function<double(double)> antiderivative) {
  FunctionModel m;
  m.name = std::move(name);
  m.value = std::move(value);
  m.left_derivative = [deriv](double t) { return ExtendedReal(deriv(t)); };
  m.right_derivative = [deriv](double t) { return ExtendedReal(deriv(t)); };
  m.antiderivative = std::move(antiderivative);
  return m;
}

bool is_even_integer(double p) { return p >= 0.0 && std::floor(p) == p && std::fmod(p, 2.0) == 0.0; }

double parse_number(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("catalog: bad number '" + s + "' in '" + whole + "'");
  }
  if (used != s.size()) throw InputError("catalog: bad number '" + s + "' in '" + whole + "'");
  return v;
}

}  // namespace

ModelPtr power(double p) {
  if (!std::isfinite(p) || (p > 0.0 && p < 1.0))
    throw InputError("catalog: t^p is convex only for p <= 0 or p >= 1, got p = " + fmt_num(p));
  if (p == 0.0) return affine(0.0, 1.0);
  if (p == 1.0) return affine(1.0, 0.0);
  FunctionModel m = smooth(
      "t^" + fmt_num(p), [p](double t) { return std::pow(t, p); },
      [p](double t) { return p * std::pow(t, p - 1.0); },
      [p](double t) { return p == -1.0 ? std::log(t) : std::pow(t, p + 1.0) / (p + 1.0); });
  if (p < 0.0) {
    m.support_lo = 0.0;
    m.support_lo_open = true;
  } else if (!is_even_integer(p)) {
    m.support_lo = 0.0;
  }
  return finish(std::move(m));
}

ModelPtr neg_log() {
  FunctionModel m = smooth(
      "-ln t", [](double t) { return -std::log(t); }, [](double t) { return -1.0 / t; },
      [](double t) { return t - t * std::log(t); });
  m.support_lo = 0.0;
  m.support_lo_open = true;
  return finish(std::move(m));
}

ModelPtr x_log_x() {
  FunctionModel m = smooth(
      "t ln t", [](double t) { return t == 0.0 ? 0.0 : t * std::log(t); },
      [](double t) { return std::log(t) + 1.0; },
      [](double t) { return t == 0.0 ? 0.0 : 0.5 * t * t * std::log(t) - 0.25 * t * t; });
  m.support_lo = 0.0;
  return finish(std::move(m));
}

ModelPtr exponential() {
  return finish(smooth(
      "e^t", [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); },
      [](double t) { return std::exp(t); }));
}

ModelPtr abs_shift(double c) {
  FunctionModel m;
  m.name = "|t - " + fmt_num(c) + "|";
  m.value = [c](double t) { return std::abs(t - c); };
  m.left_derivative = [c](double t) { return ExtendedReal(t <= c ? -1.0 : 1.0); };
  m.right_derivative = [c](double t) { return ExtendedReal(t < c ? -1.0 : 1.0); };
  m.antiderivative = [c](double t) { return 0.5 * (t - c) * std::abs(t - c); };
  m.kinks = {c};
  return finish(std::move(m));
}

ModelPtr hinge(double c) {
  FunctionModel m;
  m.name = "max(0, t - " + fmt_num(c) + ")";
  m.value = [c](double t) { return t > c ? t - c : 0.0; };
  m.left_derivative = [c](double t) { return ExtendedReal(t <= c ? 0.0 : 1.0); };
  m.right_derivative = [c](double t) { return ExtendedReal(t < c ? 0.0 : 1.0); };
  m.antiderivative = [c](double t) { return t > c ? 0.5 * (t - c) * (t - c) : 0.0; };
  m.kinks = {c};
  return finish(std::move(m));
}

ModelPtr affine(double slope, double intercept) {
  return finish(smooth(
      fmt_num(slope) + " t + " + fmt_num(intercept), [=](double t) { return slope * t + intercept; },
      [=](double) { return slope; }, [=](double t) { return 0.5 * slope * t * t + intercept * t; }));
}

ModelPtr neg_sqrt() {
  FunctionModel m = smooth(
      "-sqrt(t)", [](double t) { return -std::sqrt(t); }, [](double t) { return -0.5 / std::sqrt(t); },
      [](double t) { return -(2.0 / 3.0) * t * std::sqrt(t); });
  m.support_lo = 0.0;
  return finish(std::move(m));
}

ModelPtr scaled(const ModelPtr& g, double scale, double slope, double intercept) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw InputError("catalog: scale must be a finite nonnegative number");
  if (scale == 0.0) return affine(slope, intercept);
  FunctionModel m;
  m.name = fmt_num(scale) + " (" + g->name + ") + " + fmt_num(slope) + " t + " + fmt_num(intercept);
  m.value = [g, scale, slope, intercept](double t) { return scale * g->value(t) + slope * t + intercept; };
  m.derivatives_estimated = g->derivatives_estimated;
  if (g->has_derivative_oracles()) {
    m.left_derivative = [g, scale, slope](double t) { return ExtendedReal(scale) * g->left_derivative(t) + slope; };
    m.right_derivative = [g, scale, slope](double t) { return ExtendedReal(scale) * g->right_derivative(t) + slope; };
  }
  if (g->antiderivative)
    m.antiderivative = [g, scale, slope, intercept](double t) {
      return scale * g->antiderivative(t) + 0.5 * slope * t * t + intercept * t;
    };
  m.kinks = g->kinks;
  m.support_lo = g->support_lo;
  m.support_hi = g->support_hi;
  m.support_lo_open = g->support_lo_open;
  return finish(std::move(m));
}

ModelPtr sharpness_witness(double k, double center) {
  if (!(k > 0.0)) throw InputError("catalog: sharpness witness needs k > 0");
  auto m = scaled(abs_shift(center), k);
  return m;
}

ModelPtr by_name(const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty()) throw InputError("catalog: empty function name");
  const std::string& head = parts[0];
  auto arity = [&](std::size_t n) {
    if (parts.size() != n + 1)
      throw InputError("catalog: '" + head + "' takes " + std::to_string(n) + " parameter(s), got '" + name + "'");
  };
  auto arg = [&](std::size_t i) { return parse_number(parts[i], name); };

  if (head == "square") return arity(0), power(2.0);
  if (head == "cube") return arity(0), power(3.0);
  if (head == "power") return arity(1), power(arg(1));
  if (head == "neg-log") return arity(0), neg_log();
  if (head == "xlogx") return arity(0), x_log_x();
  if (head == "exp") return arity(0), exponential();
  if (head == "abs") return arity(1), abs_shift(arg(1));
  if (head == "hinge") return arity(1), hinge(arg(1));
  if (head == "affine") return arity(2), affine(arg(1), arg(2));
  if (head == "neg-sqrt") return arity(0), neg_sqrt();
  throw InputError("catalog: unknown function '" + name + "'");
}

std::vector<std::string> names() {
  return {"square", "cube", "power:<p>", "neg-log", "xlogx", "exp", "abs:<c>", "hinge:<c>", "affine:<m>:<b>",
          "neg-sqrt"};
}

}  // namespace convex_enclose::catalog
