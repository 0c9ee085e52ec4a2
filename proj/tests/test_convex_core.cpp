#include <doctest.h>

#include <cmath>
#include <numbers>

#include "convex_enclose/catalog.hpp"
#include "convex_enclose/convex_function.hpp"
#include "convex_enclose/enclosure.hpp"
#include "support.hpp"

using namespace convex_enclose;
using test_support::rel_close;

namespace {

ConvexFunction value_only(std::function<double(double)> g, double lo, double hi, std::string name = "black-box") {
  FunctionModel m;
  m.name = std::move(name);
  m.value = std::move(g);
  return {Interval(lo, hi), std::make_shared<const FunctionModel>(std::move(m))};
}

}  // namespace

TEST_CASE("extended reals refuse indeterminate forms") {
  const ExtendedReal inf = ExtendedReal::plus_infinity();
  CHECK_THROWS_AS(ExtendedReal(std::nan("")), ArithmeticError);
  CHECK_THROWS_AS(inf - inf, ArithmeticError);
  CHECK_THROWS_AS(ExtendedReal(0.0) * inf, ArithmeticError);
  CHECK_THROWS_AS(inf / 0.0, ArithmeticError);
  CHECK((inf + 1.0).is_plus_infinity());
  CHECK((-inf).is_minus_infinity());
  CHECK(weighted(0.0, inf) == ExtendedReal(0.0));
  CHECK(ExtendedReal::minus_infinity() < ExtendedReal(-1e300));
  CHECK(inf.to_string() == "+inf");
  CHECK_THROWS_AS(inf.finite_value(), ArithmeticError);
}

TEST_CASE("intervals and enclosures validate themselves") {
  CHECK_THROWS_AS(Interval(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()), DomainError);
  const Interval I(0.0, 2.0);
  CHECK(I.midpoint() == 1.0);
  CHECK(I.contains(0.0));
  CHECK_FALSE(I.contains_interior(0.0));
  CHECK_THROWS_AS(Enclosure(1.0, 0.0), InternalInconsistencyError);
  const Enclosure e = Enclosure::from_bounds(1.0 + 1e-15, 1.0);
  CHECK(e.lo() <= e.hi());
  CHECK_THROWS_AS(Enclosure::from_bounds(1.1, 1.0), InternalInconsistencyError);
  CHECK(Enclosure(0.0, ExtendedReal::plus_infinity()).width().is_plus_infinity());
}

TEST_CASE("eval examples") {
  CHECK(catalog::on(catalog::abs_shift(0.5), 0, 1)(0.5) == 0.0);
  CHECK(catalog::on(catalog::power(2.0), 0, 1)(0.5) == 0.25);
  CHECK(rel_close(catalog::on(catalog::neg_log(), 1, std::numbers::e)(std::numbers::e), -1.0, 1e-15));
  CHECK_THROWS_AS(catalog::on(catalog::power(2.0), 0, 1)(1.5), DomainError);
}

TEST_CASE("one-sided derivative examples") {
  const ConvexFunction w = catalog::on(catalog::sharpness_witness(1.0, 0.5), 0, 1);
  CHECK(w.right_derivative(0.5) == ExtendedReal(1.0));
  CHECK(w.left_derivative(0.5) == ExtendedReal(-1.0));
  CHECK(catalog::on(catalog::affine(3.0, 1.0), -2, 2).right_derivative(0.7) == ExtendedReal(3.0));
  CHECK(catalog::on(catalog::neg_sqrt(), 0, 1).right_derivative(0.0).is_minus_infinity());
  CHECK(catalog::on(catalog::power(2.0), 0, 1).left_derivative(1.0) == ExtendedReal(2.0));
  CHECK(catalog::on(catalog::hinge(0.5), 0, 1).left_derivative(0.5) == ExtendedReal(0.0));
  CHECK(catalog::on(catalog::abs_shift(0.5), 0, 1).left_derivative(0.5) == ExtendedReal(-1.0));

  const ConvexFunction sq = catalog::on(catalog::power(2.0), 0, 1);
  CHECK_THROWS_AS(sq.right_derivative(1.0), PreconditionError);
  CHECK_THROWS_AS(sq.left_derivative(0.0), PreconditionError);
  CHECK_THROWS_AS(sq.right_derivative(2.0), DomainError);
}

TEST_CASE("endpoint slopes examples") {
  const EndpointSlopes s1 = catalog::on(catalog::abs_shift(0.5), 0, 1).endpoint_slopes();
  CHECK(s1.A == ExtendedReal(-1.0));
  CHECK(s1.B == ExtendedReal(1.0));
  const EndpointSlopes s2 = catalog::on(catalog::power(2.0), 0, 1).endpoint_slopes();
  CHECK(s2.A == ExtendedReal(0.0));
  CHECK(s2.B == ExtendedReal(2.0));
  const EndpointSlopes s3 = catalog::on(catalog::neg_sqrt(), 0, 1).endpoint_slopes();
  CHECK(s3.A.is_minus_infinity());
  CHECK(s3.B == ExtendedReal(-0.5));
}

TEST_CASE("convexity check examples") {
  CHECK(check_convexity(catalog::on(catalog::power(2.0), 0, 1), 64, 1e-12).passed);
  CHECK(check_convexity(catalog::on(catalog::abs_shift(0.0), -1, 1), 64, 1e-12).passed);
  const ConvexityReport sine = check_convexity(value_only([](double t) { return std::sin(t); }, 0, 3), 64, 1e-12);
  CHECK_FALSE(sine.passed);
  CHECK(sine.worst_violation > 0.0);
  CHECK(sine.witness_s != sine.witness_t);
  CHECK(sine.describe().find("non-convex") != std::string::npos);
  CHECK_THROWS_AS(require_convex(value_only([](double t) { return std::sin(t); }, 0, 3)), NonConvexError);
  // Seeded: the same report twice.
  const ConvexityReport again = check_convexity(value_only([](double t) { return std::sin(t); }, 0, 3), 64, 1e-12);
  CHECK(again.witness_s == sine.witness_s);
  CHECK(again.witness_t == sine.witness_t);
}

TEST_CASE("every catalog function passes its own convexity check") {
  std::mt19937_64 rng(test_support::kSeed);
  for (std::size_t i = 0; i < 60; ++i) {
    const auto ff = test_support::random_function(rng, i);
    CAPTURE(ff.label);
    CHECK(check_convexity(ff.f).passed);
  }
}

TEST_CASE("slope monotonicity on certified catalog functions") {
  std::mt19937_64 rng(test_support::kSeed + 1);
  for (std::size_t i = 0; i < 120; ++i) {
    const auto ff = test_support::random_function(rng, i);
    const Interval& I = ff.f.domain();
    double s = test_support::uniform(rng, I.lo(), I.hi());
    double t = test_support::uniform(rng, I.lo(), I.hi());
    if (s > t) std::swap(s, t);
    if (s == t || s == I.lo()) continue;
    CAPTURE(ff.label);
    CHECK(ff.f.certified());
    CHECK(ff.f.left_derivative(s) <= ff.f.right_derivative(s));
    CHECK(ff.f.right_derivative(s) <= ff.f.left_derivative(t));
    CHECK(ff.f.left_derivative(t) <= ff.f.right_derivative(t));
  }
}

TEST_CASE("sampled derivative estimates agree with closed forms") {
  std::mt19937_64 rng(test_support::kSeed + 2);
  const char* smooth[] = {"square", "cube", "exp", "neg-log", "xlogx", "power:-1", "power:2.5"};
  for (const char* name : smooth) {
    const ConvexFunction f = catalog::on(catalog::by_name(name), 0.2, 3.0);
    auto g = [&f](double t) { return f(t); };
    for (int k = 0; k < 25; ++k) {
      const double t = test_support::uniform(rng, 0.25, 2.95);
      CAPTURE(std::string(name));
      CAPTURE(t);
      const double exact = f.right_derivative(t).value();
      CHECK(rel_close(estimate_right_derivative(g, f.domain(), t).value(), exact, 1e-6));
      CHECK(rel_close(estimate_left_derivative(g, f.domain(), t).value(), exact, 1e-6));
    }
  }
}

TEST_CASE("estimated derivatives at kinks and vertical tangents") {
  const ConvexFunction k = catalog::on(catalog::abs_shift(0.5), 0, 1);
  auto g = [&k](double t) { return k(t); };
  CHECK(rel_close(estimate_right_derivative(g, k.domain(), 0.5).value(), 1.0, 1e-9));
  CHECK(rel_close(estimate_left_derivative(g, k.domain(), 0.5).value(), -1.0, 1e-9));
  const ConvexFunction r = catalog::on(catalog::neg_sqrt(), 0, 1);
  CHECK(estimate_right_derivative([&r](double t) { return r(t); }, r.domain(), 0.0).is_minus_infinity());
}

TEST_CASE("black-box functions are uncertified and use estimates") {
  const ConvexFunction f = value_only([](double t) { return std::cosh(t); }, -1, 2);
  CHECK_FALSE(f.certified());
  CHECK(rel_close(f.right_derivative(0.7).value(), std::sinh(0.7), 1e-6));
  CHECK(rel_close(f.left_derivative(2.0).value(), std::sinh(2.0), 1e-6));
}

TEST_CASE("difference quotients are monotone in the step") {
  std::mt19937_64 rng(test_support::kSeed + 3);
  for (std::size_t i = 0; i < 200; ++i) {
    const auto ff = test_support::random_function(rng, i);
    const Interval& I = ff.f.domain();
    const double t = test_support::uniform(rng, I.lo(), I.midpoint());
    const double h2 = test_support::uniform(rng, 1e-3, I.hi() - t);
    const double h1 = test_support::uniform(rng, 1e-4, h2);
    const double q1 = (ff.f(t + h1) - ff.f(t)) / h1;
    const double q2 = (ff.f(t + h2) - ff.f(t)) / h2;
    CAPTURE(ff.label);
    CHECK(q1 <= q2 + 1e-9 * std::max(1.0, std::abs(q2)));
  }
}

TEST_CASE("catalog lookup") {
  for (const std::string& n : {"square", "cube", "power:-0.5", "neg-log", "xlogx", "exp", "abs:0.3", "hinge:1",
                               "affine:2:1", "neg-sqrt"})
    CHECK_NOTHROW(catalog::by_name(n));
  CHECK_THROWS_AS(catalog::by_name("sine"), InputError);
  CHECK_THROWS_AS(catalog::by_name("power:0.5"), InputError);
  CHECK_THROWS_AS(catalog::on(catalog::neg_log(), 0, 1), DomainError);
}
