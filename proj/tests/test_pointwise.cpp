#include <doctest.h>

#include <cmath>
#include <numbers>

#include "convex_enclose/catalog.hpp"
#include "convex_enclose/pointwise_bounds.hpp"
#include "convex_enclose/reference_oracle.hpp"
#include "support.hpp"

using namespace convex_enclose;
using test_support::rel_close;

namespace {

const ConvexFunction kink = catalog::on(catalog::abs_shift(0.5), 0, 1);
const ConvexFunction square = catalog::on(catalog::power(2.0), 0, 1);
const ConvexFunction identity = catalog::on(catalog::affine(1.0, 0.0), 0, 1);

double true_gap(const ConvexFunction& f, double x) {
  return oracle::reference_integral(f).value - f.domain().length() * f(x);
}

}  // namespace

TEST_CASE("ostrowski_lower examples") {
  CHECK(ostrowski_lower(kink, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ostrowski_lower(identity, 0.3) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(ostrowski_lower(square, 0.5) == 0.0);
  CHECK_THROWS_AS(ostrowski_lower(square, 0.0), PreconditionError);
}

TEST_CASE("ostrowski_upper examples") {
  CHECK(ostrowski_upper(kink, 0.5) == ExtendedReal(0.25));
  CHECK(ostrowski_upper(square, 0.5) == ExtendedReal(0.25));
  CHECK(ostrowski_upper(catalog::on(catalog::neg_sqrt(), 0, 1), 0.5).is_plus_infinity());
  // End points are allowed for the upper line.
  CHECK(ostrowski_upper(square, 0.0) == ExtendedReal(1.0));
  CHECK_THROWS_AS(ostrowski_upper(square, 1.5), DomainError);
}

TEST_CASE("ostrowski_enclosure examples") {
  const Enclosure e = ostrowski_enclosure(square, 0.5);
  CHECK(e.lo() == ExtendedReal(0.0));
  CHECK(e.hi() == ExtendedReal(0.25));
  CHECK(e.contains(1.0 / 12.0));
  const Enclosure k = ostrowski_enclosure(kink, 0.5);
  CHECK(k.lo() == ExtendedReal(0.25));
  CHECK(k.hi() == ExtendedReal(0.25));
  const ConvexFunction aff = catalog::on(catalog::affine(-2.0, 0.5), -1, 3);
  for (double x : {-0.9, 0.0, 1.7, 2.99}) {
    const Enclosure z = ostrowski_enclosure(aff, x);
    CHECK(rel_close(z.lo().value(), z.hi().value(), 1e-14));
    CHECK(rel_close(z.lo().value(), true_gap(aff, x), 1e-12));
  }
}

TEST_CASE("hh_refinement examples") {
  CHECK(hh_refinement(kink) == Enclosure(0.25, 0.25));
  CHECK(hh_refinement(square) == Enclosure(0.0, 0.25));
  CHECK(hh_refinement(identity) == Enclosure(0.0, 0.0));
}

TEST_CASE("differentiable_lower examples") {
  CHECK(differentiable_lower(square, 0.25) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(differentiable_lower(square, 0.5) == 0.0);
  const ConvexFunction e = catalog::on(catalog::exponential(), 0, 1);
  CHECK(rel_close(differentiable_lower(e, 0.25), 0.25 * std::exp(0.25), 1e-15));
  CHECK(rel_close(oracle::reference_integral(e).value - std::exp(0.25), 0.43426, 1e-5));
  CHECK_THROWS_AS(differentiable_lower(kink, 0.5), NotDifferentiableError);
}

TEST_CASE("window_enclosure examples") {
  CHECK(window_enclosure(catalog::on(catalog::abs_shift(0.0), -1, 1), 0.0, 1.0) == Enclosure(0.25, 0.25));
  const Enclosure w = window_enclosure(catalog::on(catalog::power(2.0), 0, 2), 1.0, 2.0);
  CHECK(w == Enclosure(0.0, 2.0));
  CHECK(w.contains(2.0 / 3.0));
  CHECK(window_enclosure(identity, 0.5, 0.5) == Enclosure(0.0, 0.0));
  CHECK_THROWS_AS(window_enclosure(square, 0.9, 0.5), DomainError);
  CHECK_THROWS_AS(window_enclosure(square, 0.5, 0.0), PreconditionError);
}

TEST_CASE("quadratic_form_upper examples") {
  CHECK(quadratic_form_upper(kink, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(quadratic_form_upper(square, 1.0) == doctest::Approx(0.0));
  CHECK(quadratic_form_upper(square, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(quadratic_form_upper(identity, 0.5), DegenerateSlopesError);
  CHECK_THROWS_AS(quadratic_form_upper(catalog::on(catalog::neg_sqrt(), 0, 1), 0.5), UnboundedSlopeError);
}

TEST_CASE("best_evaluation_point examples") {
  const BestPoint k = best_evaluation_point(kink);
  CHECK(k.x == 0.5);
  CHECK(k.bound == doctest::Approx(0.25));
  const BestPoint s = best_evaluation_point(square);
  CHECK(s.x == 1.0);
  CHECK(s.bound == doctest::Approx(0.0));
  const BestPoint a = best_evaluation_point(identity);
  CHECK(a.x == 1.0);
  CHECK(a.bound == doctest::Approx(-0.5));
}

TEST_CASE("best point matches a grid search") {
  std::mt19937_64 rng(test_support::kSeed + 10);
  for (std::size_t i = 0; i < 60; ++i) {
    const auto ff = test_support::random_function(rng, i);
    if (ff.label == "neg-sqrt") continue;
    const BestPoint best = best_evaluation_point(ff.f);
    const Interval& I = ff.f.domain();
    double grid_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 1000; ++k) grid_min = std::min(grid_min, ostrowski_upper(ff.f, I.lo() + I.length() * k / 1000).value());
    CAPTURE(ff.label);
    CHECK(best.bound <= grid_min + 1e-12 * std::max(1.0, std::abs(grid_min)));
  }
}

TEST_CASE("classical bound examples") {
  CHECK(classical_ostrowski_bound(square, 0.5) == 0.5);
  CHECK(classical_ostrowski_bound(square, 0.0) == 1.0);
  CHECK(classical_ostrowski_bound(identity, 0.5) == 0.25);
}

TEST_CASE("containment and identities on fuzzed cases") {
  std::mt19937_64 rng(test_support::kSeed + 11);
  for (std::size_t i = 0; i < 300; ++i) {
    const auto ff = test_support::random_function(rng, i);
    const ConvexFunction& f = ff.f;
    const Interval& I = f.domain();
    const double x = I.lo() + I.length() * test_support::uniform(rng, 0.01, 0.99);
    const double integral = oracle::reference_integral(f).value;
    const double gap = integral - I.length() * f(x);
    const double slack = 1e-10 * std::max(1.0, std::abs(integral) + I.length() * std::abs(f(x)));
    CAPTURE(ff.label);
    CAPTURE(x);
    CHECK(ostrowski_enclosure(f, x).contains(gap, slack));

    const Enclosure hh = hh_refinement(f);
    CHECK(hh.lo() >= ExtendedReal(0.0));
    const double mean_gap = integral / I.length() - f(I.midpoint());
    CHECK(hh.contains(mean_gap, slack));

    // Hermite-Hadamard chain with the oracle mean.
    const double mean = integral / I.length();
    const double scale = 1e-12 * std::max(1.0, std::abs(f(I.lo())) + std::abs(f(I.hi())));
    CHECK(f(I.midpoint()) <= mean + scale);
    CHECK(mean <= 0.5 * (f(I.lo()) + f(I.hi())) + scale);

    const EndpointSlopes s = f.endpoint_slopes();
    if (s.A.is_finite() && s.B.is_finite()) {
      const double M = std::max(std::abs(s.A.value()), std::abs(s.B.value()));
      CHECK(std::abs(gap) / I.length() <= classical_ostrowski_bound(f, x) + slack);
      if (s.A != s.B) {
        CHECK(rel_close(quadratic_form_upper(f, x), ostrowski_upper(f, x).value(),
                        1e-12 * std::max(1.0, M * I.length() * I.length())));
      }
    }
    const double h = std::min(x - I.lo(), I.hi() - x) * test_support::uniform(rng, 0.2, 2.0);
    if (h > 0.0) {
      const ConvexFunction window = f.restricted(Interval(x - 0.5 * h, x + 0.5 * h));
      const double wgap = oracle::reference_integral(window).value - h * f(x);
      CHECK(window_enclosure(f, x, h).contains(wgap, slack));
    }
    if (f.left_derivative(x) == f.right_derivative(x)) {
      const double dl = differentiable_lower(f, x);
      CHECK(dl * I.length() <= gap + slack);
      CHECK(rel_close(dl * I.length(), ostrowski_lower(f, x), 1e-12));
    }
  }
}

TEST_CASE("quadratic vertex diagnostic") {
  // A <= 0 <= B places the vertex inside [a, b].
  const QuadraticVertexDiagnostic d = quadratic_vertex_diagnostic(kink, 0.25);
  CHECK(d.inside);
  CHECK(d.x0 == 0.5);
  const QuadraticVertexDiagnostic e =
      quadratic_vertex_diagnostic(catalog::on(catalog::exponential(), 0, 1), std::numbers::e - 1.0);
  CHECK_FALSE(e.inside);
  CHECK(std::isnan(e.vertex_gap));
}
