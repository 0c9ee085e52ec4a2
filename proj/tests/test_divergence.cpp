#include <doctest.h>

#include <cmath>

#include "convex_enclose/divergence.hpp"
#include "convex_enclose/reference_oracle.hpp"
#include "support.hpp"

using namespace convex_enclose;
using test_support::rel_close;

namespace {

const DiscreteDistribution P({0.5, 0.5});
const DiscreteDistribution Q({0.25, 0.75});

DiscreteDistribution random_distribution(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& v : w) sum += v = test_support::uniform(rng, 0.05, 1.0);
  for (double& v : w) v /= sum;
  // Put the rounding residue on the largest weight so the sum is 1 to 1e-12.
  double total = 0.0;
  for (double v : w) total += v;
  *std::max_element(w.begin(), w.end()) += 1.0 - total;
  return DiscreteDistribution(w);
}

}  // namespace

TEST_CASE("distributions validate themselves") {
  CHECK_THROWS_AS(DiscreteDistribution({0.5, 0.6}), InvalidDistributionError);
  CHECK_THROWS_AS(DiscreteDistribution({1.0, 0.0}), InvalidDistributionError);
  CHECK_THROWS_AS(DiscreteDistribution({}), InvalidDistributionError);
  CHECK_THROWS_AS(DiscreteDistribution::parse("0.5,abc"), InvalidDistributionError);
  CHECK(DiscreteDistribution::parse("0.25, 0.75")[1] == 0.75);
  CHECK_THROWS_AS(csiszar_divergence(DivergenceKernel::by_name("kl"), P, DiscreteDistribution({0.2, 0.3, 0.5})),
                  InvalidDistributionError);
  CHECK_THROWS_AS(DivergenceKernel::by_name("sine"), InputError);
}

TEST_CASE("chi-square worked case") {
  const DivergenceKernel chi2 = DivergenceKernel::by_name("chi2");
  CHECK(rel_close(csiszar_divergence(chi2, P, Q), 0.25, 1e-15));
  CHECK(rel_close(lin_wong_divergence(chi2, P, Q), 0.0625, 1e-15));
  CHECK(rel_close(hh_divergence(chi2, P, Q), 1.0 / 12.0, 1e-12));
  const HhSandwich s = hh_sandwich(chi2, P, Q);
  CHECK(rel_close(s.half_csiszar, 0.125, 1e-15));
  const Enclosure gap = hh_gap_bounds(chi2, P, Q);
  CHECK(std::abs(gap.lo().value()) <= 1e-15);
  CHECK(rel_close(gap.hi().value(), 0.0625, 1e-15));
  CHECK(gap.contains(1.0 / 48.0));
}

TEST_CASE("KL and shifted-abs worked cases") {
  const DivergenceKernel kl = DivergenceKernel::by_name("kl");
  CHECK(rel_close(csiszar_divergence(kl, P, Q), 0.25 * std::log(0.5) + 0.75 * std::log(1.5), 1e-14));
  CHECK(rel_close(oracle::brute_force_hh(kl, P, Q), hh_divergence(kl, P, Q), 1e-10));
  const HhSandwich s = hh_sandwich(kl, P, Q);
  CHECK(s.lin_wong <= s.hh);
  CHECK(s.hh <= s.half_csiszar);

  const DivergenceKernel sa = DivergenceKernel::by_name("shifted-abs");
  CHECK(std::abs(lin_wong_divergence(sa, P, Q)) <= 1e-15);
  CHECK(rel_close(hh_divergence(sa, P, Q), 1.0 / 16.0, 1e-12));
  const Enclosure gap = hh_gap_bounds(sa, P, Q);
  CHECK(rel_close(gap.lo().value(), 1.0 / 16.0, 1e-12));
  CHECK(rel_close(gap.hi().value(), 1.0 / 16.0, 1e-12));
}

TEST_CASE("zero self-divergence") {
  const DiscreteDistribution p({0.2, 0.3, 0.5});
  for (const std::string& name : DivergenceKernel::names()) {
    const DivergenceKernel f = DivergenceKernel::by_name(name);
    CAPTURE(std::string(name));
    CHECK(std::abs(csiszar_divergence(f, p, p)) <= 1e-12);
    CHECK(std::abs(lin_wong_divergence(f, p, p)) <= 1e-12);
    CHECK(std::abs(hh_divergence(f, p, p)) <= 1e-12);
    CHECK(std::abs(oracle::brute_force_hh(f, p, p)) <= 1e-12);
    const Enclosure g = hh_gap_bounds(f, p, p);
    CHECK(std::abs(g.lo().value()) <= 1e-12);
    CHECK(std::abs(g.hi().value()) <= 1e-12);
  }
}

TEST_CASE("fuzzed sandwich, gap containment and upper-bound equivalence") {
  std::mt19937_64 rng(test_support::kSeed + 50);
  for (const char* name : {"chi2", "kl", "tv", "burg", "hellinger", "shifted-abs"}) {
    const DivergenceKernel f = DivergenceKernel::by_name(name);
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = 2 + static_cast<std::size_t>(i % 15);
      const DiscreteDistribution p = random_distribution(rng, n), q = random_distribution(rng, n);
      const HhSandwich s = hh_sandwich(f, p, q);
      const double slack = 1e-10 * std::max(1.0, std::abs(s.half_csiszar));
      CAPTURE(std::string(name));
      CHECK(s.lin_wong <= s.hh + slack);
      CHECK(s.hh <= s.half_csiszar + slack);
      CHECK(2.0 * s.half_csiszar >= -slack);
      CHECK(s.hh - s.lin_wong >= -slack);
      CHECK(hh_gap_bounds(f, p, q).contains(s.hh - s.lin_wong, slack));
      CHECK(std::abs(hh_gap_upper_compact(f, p, q) - hh_gap_bounds(f, p, q).hi().value()) <= 1e-12);
    }
  }
}

TEST_CASE("hh divergence matches the brute-force oracle") {
  std::mt19937_64 rng(test_support::kSeed + 51);
  for (const char* name : {"chi2", "kl", "tv", "burg", "hellinger"}) {
    const DivergenceKernel f = DivergenceKernel::by_name(name);
    for (int i = 0; i < 20; ++i) {
      const DiscreteDistribution p = random_distribution(rng, 4), q = random_distribution(rng, 4);
      CAPTURE(std::string(name));
      CHECK(rel_close(oracle::brute_force_hh(f, p, q), hh_divergence(f, p, q), 1e-10));
    }
  }
}
