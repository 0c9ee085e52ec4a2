#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "convex_enclose/catalog.hpp"
#include "convex_enclose/convex_function.hpp"

namespace test_support {

using namespace convex_enclose;

inline constexpr std::uint64_t kSeed = 20260417;

inline bool rel_close(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::max(1.0, std::abs(want));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct FuzzFunction {
  std::string label;
  ConvexFunction f;
};

// A random catalog function on a random interval inside (0.05, 6), covering
// smooth, kinked and infinite-slope members. Kinks are placed inside the
// interval so the nonsmooth paths are exercised.
inline FuzzFunction random_function(std::mt19937_64& rng, std::size_t kind) {
  const double a = uniform(rng, 0.05, 3.0);
  const double b = a + uniform(rng, 0.05, 3.0);
  const double inside = a + (b - a) * uniform(rng, 0.05, 0.95);
  using namespace catalog;
  switch (kind % 12) {
    case 0: return {"square", on(power(2.0), a, b)};
    case 1: return {"cube", on(power(3.0), a, b)};
    case 2: return {"exp", on(exponential(), a, b)};
    case 3: return {"neg-log", on(neg_log(), a, b)};
    case 4: return {"xlogx", on(x_log_x(), a, b)};
    case 5: return {"power:-1", on(power(-1.0), a, b)};
    case 6: return {"power:2.5", on(power(2.5), a, b)};
    case 7: return {"abs", on(abs_shift(inside), a, b)};
    case 8: return {"hinge", on(hinge(inside), a, b)};
    case 9: return {"affine", on(affine(uniform(rng, -3.0, 3.0), uniform(rng, -1.0, 1.0)), a, b)};
    case 10: return {"neg-sqrt", on(neg_sqrt(), 0.0, b)};
    default: return {"witness", on(sharpness_witness(uniform(rng, 0.1, 5.0), inside), a, b)};
  }
}

inline constexpr std::size_t kFuzzKinds = 12;

}  // namespace test_support
