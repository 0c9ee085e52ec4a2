#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "convex_enclose/catalog.hpp"
#include "convex_enclose/convex_function.hpp"
#include "convex_enclose/enclosure.hpp"

namespace convex_enclose {

// Strictly positive probability vector on a finite alphabet.
class DiscreteDistribution {
 public:
  // Throws InvalidDistributionError unless every weight is > 0 and the
  // weights sum to 1 within 1e-12.
  explicit DiscreteDistribution(std::vector<double> weights);

  // Parses "0.5,0.25,0.25".
  static DiscreteDistribution parse(const std::string& csv);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// A convex kernel on (0, inf) normalized by f(1) = 0.
class DivergenceKernel {
 public:
  // Throws InputError unless the model lives on (0, inf), has one-sided
  // derivative oracles, and f(1) = 0 within 1e-12.
  DivergenceKernel(std::string name, catalog::ModelPtr model);

  // chi2 (t-1)^2, kl t ln t, tv |t-1|, burg -ln t + t - 1,
  // hellinger (sqrt t - 1)^2, shifted-abs |t - 5/4| - 1/4.
  static DivergenceKernel by_name(const std::string& name);
  static std::vector<std::string> names();

  const std::string& name() const { return name_; }
  double operator()(double t) const;
  ExtendedReal left_derivative(double t) const;
  ExtendedReal right_derivative(double t) const;
  bool has_antiderivative() const { return static_cast<bool>(model_->antiderivative); }

  // The kernel as a convex function on a closed interval inside (0, inf).
  ConvexFunction on(const Interval& range) const { return {range, model_}; }

 private:
  std::string name_;
  catalog::ModelPtr model_;
};

// sum p_i f(q_i / p_i).
double csiszar_divergence(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q);

// csiszar_divergence(f, p, (p + q)/2).
double lin_wong_divergence(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q);

// sum p_i^2/(q_i - p_i) int_1^{q_i/p_i} f, a term being 0 when q_i = p_i.
// Inner integrals use the kernel's antiderivative when it has one, otherwise
// the certified mid-point integrator at width 1e-12.
double hh_divergence(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q);

struct HhSandwich {
  double lin_wong;
  double hh;
  double half_csiszar;
};

// lin_wong <= hh <= csiszar / 2. Throws InternalInconsistencyError when the
// ordering fails beyond round-off.
HhSandwich hh_sandwich(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q);

// Encloses hh - lin_wong in
//   [(1/8) sum (f'_+(m_i) - f'_-(m_i)) |q_i - p_i|, (1/8) sum (f'_-(r_i) - f'_+(1))(q_i - p_i)]
// with r_i = q_i/p_i and m_i = (p_i + q_i)/(2 p_i).
Enclosure hh_gap_bounds(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q);

// (1/8) sum f'_-(r_i)(q_i - p_i): the upper gap bound without the f'_+(1)
// term, which cancels because sum (q_i - p_i) = 0.
double hh_gap_upper_compact(const DivergenceKernel& f, const DiscreteDistribution& p, const DiscreteDistribution& q);

}  // namespace convex_enclose
