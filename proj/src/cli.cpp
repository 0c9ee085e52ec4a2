#include "convex_enclose/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "convex_enclose/catalog.hpp"
#include "convex_enclose/convex_function.hpp"
#include "convex_enclose/divergence.hpp"
#include "convex_enclose/expression.hpp"
#include "convex_enclose/means.hpp"
#include "convex_enclose/pointwise_bounds.hpp"
#include "convex_enclose/probability.hpp"
#include "convex_enclose/quadrature.hpp"
#include "convex_enclose/reference_oracle.hpp"

namespace convex_enclose::cli {

namespace {

using Json = nlohmann::ordered_json;

Json number(ExtendedReal v) {
  if (v.is_finite()) return v.value();
  return v > ExtendedReal(0.0) ? "+inf" : "-inf";
}

Json interval(const Enclosure& e) { return Json::array({number(e.lo()), number(e.hi())}); }

struct Document {
  std::string command;
  Json input = Json::object();
  Json result = Json::object();
  Json certificates = Json::object();
  std::vector<std::string> warnings;

  Json to_json() const {
    Json doc;
    doc["command"] = command;
    doc["input"] = input;
    doc["result"] = result;
    doc["certificates"] = certificates;
    doc["warnings"] = warnings;
    return doc;
  }
};

// Rows "path,value" in document order; strings are quoted when needed.
void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) {
      out << path << ',' << s << '\n';
    } else {
      std::string quoted = "\"";
      for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      out << path << ',' << quoted << "\"\n";
    }
  } else {
    out << path << ',' << j.dump() << '\n';
  }
}

void emit(const Document& doc, const std::string& format, std::ostream& out) {
  const Json j = doc.to_json();
  if (format == "csv") {
    out << "key,value\n";
    flatten(j, "", out);
  } else {
    out << j.dump(2) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Function loading

struct LoadedFunction {
  ConvexFunction f;
  ConvexityReport convexity;
  std::vector<std::string> warnings;
};

catalog::ModelPtr model_from_text(const std::string& text, double a, double b, std::vector<std::string>& warnings) {
  try {
    const expr::Expression e = expr::parse_expression(text);
    expr::BuiltModel built = expr::expression_model(e, a, b);
    warnings.insert(warnings.end(), built.warnings.begin(), built.warnings.end());
    return built.model;
  } catch (const expr::ParseError& parse_error) {
    try {
      return catalog::by_name(text);
    } catch (const InputError&) {
      throw InputError(std::string(parse_error.what()) + " (and '" + text + "' is not a catalog name)");
    }
  }
}

Json convexity_json(const ConvexityReport& r) {
  return {{"passed", r.passed}, {"pairs_checked", r.pairs_checked}, {"worst_violation", r.worst_violation}};
}

LoadedFunction load_function(const std::string& text, double a, double b) {
  std::vector<std::string> warnings;
  auto model = model_from_text(text, a, b, warnings);
  ConvexFunction f(Interval(a, b), std::move(model));
  const ConvexityReport report = check_convexity(f);
  if (!report.passed) throw NonConvexError(report);
  if (!f.certified() && warnings.empty())
    warnings.push_back("one-sided derivatives are estimated from samples; the result is not certified");
  return {f, report, std::move(warnings)};
}

void add_function_certificates(Document& doc, const LoadedFunction& lf) {
  doc.certificates["derivatives_certified"] = lf.f.certified();
  doc.certificates["convexity"] = convexity_json(lf.convexity);
  doc.warnings.insert(doc.warnings.end(), lf.warnings.begin(), lf.warnings.end());
}

Json oracle_json(const oracle::OracleResult& r) {
  return {{"value", r.value}, {"est_error", r.est_error}, {"method", oracle::to_string(r.method)}};
}

double containment_slack(double scale) { return 1e-10 * std::max(1.0, std::abs(scale)); }

// ---------------------------------------------------------------------------
// Commands

struct Options {
  std::string fn;
  double a = 0.0, b = 1.0;
  std::optional<double> x, h, c, d, n_cells;
  double p = 2.0;
  double tol = 1e-6;
  std::size_t max_cells = kDefaultMaxCells;
  std::string kernel, p_weights, q_weights, density = "uniform";
  bool normalize = false;
  bool oracle = false;
};

Document enclose(const Options& o) {
  Document doc;
  doc.command = "enclose";
  const LoadedFunction lf = load_function(o.fn, o.a, o.b);
  const ConvexFunction& f = lf.f;
  const double x = o.x.value_or(f.domain().midpoint());
  doc.input = {{"fn", o.fn}, {"a", o.a}, {"b", o.b}, {"x", x}};
  if (o.h) doc.input["window"] = *o.h;

  // At an end point only the upper line holds.
  const Enclosure ost = f.domain().contains_interior(x)
                            ? ostrowski_enclosure(f, x)
                            : Enclosure(ExtendedReal::minus_infinity(), ostrowski_upper(f, x));
  const Enclosure hh = hh_refinement(f);
  doc.result["lower"] = number(ost.lo());
  doc.result["upper"] = number(ost.hi());
  doc.result["hh_lower"] = number(hh.lo());
  doc.result["hh_upper"] = number(hh.hi());

  const EndpointSlopes slopes = f.endpoint_slopes();
  if (slopes.A.is_finite() && slopes.B.is_finite()) {
    if (slopes.B != slopes.A) doc.result["quadratic_form_upper"] = quadratic_form_upper(f, x);
    doc.result["classical"] = classical_ostrowski_bound(f, x);
    const BestPoint best = best_evaluation_point(f);
    doc.result["best_x"] = best.x;
    doc.result["best_upper"] = best.bound;
  } else {
    doc.warnings.push_back("an endpoint slope is infinite; the classical bound and best point are not available");
  }
  if (o.h) doc.result["window"] = interval(window_enclosure(f, x, *o.h));

  add_function_certificates(doc, lf);
  if (o.oracle) {
    const oracle::OracleResult r = oracle::reference_integral(f);
    const double gap = r.value - f.domain().length() * f(x);
    const double slack = containment_slack(std::abs(r.value) + f.domain().length() * std::abs(f(x)));
    doc.certificates["oracle"] = oracle_json(r);
    doc.certificates["oracle"]["gap"] = gap;
    doc.certificates["oracle"]["contained"] = ost.contains(gap, slack);
  }
  return doc;
}

Document integrate(const Options& o) {
  Document doc;
  doc.command = "integrate";
  const LoadedFunction lf = load_function(o.fn, o.a, o.b);
  doc.input = {{"fn", o.fn}, {"a", o.a}, {"b", o.b}};
  QuadratureResult res = [&] {
    if (o.n_cells) {
      if (!(*o.n_cells >= 1.0) || *o.n_cells != std::floor(*o.n_cells))
        throw InputError("--n must be a positive integer");
      doc.input["n"] = static_cast<std::size_t>(*o.n_cells);
      doc.input["rule"] = "midpoint";
      return midpoint_rule(lf.f, static_cast<std::size_t>(*o.n_cells));
    }
    doc.input["tol"] = o.tol;
    doc.input["max_cells"] = o.max_cells;
    doc.input["rule"] = "adaptive";
    return integrate_adaptive(lf.f, o.tol, o.max_cells);
  }();
  const Enclosure integral = res.integral();
  doc.result["estimate"] = res.estimate;
  doc.result["remainder"] = interval(res.remainder);
  doc.result["interval"] = interval(integral);
  doc.result["width"] = number(integral.width());
  doc.result["cells"] = res.cells;

  add_function_certificates(doc, lf);
  if (o.oracle) {
    const oracle::OracleResult r = oracle::reference_integral(lf.f);
    doc.certificates["oracle"] = oracle_json(r);
    doc.certificates["oracle"]["contained"] = integral.contains(r.value, containment_slack(r.value));
  }
  return doc;
}

Document means(const Options& o) {
  Document doc;
  doc.command = "means";
  if (!o.c || !o.d) throw InputError("means needs --c and --d");
  const LoadedFunction lf = load_function(o.fn, o.a, o.b);
  doc.input = {{"fn", o.fn}, {"a", o.a}, {"b", o.b}, {"c", *o.c}, {"d", *o.d}};
  const MeanComparison m = mean_comparison(lf.f, Interval(*o.c, *o.d));
  doc.result["lower"] = m.lower;
  doc.result["gap"] = m.gap;
  doc.result["upper"] = number(m.upper);
  add_function_certificates(doc, lf);
  doc.certificates["sandwich_holds"] =
      m.lower <= m.gap + containment_slack(m.gap) && ExtendedReal(m.gap) <= m.upper + containment_slack(m.gap);
  return doc;
}

Document special(const Options& o) {
  Document doc;
  doc.command = "special-means";
  const double c = o.c.value_or(o.a), d = o.d.value_or(o.b);
  doc.input = {{"a", o.a}, {"b", o.b}, {"c", c}, {"d", d}, {"p", o.p}};
  const SpecialMeans s = special_means(o.a, o.b, o.p);
  doc.result["arithmetic"] = s.arithmetic;
  doc.result["logarithmic"] = s.logarithmic;
  doc.result["identric"] = s.identric;
  doc.result["p_logarithmic"] = s.p_logarithmic;
  Json kernels = Json::array();
  bool all = true;
  for (const MeanKernelCheck& k : verify_mean_inequalities(o.a, o.b, c, d, o.p)) {
    kernels.push_back({{"kernel", k.kernel},
                       {"lower", k.comparison.lower},
                       {"gap", k.comparison.gap},
                       {"upper", number(k.comparison.upper)},
                       {"gap_from_special_means", k.gap_from_special_means},
                       {"sandwich_holds", k.sandwich_holds}});
    all = all && k.sandwich_holds;
  }
  doc.result["kernels"] = kernels;
  doc.certificates["sandwich_holds"] = all;
  return doc;
}

std::vector<double> parse_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": bad number '" + item + "'");
    }
  }
  return out;
}

// uniform | power:k | exp:rate | steps:l0,l1,... (equal-width cells) | an expression in t.
RandomVariableModel load_density(const Options& o, std::vector<std::string>& warnings) {
  const std::string& d = o.density;
  const auto colon = d.find(':');
  const std::string head = d.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : d.substr(colon + 1);
  if (d == "uniform") return RandomVariableModel::uniform(o.a, o.b);
  if (head == "power" && !tail.empty()) return RandomVariableModel::power(parse_list(tail, "power")[0], o.a, o.b);
  if (head == "exp" && !tail.empty())
    return RandomVariableModel::truncated_exponential(parse_list(tail, "exp")[0], o.a, o.b);
  if (head == "steps" && !tail.empty()) {
    std::vector<double> levels = parse_list(tail, "steps");
    std::vector<double> breaks(levels.size() + 1);
    for (std::size_t i = 0; i <= levels.size(); ++i)
      breaks[i] = i == levels.size() ? o.b : o.a + (o.b - o.a) * static_cast<double>(i) / levels.size();
    return RandomVariableModel::steps(std::move(breaks), std::move(levels));
  }
  const expr::Expression e = expr::parse_expression(d);
  warnings.push_back("density given as an expression: its CDF is integrated numerically and not certified");
  return RandomVariableModel::from_density([e](double t) { return e.eval(t); }, Interval(o.a, o.b),
                                           e.switch_points(o.a, o.b), o.normalize, true);
}

Document prob(const Options& o) {
  Document doc;
  doc.command = "prob";
  const RandomVariableModel m = load_density(o, doc.warnings);
  const Interval& s = m.support();
  const double x = o.x.value_or(s.midpoint());
  doc.input = {{"density", o.density}, {"a", s.lo()}, {"b", s.hi()}, {"x", x}};
  doc.result["expectation"] = m.expectation();
  doc.result["cdf_gap"] = interval(cdf_gap_enclosure(m, x));
  doc.result["cdf"] = interval(cdf_enclosure(m, x));
  doc.result["median_probability"] = interval(median_point_probability(m));
  if (s.length() != 1.0)
    doc.warnings.push_back(
        "median_probability uses the form with the 1/(b-a) factor on the expectation term; it differs from the "
        "unscaled display when b - a != 1");
  doc.certificates["derivatives_certified"] = m.certified();
  const ConvexityReport report = check_convexity(m.cdf_function());
  doc.certificates["convexity"] = convexity_json(report);
  if (o.oracle) {
    const double F = m.cdf(x);
    const double e = expectation_from_cdf(m);
    doc.certificates["oracle"] = {{"cdf", F},
                                  {"expectation_from_cdf", e},
                                  {"contained", cdf_enclosure(m, x).contains(F, 1e-10)}};
  }
  return doc;
}

Document divergence(const Options& o) {
  Document doc;
  doc.command = "divergence";
  const DivergenceKernel f = DivergenceKernel::by_name(o.kernel);
  const DiscreteDistribution p = DiscreteDistribution::parse(o.p_weights);
  const DiscreteDistribution q = DiscreteDistribution::parse(o.q_weights);
  doc.input = {{"kernel", o.kernel}, {"p", std::vector<double>(p.weights().begin(), p.weights().end())},
               {"q", std::vector<double>(q.weights().begin(), q.weights().end())}};
  const HhSandwich s = hh_sandwich(f, p, q);
  const Enclosure gap = hh_gap_bounds(f, p, q);
  doc.result["csiszar"] = 2.0 * s.half_csiszar;
  doc.result["lin_wong"] = s.lin_wong;
  doc.result["hh"] = s.hh;
  doc.result["gap"] = s.hh - s.lin_wong;
  doc.result["gap_bounds"] = interval(gap);
  doc.certificates["sandwich_holds"] = true;
  doc.certificates["gap_contained"] = gap.contains(s.hh - s.lin_wong, containment_slack(s.hh));
  if (o.oracle) {
    const double brute = oracle::brute_force_hh(f, p, q);
    doc.certificates["oracle"] = {{"hh", brute},
                                  {"agrees", std::abs(brute - s.hh) <= 1e-10 * std::max(1.0, std::abs(brute))}};
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Self-test

std::uint64_t self_test_seed() {
  const char* env = std::getenv("CONVEX_ENCLOSE_SEED");
  if (env == nullptr || *env == '\0') return 0x5eed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 0);
  if (*end != '\0') throw InputError("CONVEX_ENCLOSE_SEED must be an unsigned integer");
  return v;
}

Document self_test() {
  Document doc;
  doc.command = "self-test";
  const std::uint64_t seed = self_test_seed();
  doc.input["seed"] = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<std::string> names = {"square", "cube", "exp", "neg-log", "xlogx", "power:-1", "abs:1", "hinge:1.5"};

  std::size_t pointwise_failures = 0, composite_failures = 0;
  constexpr std::size_t kCases = 200;
  for (std::size_t i = 0; i < kCases; ++i) {
    const std::string& name = names[i % names.size()];
    const double a = 0.1 + 2.0 * unit(rng);
    const double b = a + 0.05 + 2.0 * unit(rng);
    const ConvexFunction f = catalog::on(catalog::by_name(name), a, b);
    const double x = a + (b - a) * (0.01 + 0.98 * unit(rng));
    const double integral = oracle::reference_integral(f).value;
    const double gap = integral - (b - a) * f(x);
    if (!ostrowski_enclosure(f, x).contains(gap, containment_slack(std::abs(integral) + (b - a) * std::abs(f(x)))))
      ++pointwise_failures;

    const std::size_t n = 1 + static_cast<std::size_t>(unit(rng) * 16);
    std::vector<double> cuts{a, b}, tags;
    for (std::size_t k = 1; k < n; ++k) cuts.push_back(a + (b - a) * unit(rng));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) tags.push_back(cuts[k] + (cuts[k + 1] - cuts[k]) * unit(rng));
    const Partition P(cuts, tags);
    const double remainder = integral - riemann_sum(f, P);
    if (!remainder_enclosure(f, P).contains(remainder, containment_slack(std::abs(integral))))
      ++composite_failures;
  }
  doc.result["pointwise"] = {{"cases", kCases}, {"failures", pointwise_failures}};
  doc.result["composite"] = {{"cases", kCases}, {"failures", composite_failures}};
  doc.certificates["passed"] = pointwise_failures == 0 && composite_failures == 0;
  return doc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified enclosures for integrals of convex functions", "convex-enclose"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  Options o;
  std::string format = "json";
  bool run_self_test = false;
  app.add_option("--format", format, "Output encoding")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--oracle", o.oracle, "Cross-check against the reference integrator");
  app.add_flag("--self-test", run_self_test, "Fuzzed containment self-check (seed: CONVEX_ENCLOSE_SEED)");

  auto function_options = [&](CLI::App* sub) {
    sub->add_option("--fn", o.fn, "Expression in t, or a catalog name (" + [] {
      std::string s;
      for (const std::string& n : catalog::names()) s += (s.empty() ? "" : ", ") + n;
      return s;
    }() + ")")->required();
    sub->add_option("--a", o.a, "Left endpoint")->required();
    sub->add_option("--b", o.b, "Right endpoint")->required();
  };

  CLI::App* cmd_enclose = app.add_subcommand("enclose", "Pointwise enclosure, midpoint refinement and classical bound");
  function_options(cmd_enclose);
  cmd_enclose->add_option("--x", o.x, "Evaluation point (default: midpoint)");
  cmd_enclose->add_option("--window", o.h, "Window width h for the window enclosure");

  CLI::App* cmd_integrate = app.add_subcommand("integrate", "Certified integral by adaptive bisection");
  function_options(cmd_integrate);
  cmd_integrate->add_option("--tol", o.tol, "Target width of the enclosure");
  cmd_integrate->add_option("--max-cells", o.max_cells, "Cell budget");
  cmd_integrate->add_option("--n", o.n_cells, "Use the composite midpoint rule with n cells instead");

  CLI::App* cmd_means = app.add_subcommand("means", "Compare integral means over [c, d] and [a, b]");
  function_options(cmd_means);
  cmd_means->add_option("--c", o.c, "Left end of the sub-interval")->required();
  cmd_means->add_option("--d", o.d, "Right end of the sub-interval")->required();

  CLI::App* cmd_special = app.add_subcommand("special-means", "Special means and their inequalities");
  cmd_special->add_option("--a", o.a, "Smaller positive number")->required();
  cmd_special->add_option("--b", o.b, "Larger positive number")->required();
  cmd_special->add_option("--p", o.p, "Order of the p-logarithmic mean");
  cmd_special->add_option("--c", o.c, "Left end of the sub-interval (default: a)");
  cmd_special->add_option("--d", o.d, "Right end of the sub-interval (default: b)");

  CLI::App* cmd_prob = app.add_subcommand("prob", "CDF enclosures for a nondecreasing density");
  cmd_prob->add_option("--density", o.density, "uniform, power:k, exp:rate, steps:l0,l1,... or an expression in t");
  cmd_prob->add_option("--a", o.a, "Left end of the support")->required();
  cmd_prob->add_option("--b", o.b, "Right end of the support")->required();
  cmd_prob->add_option("--x", o.x, "Point at which to enclose F (default: midpoint)");
  cmd_prob->add_flag("--normalize", o.normalize, "Rescale an expression density to unit mass");

  CLI::App* cmd_div = app.add_subcommand("divergence", "f-divergences and their midpoint sandwich");
  cmd_div->add_option("--kernel", o.kernel, "Kernel name")->required()->check(CLI::IsMember(DivergenceKernel::names()));
  cmd_div->add_option("--p", o.p_weights, "Comma-separated weights")->required();
  cmd_div->add_option("--q", o.q_weights, "Comma-separated weights")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    Document doc;
    if (run_self_test) doc = self_test();
    else if (cmd_enclose->parsed()) doc = enclose(o);
    else if (cmd_integrate->parsed()) doc = integrate(o);
    else if (cmd_means->parsed()) doc = means(o);
    else if (cmd_special->parsed()) doc = special(o);
    else if (cmd_prob->parsed()) doc = prob(o);
    else if (cmd_div->parsed()) doc = divergence(o);
    else {
      err << app.help();
      return kInvalidInput;
    }
    emit(doc, format, out);
    if (run_self_test && !doc.certificates["passed"].get<bool>()) return kNumericalFailure;
    return kOk;
  } catch (const NonConvexError& e) {
    err << "error: function is not convex: " << e.report().describe() << '\n';
    return kInvalidInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << " (best enclosure so far: [" << e.best().integral().lo().to_string() << ", "
        << e.best().integral().hi().to_string() << "] with " << e.best().cells << " cells)\n";
    return kNumericalFailure;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace convex_enclose::cli
