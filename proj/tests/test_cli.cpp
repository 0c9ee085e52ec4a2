#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "convex_enclose/cli.hpp"
#include "convex_enclose/means.hpp"

using convex_enclose::cli::run;
using Json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json invoke_json(std::vector<std::string> args) {
  const Outcome o = invoke(std::move(args));
  REQUIRE(o.code == 0);
  return Json::parse(o.out);
}

}  // namespace

TEST_CASE("enclose example") {
  const Json j = invoke_json({"enclose", "--fn", "t^2", "--a", "0", "--b", "1", "--x", "0.5"});
  CHECK(j["command"] == "enclose");
  CHECK(j["result"]["lower"] == 0.0);
  CHECK(j["result"]["upper"] == 0.25);
  CHECK(j["result"]["hh_lower"] == 0.0);
  CHECK(j["result"]["hh_upper"] == 0.25);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"certificates", "command", "input", "result", "warnings"});
}

TEST_CASE("integrate example") {
  const Json j = invoke_json({"integrate", "--fn", "exp(t)", "--a", "0", "--b", "1", "--tol", "1e-6", "--oracle"});
  const double lo = j["result"]["interval"][0], hi = j["result"]["interval"][1];
  CHECK(lo <= 1.7182818284590452);
  CHECK(1.7182818284590452 <= hi);
  CHECK(hi - lo <= 1e-6);
  CHECK(j["certificates"]["oracle"]["contained"] == true);
}

TEST_CASE("divergence example") {
  const Json j = invoke_json({"divergence", "--kernel", "chi2", "--p", "0.5,0.5", "--q", "0.25,0.75"});
  CHECK(j["result"]["csiszar"] == 0.25);
  CHECK(j["result"]["lin_wong"] == 0.0625);
  CHECK(std::abs(j["result"]["hh"].get<double>() - 1.0 / 12.0) <= 1e-12);
  CHECK(j["result"]["gap_bounds"][0] == 0.0);
  CHECK(j["result"]["gap_bounds"][1] == 0.0625);
}

TEST_CASE("other subcommands") {
  const Json m = invoke_json({"means", "--fn", "square", "--a", "0", "--b", "2", "--c", "0", "--d", "1"});
  CHECK(std::abs(m["result"]["lower"].get<double>() - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(m["result"]["upper"].get<double>() - 7.0 / 3.0) <= 1e-12);
  const Json s = invoke_json({"special-means", "--a", "1", "--b", "2", "--c", "1.2", "--d", "1.7"});
  CHECK(s["result"]["kernels"].size() == 3);
  CHECK(s["certificates"]["sandwich_holds"] == true);
  const Json p = invoke_json({"prob", "--density", "steps:0,2", "--a", "0", "--b", "1"});
  CHECK(p["result"]["median_probability"] == Json::array({0.0, 0.0}));
  const Json w = invoke_json({"prob", "--density", "power:1", "--a", "0", "--b", "4"});
  CHECK(w["warnings"].size() == 1);
  const Json inf = invoke_json({"enclose", "--fn", "neg-sqrt", "--a", "0", "--b", "1"});
  CHECK(inf["result"]["upper"] == "+inf");
}

TEST_CASE("exit codes") {
  const Outcome nonconvex = invoke({"enclose", "--fn", "-t^2", "--a", "0", "--b", "1"});
  CHECK(nonconvex.code == 2);
  CHECK(nonconvex.err.find("s = ") != std::string::npos);
  CHECK(nonconvex.out.empty());
  CHECK(invoke({"enclose", "--fn", "t^^2", "--a", "0", "--b", "1"}).code == 2);
  CHECK(invoke({"enclose", "--fn", "t^2", "--a", "1", "--b", "0"}).code == 2);
  CHECK(invoke({"divergence", "--kernel", "chi2", "--p", "0.5,0.6", "--q", "0.5,0.5"}).code == 2);
  CHECK(invoke({"prob", "--density", "steps:2,0", "--a", "0", "--b", "1"}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  const Outcome budget = invoke({"integrate", "--fn", "exp", "--a", "0", "--b", "1", "--tol", "1e-12", "--max-cells", "64"});
  CHECK(budget.code == 3);
  CHECK_FALSE(budget.err.empty());
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("csv output") {
  const Outcome o = invoke({"divergence", "--kernel", "chi2", "--p", "0.5,0.5", "--q", "0.25,0.75", "--format", "csv"});
  CHECK(o.code == 0);
  CHECK(o.out.rfind("key,value\n", 0) == 0);
  CHECK(o.out.find("result.csiszar,0.25\n") != std::string::npos);
  CHECK(o.out.find("result.gap_bounds[1],0.0625\n") != std::string::npos);
}

TEST_CASE("output is identical across runs") {
  const std::vector<std::vector<std::string>> commands = {
      {"enclose", "--fn", "t*ln(t)", "--a", "0.5", "--b", "2", "--x", "0.7", "--oracle"},
      {"integrate", "--fn", "abs(t - 0.3)", "--a", "0", "--b", "1", "--tol", "1e-5"},
      {"prob", "--density", "exp:1.5", "--a", "0", "--b", "2", "--x", "1.2", "--oracle"},
      {"--self-test"},
  };
  for (const auto& args : commands) {
    const Outcome first = invoke(args), second = invoke(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("self-test honours the seed variable") {
  setenv("CONVEX_ENCLOSE_SEED", "12345", 1);
  const Json j = invoke_json({"--self-test"});
  CHECK(j["input"]["seed"] == 12345);
  CHECK(j["certificates"]["passed"] == true);
  unsetenv("CONVEX_ENCLOSE_SEED");
}

TEST_CASE("numbers round-trip exactly") {
  const Json j = invoke_json({"special-means", "--a", "1", "--b", "2.718281828459045"});
  const double L = j["result"]["logarithmic"];
  CHECK(L == convex_enclose::special_means(1.0, 2.718281828459045, 2.0).logarithmic);
}
