#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bcwp/cli/builders.hpp"
#include "bcwp/cli/commands.hpp"
#include "bcwp/errors.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace bcwp::cli;

namespace {

Json config(const std::string& yaml, const std::vector<std::string>& sets = {}) { return resolve_config(yaml, sets); }

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const bcwp::ConfigError& e) {
    return e.what();
  }
  return "";
}

std::vector<std::string> column(const CsvSeries& s, const std::string& name) {
  const auto it = std::find(s.header.begin(), s.header.end(), name);
  REQUIRE(it != s.header.end());
  const auto c = static_cast<std::size_t>(it - s.header.begin());
  std::vector<std::string> out;
  for (const auto& r : s.rows) out.push_back(r[c]);
  return out;
}

const CsvSeries& series(const RunReport& r, const std::string& name) {
  for (const auto& s : r.series)
    if (s.name == name) return s;
  FAIL("missing series " << name);
  return r.series.front();
}

}  // namespace

TEST_CASE("resolved config records every schema key") {
  const Json c = config("command: classify\n");
  for (const auto& f : config_schema()) {
    CHECK_NOTHROW(at_path(c, f.path));
    if (!f.default_value.is_null() && f.path != "command") CHECK(at_path(c, f.path) == f.default_value);
  }
  CHECK(get_string(c, "command") == "classify");
  // a config without a command still resolves; the command is only required when running
  CHECK(config("")["command"].is_null());
  CHECK_THROWS_AS(run_experiment(config("")), bcwp::ConfigError);
}

TEST_CASE("unknown keys and ill-typed values name the key path") {
  CHECK(error_of([] { config("solver:\n  lamda: 1\n"); }).find("solver.lamda") != std::string::npos);
  CHECK(error_of([] { config("bogus: 1\n"); }).find("bogus") != std::string::npos);
  CHECK(error_of([] { config("base: 3\n"); }).find("base: expected a mapping") != std::string::npos);
  CHECK(error_of([] { config("solver:\n  lambda: abc\n"); }).find("solver.lambda") != std::string::npos);
  CHECK(error_of([] { config("fiber:\n  k: 1.5\n"); }).find("fiber.k") != std::string::npos);
  CHECK(error_of([] { config("fiber:\n  k: 0\n"); }).find("fiber.k") != std::string::npos);
  CHECK(error_of([] { config("base:\n  kind: cube\n"); }).find("base.kind") != std::string::npos);
  CHECK(error_of([] { config("mu: 1/0\n"); }).find("mu") == 0);
  CHECK(error_of([] { config("base:\n  points: [16, x]\n"); }).find("base.points") != std::string::npos);
  CHECK(error_of([] { config("", {"solver.nope=1"}); }).find("solver.nope") != std::string::npos);
  CHECK(error_of([] { config("", {"solver.lambda"}); }).find("key=value") != std::string::npos);
  CHECK(error_of([] { config("[1, 2]"); }).find("<root>") != std::string::npos);
  CHECK(error_of([] { config("a: [1,\n"); }).find("malformed YAML") != std::string::npos);
}

TEST_CASE("overrides replace file values and are typed") {
  const Json c = config("solver:\n  lambda: 2\nmu: 0.5\n", {"solver.lambda=-0.25", "base.points=[8, 6]"});
  CHECK(get_number(c, "solver.lambda") == -0.25);
  CHECK(get_string(c, "mu") == "1/2");  // exact canonical form
  CHECK(get_integer_list(c, "base.points") == std::vector<int>{8, 6});
  CHECK(get_integer_list(config("base:\n  points: 12\n"), "base.points") == std::vector<int>{12});
}

TEST_CASE("format_number round-trips and CSV cells are quoted") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> exponent(-300.0, 300.0), mantissa(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = mantissa(rng) * std::pow(10.0, exponent(rng));
    CHECK(std::strtod(format_number(x).c_str(), nullptr) == x);
  }
  CHECK(format_number(10.0) == "10");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(NAN) == "nan");
  CsvSeries s;
  s.header = {"a", "b"};
  s.rows = {{"x,y", "say \"hi\""}};
  CHECK(s.to_csv() == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
}

TEST_CASE("verify: constant psi gives machine-level residuals and an n/a order column") {
  const RunReport r = run_experiment(config("command: verify\npsi:\n  amplitude: 0\n"));
  CHECK(r.exit_code == 0);
  CHECK(r.document["results"]["trivial"] == true);
  for (const auto& l : r.document["results"]["levels"]) {
    CHECK(l["reduced_vs_closed"].get<double>() <= 1e-9);
    CHECK(l["brute_force_error"].get<double>() <= 1e-9);
  }
  for (const auto& o : r.document["results"]["orders"]) CHECK(o == "n/a");
  const auto orders = column(series(r, "ladder"), "order");
  CHECK(orders == std::vector<std::string>{"", "n/a", "n/a"});
}

TEST_CASE("verify: T^3 x S^1 ladder converges at second order for every mu") {
  for (const char* mu : {"-1", "-1/2", "0", "1/2", "2"}) {
    CAPTURE(mu);
    const RunReport r = run_experiment(config("command: verify\n", {std::string("mu=") + mu}));
    CHECK(r.exit_code == 0);
    CHECK(r.document["results"]["trivial"] == false);
    for (const auto& o : r.document["results"]["orders"]) {
      CHECK(o.get<double>() >= 1.8);
      CHECK(o.get<double>() <= 2.2);
    }
  }
  // loosening nothing: an impossible order window fails the run
  CHECK(run_experiment(config("command: verify\n", {"verify.order_min=2.5", "verify.order_max=3"})).exit_code == 1);
}

TEST_CASE("verify: a nonpositive psi sample is a config error naming psi") {
  const std::string what = error_of([] { run_experiment(config("command: verify\npsi:\n  amplitude: 3\n")); });
  CHECK(what.rfind("psi", 0) == 0);
}

TEST_CASE("classify (7, 4, 1/2, S_F < 0) is concave-convex") {
  const RunReport r = run_experiment(config("command: classify\n"));
  CHECK(r.exit_code == 0);
  CHECK(r.document["results"]["regime"] == "concave-convex");
  CHECK(r.document["results"]["mu_minus"]["exact"] == "-8/27 - 1/27*sqrt(10)");
}

TEST_CASE("regime series for (7, 4): q crosses zero near -0.4134 and -0.1792") {
  const RunReport r = run_experiment(config("command: regime-series\n"));
  const Json& roots = r.document["results"]["q_zero_crossings"];
  REQUIRE(roots.size() == 2);
  CHECK(roots[0]["value"].get<double>() == doctest::Approx(-0.4134).epsilon(1e-4));
  CHECK(roots[1]["value"].get<double>() == doctest::Approx(-0.1792).epsilon(1e-3));
  const Json& brackets = r.document["results"]["grid_brackets"];
  REQUIRE(brackets.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(brackets[i]["lo"].get<double>() <= roots[i]["value"].get<double>());
    CHECK(brackets[i]["hi"].get<double>() >= roots[i]["value"].get<double>());
  }
  const CsvSeries& s = series(r, "regime_series");
  CHECK(s.rows.size() == 201);
  // independent check of the sign change from the CSV itself
  const auto q = column(s, "q");
  int changes = 0;
  for (std::size_t i = 1; i < q.size(); ++i)
    if (!q[i].empty() && !q[i - 1].empty() && (std::stod(q[i]) > 0) != (std::stod(q[i - 1]) > 0)) ++changes;
  CHECK(changes == 2);
}

TEST_CASE("solve-sc: mu = 0 on a torus with S_B = 1 gives lambda = lambda1 = 1 and psi = 1") {
  const Json c = config(
      "command: solve-sc\nbase:\n  points: [8]\n  S_B:\n    kind: constant\n    value: 1\nfiber:\n  k: 2\nmu: 0\n"
      "solver:\n  lambda: 1\n");
  const RunReport r = run_experiment(c);
  CHECK(r.exit_code == 0);
  const Json& res = r.document["results"];
  CHECK(res["solve"]["lambda1"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res["alpha"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  for (const auto& v : column(series(r, "solution"), "psi")) CHECK(std::stod(v) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res["scalar_check"].get<double>() <= 1e-10);
}

TEST_CASE("solve-sc exit codes follow the outcome class") {
  // sublinear with lambda of the wrong sign: nonexistence certified
  CHECK(run_experiment(config("command: solve-sc\nbase:\n  points: [4]\n  S_B:\n    kind: constant\nsolver:\n  lambda: -1\n"))
            .exit_code == 2);
  // mu = mu_sc = -k/(m-1): no reduced equation
  CHECK(run_experiment(config("command: solve-sc\nbase:\n  points: [4]\nfiber:\n  k: 4\nmu: -2\n")).exit_code == 3);
  // positive fiber curvature is outside the solver's hypotheses
  CHECK(run_experiment(config("command: solve-sc\nbase:\n  points: [4]\nfiber:\n  kind: sphere\n  k: 2\n")).exit_code ==
        3);
}

TEST_CASE("sweep: the success column is nonincreasing in lambda; an empty sweep is a header") {
  const Json c = config(
      "command: sweep\nbase:\n  points: [4]\n  S_B:\n    kind: constant\nfiber:\n  kind: einstein\n  k: 1\n  nu: -1\n"
      "mu: 4/5\nsweep:\n  from: 0.02\n  to: 0.12\n  step: 0.02\n");
  const RunReport r = run_experiment(c);
  const CsvSeries& s = series(r, "sweep");
  const auto lambda = column(s, "lambda"), ok = column(s, "success");
  REQUIRE(lambda.size() > 6);
  for (std::size_t i = 1; i < lambda.size(); ++i) {
    CHECK(std::stod(lambda[i - 1]) < std::stod(lambda[i]));
    CHECK(ok[i] <= ok[i - 1]);
  }
  CHECK(r.document["results"]["sweep"]["down_set"] == true);

  const RunReport empty = run_experiment(config("command: sweep\nsweep:\n  from: 1\n  to: 0\n"));
  CHECK(series(empty, "sweep").to_csv() == "lambda,success,status,route,residual,u_max,refinement\n");
}

TEST_CASE("eigen and kappa on constant potentials") {
  const RunReport e = run_experiment(config("command: eigen\nbase:\n  points: [6]\n  S_B:\n    kind: constant\n    value: 2\n"));
  CHECK(e.document["results"]["lambda1"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  // constant S_B = 1, p = 3 on a torus of volume V: kappa = V^{(p-1)/(p+1)} at the constant minimizer
  const RunReport k = run_experiment(config(
      "command: kappa\nbase:\n  points: [6]\n  S_B:\n    kind: constant\npde:\n  enabled: true\n  p: 3\n"));
  const double volume = std::pow(2.0 * M_PI, 3);
  CHECK(k.document["results"]["kappa"].get<double>() == doctest::Approx(std::pow(volume, 0.5)).epsilon(1e-9));
}

TEST_CASE("schwarzschild with u = 1 matches the direct metric") {
  const RunReport r = run_experiment(config("command: schwarzschild\n"));
  CHECK(r.exit_code == 0);
  CHECK(r.document["results"]["max_mismatch"].get<double>() <= 1e-10);
  CHECK(error_of([] { run_experiment(config("command: schwarzschild\nschwarzschild:\n  mass: 1\n")); })
            .find("schwarzschild.mass") != std::string::npos);
}

TEST_CASE("reports are deterministic and timing is opt-in") {
  const Json c = config("command: eigen\nseed: 11\nbase:\n  points: [6]\n  S_B:\n    kind: trig\n");
  const RunReport a = run_experiment(c), b = run_experiment(c);
  CHECK(a.document.dump() == b.document.dump());
  REQUIRE(a.series.size() == b.series.size());
  for (std::size_t i = 0; i < a.series.size(); ++i) CHECK(a.series[i].to_csv() == b.series[i].to_csv());
  CHECK_FALSE(a.document.contains("timing"));
  // another seed gives another potential
  const RunReport other = run_experiment(config("command: eigen\nseed: 12\nbase:\n  points: [6]\n  S_B:\n    kind: trig\n"));
  CHECK(other.document["results"]["lambda1"] != a.document["results"]["lambda1"]);
  Json timed = c;
  timed["report_timing"] = true;
  CHECK(run_experiment(timed).document.contains("timing"));
}

TEST_CASE("write_outputs writes the report, the summary and every series") {
  const auto dir = std::filesystem::temp_directory_path() / "bcwp_cli_test_out";
  std::filesystem::remove_all(dir);
  const RunReport r = run_experiment(config("command: verify\npsi:\n  amplitude: 0\n"));
  const auto files = write_outputs(r, dir.string(), "t");
  CHECK(files.size() == 3);
  std::ifstream summary(dir / "t_summary.txt");
  std::stringstream text;
  text << summary.rdbuf();
  CHECK(text.str().find("status = verified") != std::string::npos);
  CHECK(text.str().find("config.") == std::string::npos);
  std::ifstream report(dir / "t_report.json");
  CHECK(Json::parse(report) == r.document);
  std::filesystem::remove_all(dir);
}
