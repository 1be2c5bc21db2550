#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "reebscape/error.hpp"
#include "reebscape/runner.hpp"
#include "reebscape/scenario.hpp"
#include "reebscape/spec_io.hpp"
#include "reebscape/toml_lite.hpp"

using namespace reebscape;
namespace fs = std::filesystem;

namespace {

const CheckResult& find(const RunReport& r, Check c) {
  for (const auto& x : r.checks) {
    if (x.check == c) return x;
  }
  throw std::runtime_error("check missing");
}

}  // namespace

TEST_CASE("config parser accepts the supported subset") {
  const auto t = toml::parse(R"(
# comment
scenario = "custom"   # trailing comment
checks = ["reeb", 'zgraph']
flag = true

[parameters]
R0 = 2.5
seed = 7
window = [-1, 1.5e0]

[[z]]
kind = "point"
at = [0.5, -0.25]

[[z]]
kind = "segment"
a = [0, 0]
b = [1, 0]
)");
  CHECK(t.at("scenario").as_string("scenario") == "custom");
  CHECK(t.at("checks").as_array("checks").size() == 2);
  CHECK(t.at("flag").as_bool("flag"));
  const auto& p = t.at("parameters").as_table("parameters");
  CHECK(p.at("R0").as_number("R0") == 2.5);
  CHECK(p.at("window").as_array("window")[1].as_number("w") == 1.5);
  CHECK(t.at("z").as_array("z").size() == 2);
  CHECK(t.at("z").as_array("z")[1].as_table("z").at("kind").as_string("kind") == "segment");
}

TEST_CASE("config parser rejects malformed input") {
  CHECK_THROWS_AS(toml::parse("a = "), ConfigError);
  CHECK_THROWS_AS(toml::parse("a = \"open"), ConfigError);
  CHECK_THROWS_AS(toml::parse("[table"), ConfigError);
  CHECK_THROWS_AS(toml::parse("a = 1\na = 2"), ConfigError);
  CHECK_THROWS_AS(toml::parse("a = [1, 2"), ConfigError);
  CHECK_THROWS_AS(toml::parse("x"), ConfigError);
  CHECK_THROWS_AS(toml::parse("a = 1").at("a").as_string("a"), ConfigError);
}

TEST_CASE("scenarios from config") {
  Scenario s = scenario_from_config(toml::parse(R"(
scenario = "thm3-case3"
checks = ["reeb", "zgraph"]
[parameters]
R0 = 2.0
theta = "auto"
x2_window = "-1..1"
)"));
  CHECK(s.name == "thm3-case3");
  CHECK(s.checks == std::vector<Check>{Check::reeb, Check::zgraph});
  CHECK(s.params.R0 == 2.0);
  CHECK_FALSE(s.params.theta.has_value());
  REQUIRE(s.params.x2_window.has_value());
  CHECK(s.params.x2_window->lo == -1.0);

  CHECK_THROWS_AS(scenario_from_config(toml::parse("scenario = \"nope\"")), ConfigError);
  CHECK_THROWS_AS(scenario_from_config(toml::parse("scenario = \"thm1\"\nchecks = [\"bogus\"]")),
                  ConfigError);
  CHECK_THROWS_AS(scenario_from_config(toml::parse("scenario = \"thm1\"\n[parameters]\nR0 = -1")),
                  ConfigError);
  Scenario wide;
  wide.name = "thm1";
  wide.params.x1_window = Interval{-2.0, 2.0};
  CHECK_THROWS_AS(build_construction(wide), ConfigError);
  CHECK_THROWS_AS(
      scenario_from_config(toml::parse("scenario = \"thm1\"\n[[z]]\nkind = \"point\"\nat = [0, 0]")),
      ConfigError);

  Scenario c = scenario_from_config(toml::parse(R"(
scenario = "custom"
[parameters]
x1_window = [-1.5, 1.5]
x2_window = "-1.5..1.5"
[[constraint]]
curve = '{"kind": "circle", "level": 1.0}'
side = 1
[[constraint]]
curve = '{"kind": "fn_graph", "f": {"kind": "polynomial", "coefficients": [0.2, 0.0, 0.1]}}'
side = 1
[[z]]
kind = "point"
at = [0.5, 0.0]
)"));
  REQUIRE(c.custom.size() == 2);
  REQUIRE(c.z.components.size() == 1);
  CHECK(c.z.components[0].a.x1 == 0.5);

  for (const char* f : {"thm1.toml", "thm3-case3.toml", "custom-lens.toml"}) {
    CHECK_NOTHROW(scenario_from_config(toml::parse_file(std::string(REEBSCAPE_CONFIG_DIR) + "/" + f)));
  }
}

TEST_CASE("window ranges") {
  const Interval i = parse_range("-1.5..2");
  CHECK(i.lo == -1.5);
  CHECK(i.hi == 2.0);
  CHECK_THROWS_AS(parse_range("1..1"), ConfigError);
  CHECK_THROWS_AS(parse_range("abc"), ConfigError);
}

TEST_CASE("check names round trip") {
  for (Check c : all_checks()) CHECK(check_from_string(to_string(c)) == c);
  CHECK(std::string(to_string(Check::oracle_compare)) == "oracle-compare");
}

TEST_CASE("curve specs round trip") {
  const nlohmann::json specs[] = {
      {{"kind", "parabola_chain"}, {"offset", -0.5}, {"sign", 1}, {"period", 4.0}, {"vertex", 0.0}},
      {{"kind", "circle"}, {"level", 1.0}},
      {{"kind", "fn_graph"},
       {"f", {{"kind", "polynomial"}, {"coefficients", {0.2, 0.0, 0.1}}}},
       {"param_window", {-1.0, 1.0}}},
      {{"kind", "transformed"},
       {"base", {{"kind", "circle"}, {"level", 2.0}}},
       {"matrix", {0.0, -1.0, 1.0, 0.0}},
       {"translation", {0.5, 0.0}}},
  };
  for (const auto& j : specs) {
    const PlaneCurve c = curve_from_json(j);
    const PlaneCurve d = curve_from_json(curve_to_json(c));
    for (double t : {-0.7, -0.1, 0.3, 0.9}) {
      const Point2 a = c.point(t), b = d.point(t);
      CHECK(a.x1 == doctest::Approx(b.x1));
      CHECK(a.x2 == doctest::Approx(b.x2));
    }
  }
  const Fn1D c0 = make_c0(1.0, 0.01);
  const Fn1D back = fn_from_json(fn_to_json(c0));
  for (double x : {0.1, 0.25, 0.5, 0.9}) CHECK(back.eval(x) == doctest::Approx(c0.eval(x)).epsilon(1e-14));
  CHECK_THROWS_AS(curve_from_json({{"kind", "spiral"}}), ConfigError);
  CHECK_THROWS_AS(fn_from_json({{"kind", "polynomial"}}), ConfigError);
}

TEST_CASE("slope-based rotation angle") {
  // 0.5 x^2 has sup |f'| = 2 on [0, 2]; the estimate carries a factor 2 and
  // the angle rule doubles it again.
  const Fn1D f = fn_from_json({{"kind", "polynomial"}, {"coefficients", {0.0, 0.0, 0.5}}});
  CHECK(auto_theta(f, {0.0, 2.0}) == doctest::Approx(std::atan(8.0)).epsilon(1e-6));
  const double th = auto_theta(make_c0(1.0, 0.01), {0.0, 1.0});
  CHECK(th > 0.0);
  CHECK(th < 0.1);
}

TEST_CASE("scenario verdicts and reproducible reports") {
  struct Row {
    const char* name;
    bool graph;
    const char* zgraph;
  };
  const Row rows[] = {{"thm1", true, "uncovered-endpoint"},
                      {"disk", true, "uncovered-endpoint"},
                      {"thm3-case1", false, "not-a-graph"},
                      {"thm3-case2", true, "arc-in-image"},
                      {"thm3-case3", true, ""}};
  for (const Row& row : rows) {
    CAPTURE(row.name);
    Scenario s;
    s.name = row.name;
    s.checks = {Check::reeb, Check::zgraph};
    const RunReport a = run_scenario(s, {});
    CHECK(a.pass());
    CHECK(find(a, Check::reeb).measured["verdict"] == (row.graph ? "graph" : "not-a-graph"));
    const auto& z = find(a, Check::zgraph).measured["zgraph"];
    if (*row.zgraph) {
      CHECK(z["zgraph"] == "undefined");
      CHECK(z["reason"] == row.zgraph);
    } else {
      CHECK(z["zgraph"] == "defined");
    }
    RunOptions serial;
    serial.parallel = false;
    CHECK(run_scenario(s, serial).to_json() == a.to_json());
  }
}

TEST_CASE("output files") {
  const fs::path dir = fs::temp_directory_path() / "reebscape_test_cli";
  fs::remove_all(dir);
  Scenario s;
  s.name = "thm1";
  s.checks = {Check::reeb, Check::manifold};
  s.params.samples = 20;
  RunOptions o;
  o.out_dir = dir;
  CHECK(run_scenario(s, o).pass());
  for (const char* f : {"graph.json", "graph.dot", "evidence.json", "report.json", "samples.csv"}) {
    CHECK(fs::exists(dir / f));
  }
  std::ifstream in(dir / "report.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["scenario"] == "thm1");
  CHECK(j["pass"] == true);
  fs::remove_all(dir);
}
