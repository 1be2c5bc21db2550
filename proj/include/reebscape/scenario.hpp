#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reebscape/liftcheck.hpp"
#include "reebscape/reeb_graph.hpp"
#include "reebscape/region.hpp"
#include "reebscape/toml_lite.hpp"
#include "reebscape/zstruct.hpp"

namespace reebscape {

enum class Check { reeb, accumulation, zgraph, remark1, manifold, properness, oracle_compare };

const char* to_string(Check c);
Check check_from_string(const std::string& s);
std::vector<Check> all_checks();

/// Inline constraint of a custom scenario; `curve` uses the JSON curve schema.
struct CurveSpec {
  nlohmann::json curve;
  int side = 1;
  std::string label;
};

struct Tolerances {
  double iso = 1e-6;
  double member = 1e-9;
  double dedup = 1e-9;
  double residual = 1e-10;
  double gap_distance = 1e-4;
};

struct ScenarioParams {
  int m1 = 1;
  int m2 = 1;
  double R0 = 1.0;
  double R = 0.01;
  std::optional<double> theta;  // absent means "auto"
  std::optional<double> t1;     // absent means solved from the circle
  double t2 = 0.9;
  std::optional<Interval> x1_window;
  std::optional<Interval> x2_window;
  std::optional<double> period;  // thm1 and custom; 0 switches it off
  std::uint64_t seed = 1;
  int samples = 1000;
  int grid_x1 = 512;
  int grid_x2 = 0;  // 0 picks a grid matching the window aspect
  Tolerances tol;
};

struct Scenario {
  std::string name;
  ScenarioParams params;
  std::vector<Check> checks;
  std::vector<CurveSpec> custom;
  ZSpec z;  // custom scenarios only
};

const std::vector<std::string>& scenario_names();

/// What the construction must produce.
struct Expected {
  bool graph = true;  // false: a not-a-graph verdict is required
  std::optional<bool> zgraph_defined;
  std::string zgraph_reason;
  std::optional<int> max_added_vertices;
  std::optional<int> projection_count;
  int projection_axis = 0;
};

struct Construction {
  PlanarRegion region;
  bool periodic = false;
  /// Window on which a finite graph exists when the full Reeb space is not one.
  std::optional<Box> graph_window;
  ZSpec z;
  SuspensionMap map;
  Expected expected;
  double theta = 0.0;
  std::optional<Point2> focus;
  /// The defining function c0 for accumulation witnesses.
  std::optional<Fn1D> c0;
  /// Hand-derived graph to compare against, heights included.
  std::optional<ReebGraph> reference;
};

/// The smooth function c0(x) = s(x)(R0 - s(x)) with s(x) = R e^{-1/x^2} sin^2(1/x).
Fn1D make_c0(double R0, double R);

/// theta = atan(2 sup|f'|) over [lo, hi]; throws ConfigError when two grid
/// densities disagree by more than 1%.
double auto_theta(const Fn1D& f, Interval range);

Construction build_construction(const Scenario& s);

/// Reads a scenario from a parsed config table.
Scenario scenario_from_config(const toml::Table& t);

/// Window flag syntax "a..b".
Interval parse_range(const std::string& s);

}  // namespace reebscape
