#include "reebscape/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "reebscape/analysis.hpp"
#include "reebscape/error.hpp"
#include "reebscape/roots.hpp"
#include "reebscape/spec_io.hpp"

namespace reebscape {

namespace {

constexpr const char* kCheckNames[] = {"reeb",     "accumulation", "zgraph",        "remark1",
                                       "manifold", "properness",   "oracle-compare"};

Fn1D constant_fn(double c) { return Fn1D(Polynomial({c})); }

// Largest x in [lo, hi] with g(x) = 0, for g changing sign once on the bracket.
double solve_bracketed(const std::function<double(double)>& g, double lo, double hi) {
  auto sign = [&](double x) {
    const double v = g(x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  };
  if (sign(lo) * sign(hi) > 0) throw ConfigError("construction: corner bracket has no sign change");
  return bisect_sign(sign, lo, hi, 0.0);
}

PlanarRegion disk_region(double R0, Box window) {
  return PlanarRegion({{PlaneCurve(Circle{R0}), 1, "circle"}}, window);
}

Construction make(PlanarRegion region, bool periodic, std::optional<Box> graph_window, ZSpec z,
                  SuspensionMap map) {
  return Construction{std::move(region), periodic, graph_window, std::move(z), std::move(map),
                      Expected{}, 0.0, std::nullopt, std::nullopt, std::nullopt};
}

Box square(double half) { return Box{{-half, half}, {-half, half}}; }

Box resolve_window(const ScenarioParams& p, Box def) {
  if (p.x1_window) def.x1 = *p.x1_window;
  if (p.x2_window) def.x2 = *p.x2_window;
  if (!(def.x1.hi > def.x1.lo) || !(def.x2.hi > def.x2.lo)) throw ConfigError("empty window");
  return def;
}

}  // namespace

const char* to_string(Check c) { return kCheckNames[static_cast<int>(c)]; }

Check check_from_string(const std::string& s) {
  for (int i = 0; i < 7; ++i) {
    if (s == kCheckNames[i]) return static_cast<Check>(i);
  }
  throw ConfigError("unknown check '" + s + "'");
}

std::vector<Check> all_checks() {
  return {Check::reeb,     Check::accumulation, Check::zgraph,        Check::remark1,
          Check::manifold, Check::properness,   Check::oracle_compare};
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"thm1",       "thm1-truncated", "thm3-case1",
                                              "thm3-case2", "thm3-case3",     "disk",
                                              "custom"};
  return names;
}

Fn1D make_c0(double R0, double R) {
  const TrigPoly sin_sq(std::vector<std::vector<double>>{{0.0}, {0.0}, {1.0}});
  return Fn1D::compose(Polynomial({0.0, R0, -1.0}), Fn1D(SDCRAnFn(R, 0, {{0, sin_sq}})));
}

double auto_theta(const Fn1D& f, Interval range) {
  const double coarse = sup_abs_derivative(f, range, 10000);
  const double fine = sup_abs_derivative(f, range, 100000);
  if (!std::isfinite(fine) || std::fabs(fine - coarse) > 0.01 * std::max(fine, 1e-300)) {
    throw ConfigError("theta=auto: sup of |c0'| did not converge under grid refinement");
  }
  return std::atan(2.0 * fine);
}

Construction build_construction(const Scenario& s) {
  const ScenarioParams& p = s.params;
  if (p.m1 < 1 || p.m2 < 1) throw ConfigError("m1 and m2 must be positive");
  if (!(p.R0 > 0.0)) throw ConfigError("R0 must be positive");

  if (s.name == "thm1" || s.name == "thm1-truncated") {
    const double period = s.name == "thm1-truncated" ? 0.0 : p.period.value_or(4.0);
    if (period != 0.0 && period != 4.0) throw ConfigError("thm1 has period 4");
    const Box w = resolve_window(p, Box{{-1.5, 1.5}, {-6.0, 6.0}});
    // Beyond |x1| = 7/4 the boundary curves leave their parabola pieces and
    // the pure parabola chain no longer stands in for them.
    if (w.x1.lo < -1.75 || w.x1.hi > 1.75) {
      throw ConfigError("thm1 x1 window must stay inside [-1.75, 1.75]");
    }
    std::vector<Constraint> cs{{PlaneCurve(ParabolaChain{0.0, 1.0, 4.0, -0.5}), -1, "S1"},
                               {PlaneCurve(ParabolaChain{2.0, -1.0, 4.0, 0.5}), 1, "S2"},
                               {PlaneCurve(FnGraph{constant_fn(-1.0)}), 1, "S3"},
                               {PlaneCurve(FnGraph{constant_fn(1.0)}), -1, "S4"}};
    std::optional<double> per;
    if (period > 0.0) per = period;
    PlanarRegion region(std::move(cs), w, per);
    Construction c = make(region, per.has_value(), std::nullopt, {},
                   SuspensionMap::from_region(region, {0, 1}, {2, 3}, p.m1, p.m2));
    c.expected.zgraph_defined = false;
    c.expected.zgraph_reason = "uncovered-endpoint";
    if (c.periodic) {
      // One period: the band x1 = -1 .. -1/2 splits into two strands that
      // merge at 1/2, one of them crossing into the next period.
      ReebGraph ref;
      ref.flavor = Flavor::periodic;
      ref.period = 4.0;
      const int e0 = ref.add_node(-1.0, NodeKind::end, 0.0);
      const int sp = ref.add_node(-0.5, NodeKind::split, 0.0);
      const int mg = ref.add_node(0.5, NodeKind::merge, 2.0);
      const int e1 = ref.add_node(1.0, NodeKind::end, 2.0);
      ref.add_edge(e0, sp);
      ref.add_edge(sp, mg, {}, 0);
      ref.add_edge(sp, mg, {}, -1);
      ref.add_edge(mg, e1);
      c.reference = std::move(ref);
      c.expected.projection_count = 2;
      c.expected.projection_axis = 0;
    }
    return c;
  }

  const double rad = std::sqrt(p.R0);
  const Box w = resolve_window(p, square(1.25 * rad));

  if (s.name == "disk") {
    PlanarRegion region = disk_region(p.R0, w);
    Construction c = make(region, false, std::nullopt, {},
                   SuspensionMap::from_region(region, {0}, {}, p.m1, p.m2));
    c.expected.zgraph_defined = false;
    c.expected.zgraph_reason = "uncovered-endpoint";
    c.expected.projection_count = 2;
    c.expected.projection_axis = 0;
    return c;
  }

  if (s.name == "thm3-case1" || s.name == "thm3-case2" || s.name == "thm3-case3") {
    if (!(p.R > 0.0)) throw ConfigError("R must be positive");
    const Fn1D c0 = make_c0(p.R0, p.R);
    const Interval sup_range{0.0, rad};

    if (s.name == "thm3-case2") {
      if (!(p.t2 > 0.0 && p.t2 < 1.0)) throw ConfigError("t2 must lie in (0, 1)");
      const double t1 = p.t1.value_or(std::sqrt(p.R0 * (1.0 - p.t2 * p.t2)));
      const double theta =
          p.theta.value_or(std::atan(std::tan(auto_theta(c0, sup_range)) / p.t2));
      const Affine2 squeeze{{1.0, 0.0, 0.0, p.t2}, {-t1, 0.0}};
      const Affine2 rot = Affine2::rotation(theta);
      std::vector<Constraint> cs{
          {PlaneCurve(Circle{p.R0}), 1, "circle"},
          {PlaneCurve::transformed(PlaneCurve(FnGraph{c0}), squeeze), 1, "c0-squeezed"}};
      PlanarRegion flat(std::move(cs), w);
      PlanarRegion region = flat.mapped(rot, w);
      ZSpec z;
      for (double sgn : {1.0, -1.0}) {
        const double y = sgn * p.t2 * rad;
        const Point2 a{c0(y / p.t2) - t1, y};
        const Point2 b{std::sqrt(std::max(0.0, p.R0 - y * y)), y};
        z.components.push_back(
            ZComponent::segment(rot.apply(a), rot.apply(b), sgn > 0 ? "upper line" : "lower line"));
      }
      Construction c = make(region, false, std::nullopt, z,
                     SuspensionMap::from_region(region, {0}, {1}, p.m1, p.m2));
      c.theta = theta;
      c.expected.zgraph_defined = false;
      c.expected.zgraph_reason = "arc-in-image";
      c.expected.projection_count = 2;
      c.expected.projection_axis = 1;
      return c;
    }

    std::vector<Constraint> cs{{PlaneCurve(Circle{p.R0}), 1, "circle"},
                               {PlaneCurve(FnGraph{c0}), 1, "c0"}};
    PlanarRegion case1(std::move(cs), w);
    // Corners: x2^2 + c0(x2)^2 = R0 with x2 > 0; c0 is even.
    const double xs =
        solve_bracketed([&](double x) { return x * x + c0(x) * c0(x) - p.R0; }, 0.5 * rad, rad);
    const Point2 top{c0(xs), xs}, bottom{c0(-xs), -xs};

    if (s.name == "thm3-case1") {
      Construction c = make(case1, false, Box{{1e-3 * rad, rad}, w.x2},
                     ZSpec{{ZComponent::point(top, "upper corner"),
                            ZComponent::point(bottom, "lower corner")}},
                     SuspensionMap::from_region(case1, {0}, {1}, p.m1, p.m2));
      c.expected.graph = false;
      c.expected.zgraph_defined = false;
      c.expected.zgraph_reason = "not-a-graph";
      c.expected.max_added_vertices = 2;
      c.expected.projection_count = 2;
      c.expected.projection_axis = 1;
      c.focus = Point2{0.0, 0.0};
      c.c0 = c0;
      return c;
    }

    const double theta = p.theta.value_or(auto_theta(c0, sup_range));
    const Affine2 rot = Affine2::rotation(theta);
    PlanarRegion region = case1.mapped(rot, w);
    // Z meets the sphere in its lowest corner and its highest point, so both
    // leaves of the graph carry a Z vertex.
    const Point2 rt = rot.apply(top), rb = rot.apply(bottom);
    const Point2 low = rt.x1 <= rb.x1 ? rt : rb;
    Construction c = make(region, false, std::nullopt,
                   ZSpec{{ZComponent::point(low, "lowest corner"),
                          ZComponent::point(Point2{rad, 0.0}, "highest point")}},
                   SuspensionMap::from_region(region, {0}, {1}, p.m1, p.m2));
    c.theta = theta;
    c.expected.zgraph_defined = true;
    c.expected.max_added_vertices = 2;
    c.expected.projection_count = 2;
    c.expected.projection_axis = 1;
    return c;
  }

  if (s.name == "custom") {
    if (s.custom.empty()) throw ConfigError("custom scenario needs [[constraint]] entries");
    if (!p.x1_window || !p.x2_window) throw ConfigError("custom scenario needs a window");
    std::vector<Constraint> cs;
    for (const auto& spec : s.custom) {
      if (spec.side != 1 && spec.side != -1) throw ConfigError("constraint side must be +1 or -1");
      cs.push_back({curve_from_json(spec.curve), spec.side, spec.label});
    }
    std::optional<double> per;
    if (p.period && *p.period > 0.0) per = p.period;
    PlanarRegion region(cs, Box{*p.x1_window, *p.x2_window}, per);
    std::vector<int> first, second;
    for (int k = 0; k < static_cast<int>(cs.size()); ++k) {
      (k < (static_cast<int>(cs.size()) + 1) / 2 ? first : second).push_back(k);
    }
    return make(region, per.has_value(), std::nullopt, s.z,
                        SuspensionMap::from_region(region, first, second, p.m1, p.m2));
  }

  throw ConfigError("unknown scenario '" + s.name + "'");
}

Interval parse_range(const std::string& s) {
  const auto pos = s.find("..");
  if (pos == std::string::npos) throw ConfigError("range '" + s + "' must look like a..b");
  try {
    std::size_t used = 0;
    const std::string a = s.substr(0, pos), b = s.substr(pos + 2);
    const double lo = std::stod(a, &used);
    if (used != a.size()) throw ConfigError("bad range");
    const double hi = std::stod(b, &used);
    if (used != b.size()) throw ConfigError("bad range");
    if (!(hi > lo)) throw ConfigError("range '" + s + "' is empty");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ConfigError("range '" + s + "' must look like a..b");
  }
}

namespace {

Interval range_value(const toml::Value& v, const std::string& key) {
  if (v.is_string()) return parse_range(v.as_string(key));
  const auto& arr = v.as_array(key);
  if (arr.size() != 2) throw ConfigError("config key '" + key + "' needs two numbers");
  Interval r{arr[0].as_number(key), arr[1].as_number(key)};
  if (!(r.hi > r.lo)) throw ConfigError("config key '" + key + "' is an empty range");
  return r;
}

int int_value(const toml::Value& v, const std::string& key) {
  const double d = v.as_number(key);
  if (d != std::floor(d) || std::fabs(d) > 1e9) throw ConfigError(key + " must be an integer");
  return static_cast<int>(d);
}

}  // namespace

Scenario scenario_from_config(const toml::Table& t) {
  static const std::vector<std::string> top_keys{"scenario", "checks", "parameters", "tolerances",
                                                 "constraint", "z"};
  for (const auto& [k, v] : t) {
    if (std::find(top_keys.begin(), top_keys.end(), k) == top_keys.end()) {
      throw ConfigError("unknown config key '" + k + "'");
    }
  }
  Scenario s;
  auto it = t.find("scenario");
  if (it == t.end()) throw ConfigError("config needs 'scenario'");
  s.name = it->second.as_string("scenario");
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), s.name) == names.end()) {
    throw ConfigError("unknown scenario '" + s.name + "'");
  }
  if ((it = t.find("checks")) != t.end()) {
    for (const auto& c : it->second.as_array("checks")) s.checks.push_back(check_from_string(c.as_string("checks")));
  } else {
    s.checks = all_checks();
  }

  ScenarioParams& p = s.params;
  if ((it = t.find("parameters")) != t.end()) {
    for (const auto& [k, v] : it->second.as_table("parameters")) {
      if (k == "m1") p.m1 = int_value(v, k);
      else if (k == "m2") p.m2 = int_value(v, k);
      else if (k == "R0") p.R0 = v.as_number(k);
      else if (k == "R") p.R = v.as_number(k);
      else if (k == "theta") {
        if (v.is_string()) {
          if (v.as_string(k) != "auto") throw ConfigError("theta must be a number or \"auto\"");
          p.theta.reset();
        } else {
          p.theta = v.as_number(k);
        }
      } else if (k == "t1") p.t1 = v.as_number(k);
      else if (k == "t2") p.t2 = v.as_number(k);
      else if (k == "x1_window") p.x1_window = range_value(v, k);
      else if (k == "window" || k == "x2_window") p.x2_window = range_value(v, k);
      else if (k == "period") p.period = v.as_number(k);
      else if (k == "seed") {
        const double d = v.as_number(k);
        if (d < 0 || d != std::floor(d)) throw ConfigError("seed must be a non-negative integer");
        p.seed = static_cast<std::uint64_t>(d);
      } else if (k == "samples") p.samples = int_value(v, k);
      else if (k == "grid_x1") p.grid_x1 = int_value(v, k);
      else if (k == "grid_x2") p.grid_x2 = int_value(v, k);
      else throw ConfigError("unknown parameter '" + k + "'");
    }
  }
  if ((it = t.find("tolerances")) != t.end()) {
    for (const auto& [k, v] : it->second.as_table("tolerances")) {
      const double x = v.as_number(k);
      if (!(x > 0.0)) throw ConfigError("tolerance '" + k + "' must be positive");
      if (k == "iso") p.tol.iso = x;
      else if (k == "member") p.tol.member = x;
      else if (k == "dedup") p.tol.dedup = x;
      else if (k == "residual") p.tol.residual = x;
      else if (k == "gap_distance") p.tol.gap_distance = x;
      else throw ConfigError("unknown tolerance '" + k + "'");
    }
  }
  if ((it = t.find("z")) != t.end()) {
    auto point_of = [](const toml::Value& v, const std::string& key) {
      const auto& a = v.as_array(key);
      if (a.size() != 2) throw ConfigError("Z key '" + key + "' needs [x1, x2]");
      return Point2{a[0].as_number(key), a[1].as_number(key)};
    };
    for (const auto& entry : it->second.as_array("z")) {
      const auto& zt = entry.as_table("z");
      std::string kind = "point", prov;
      std::optional<Point2> a, b;
      for (const auto& [k, v] : zt) {
        if (k == "kind") kind = v.as_string(k);
        else if (k == "at" || k == "a") a = point_of(v, k);
        else if (k == "b") b = point_of(v, k);
        else if (k == "provenance") prov = v.as_string(k);
        else throw ConfigError("unknown Z key '" + k + "'");
      }
      if (!a) throw ConfigError("Z component needs 'at' (or 'a')");
      if (kind == "point") {
        s.z.components.push_back(ZComponent::point(*a, prov));
      } else if (kind == "segment") {
        if (!b) throw ConfigError("Z segment needs 'a' and 'b'");
        s.z.components.push_back(ZComponent::segment(*a, *b, prov));
      } else {
        throw ConfigError("Z kind must be point or segment");
      }
    }
  }
  if ((it = t.find("constraint")) != t.end()) {
    for (const auto& entry : it->second.as_array("constraint")) {
      const auto& ct = entry.as_table("constraint");
      CurveSpec c;
      for (const auto& [k, v] : ct) {
        if (k == "curve") {
          try {
            c.curve = nlohmann::json::parse(v.as_string(k));
          } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("constraint curve is not valid JSON: ") + e.what());
          }
          curve_from_json(c.curve);
        } else if (k == "side") c.side = int_value(v, k);
        else if (k == "label") c.label = v.as_string(k);
        else throw ConfigError("unknown constraint key '" + k + "'");
      }
      if (c.curve.is_null()) throw ConfigError("constraint needs a curve");
      s.custom.push_back(std::move(c));
    }
  }
  if (p.samples < 0) throw ConfigError("samples must be non-negative");
  if (p.grid_x1 < 8 || p.grid_x2 < 0) throw ConfigError("grid sizes are too small");
  if (s.name != "custom" && (!s.custom.empty() || !s.z.empty())) {
    throw ConfigError("[[constraint]] and [[z]] entries are only allowed for the custom scenario");
  }
  build_construction(s);  // validates parameters
  return s;
}

}  // namespace reebscape
