#include "reebscape/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>

#include "reebscape/brute_force.hpp"
#include "reebscape/error.hpp"
#include "reebscape/sweep.hpp"

namespace reebscape {

using nlohmann::json;

namespace {

const char* status_name(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::pass: return "pass";
    case CheckResult::Status::fail: return "fail";
    case CheckResult::Status::skipped: return "skipped";
  }
  return "?";
}

json box_json(const Box& b) { return json::array({b.x1.lo, b.x1.hi, b.x2.lo, b.x2.hi}); }

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
}

// Lazily built artefacts shared between checks.
class Context {
 public:
  Context(const Scenario& s, const RunOptions& o) : s_(s), opts_(o), c_(build_construction(s)) {}

  const Scenario& scenario() const { return s_; }
  const Construction& construction() const { return c_; }

  SweepOptions sweep_options(bool periodic) const {
    SweepOptions so;
    so.periodic = periodic;
    so.parallel = opts_.parallel;
    so.slice.member_tol = s_.params.tol.member;
    so.events.member_tol = s_.params.tol.member;
    so.events.dedup_tol = s_.params.tol.dedup;
    return so;
  }

  const ReebResult& result() {
    if (!result_) result_ = build_reeb(c_.region, sweep_options(c_.periodic));
    return *result_;
  }
  const ReebGraph* graph() { return std::get_if<ReebGraph>(&result()); }
  const NotAGraphEvidence* evidence() { return std::get_if<NotAGraphEvidence>(&result()); }

  /// The graph carrying the Z image: the full graph, or the sub-window graph
  /// when the full Reeb space is not a graph.
  const ReebGraph* z_graph(const PlanarRegion** region) {
    if (graph()) {
      *region = &c_.region;
      return graph();
    }
    if (!c_.graph_window) return nullptr;
    if (!sub_) {
      sub_region_ = c_.region.with_window(*c_.graph_window);
      sub_ = build_reeb_graph(*sub_region_, sweep_options(false));
    }
    *region = &*sub_region_;
    return &*sub_;
  }

  RasterGrid grid() const {
    const Box& w = c_.region.window();
    int nx2 = s_.params.grid_x2;
    if (nx2 == 0) nx2 = s_.params.grid_x1 * (w.x2.length() > 2.0 * w.x1.length() ? 2 : 1);
    return {s_.params.grid_x1, nx2};
  }

  bool parallel() const { return opts_.parallel; }

 private:
  const Scenario& s_;
  const RunOptions& opts_;
  Construction c_;
  std::optional<ReebResult> result_;
  std::optional<PlanarRegion> sub_region_;
  std::optional<ReebGraph> sub_;
};

json kind_counts(const ReebGraph& g) {
  json k = json::object();
  for (const ReebNode& n : g.nodes) {
    const std::string name = to_string(n.kind);
    k[name] = k.value(name, 0) + 1;
  }
  return k;
}

void check_reeb(Context& ctx, CheckResult& r) {
  const Construction& c = ctx.construction();
  if (const ReebGraph* g = ctx.graph()) {
    r.measured["verdict"] = "graph";
    r.measured["flavor"] = to_string(g->flavor);
    if (g->flavor == Flavor::periodic) r.measured["period"] = g->period;
    r.measured["nodes"] = g->nodes.size();
    r.measured["edges"] = g->edges.size();
    r.measured["kinds"] = kind_counts(*g);
    // Whether the end contours belong to the space is a matter of reading the
    // strip as closed or open. Open: end nodes go, their edges stay as rays.
    const auto ends = std::count_if(g->nodes.begin(), g->nodes.end(),
                                    [](const ReebNode& n) { return n.kind == NodeKind::end; });
    r.measured["end_readings"] = {
        {"closed", {{"nodes", g->nodes.size()}, {"edges", g->edges.size()}, {"end_nodes", ends}}},
        {"open", {{"nodes", g->nodes.size() - static_cast<std::size_t>(ends)},
                  {"edges", g->edges.size()},
                  {"open_rays", ends}}}};
    bool stable = true;
    if (c.expected.graph) {
      // Node count under doubled band sampling.
      SweepOptions fine = ctx.sweep_options(c.periodic);
      fine.samples_per_band *= 2;
      fine.max_refine *= 2;
      const ReebGraph g2 = build_reeb_graph(c.region, fine);
      r.measured["nodes_refined"] = g2.nodes.size();
      stable = g2.nodes.size() == g->nodes.size();
    }
    r.status = c.expected.graph && stable ? CheckResult::Status::pass : CheckResult::Status::fail;
  } else {
    const NotAGraphEvidence& ev = *ctx.evidence();
    r.measured["verdict"] = "not-a-graph";
    r.measured["witnesses"] = ev.witnesses.size();
    r.measured["accumulation_height"] = ev.accumulation_height;
    r.status = c.expected.graph ? CheckResult::Status::fail : CheckResult::Status::pass;
  }
  r.measured["expected"] = c.expected.graph ? "graph" : "not-a-graph";
}

void check_accumulation(Context& ctx, CheckResult& r) {
  const Construction& c = ctx.construction();
  if (!c.focus) {
    const bool none = ctx.graph() != nullptr;
    r.measured["accumulation"] = none ? "none" : "present";
    r.status = none == c.expected.graph ? CheckResult::Status::pass : CheckResult::Status::fail;
    return;
  }
  const auto ev = detect_accumulation(c.region, *c.focus);
  if (!ev) {
    r.measured["accumulation"] = "none";
    r.status = c.expected.graph ? CheckResult::Status::pass : CheckResult::Status::fail;
    return;
  }
  const auto& w = ev->witnesses;
  bool decreasing = true;
  for (std::size_t i = 1; i < w.size(); ++i) {
    // Heights below the double range survive only as logarithms.
    if (!(w[i].log_height < w[i - 1].log_height) || w[i].height < ev->accumulation_height) {
      decreasing = false;
    }
  }
  // Sign-change oracle: d c0/dx2 goes from + to - across each witness.
  int verified = 0;
  json failed = json::array();
  for (const auto& wi : w) {
    bool ok = false;
    if (c.c0) {
      const double d = 1e-3 * wi.x2 * wi.x2;
      ok = c.c0->slope_log(wi.x2 - d).sign > 0 && c.c0->slope_log(wi.x2 + d).sign < 0;
    }
    if (ok) {
      ++verified;
    } else {
      failed.push_back(wi.x2);
    }
  }
  const bool to_limit =
      w.size() >= 2 && w.back().log_height - w.front().log_height < std::log(1e-6);
  r.measured["accumulation"] = "present";
  r.measured["limit"] = ev->accumulation_height;
  r.measured["distinct_witness_heights"] = w.size();
  r.measured["strictly_decreasing"] = decreasing;
  r.measured["reaches_limit"] = to_limit;
  r.measured["oracle_verified_maxima"] = verified;
  r.measured["oracle_failures"] = failed;
  r.measured["new_heights_per_level"] = json::array();
  for (const auto& l : ev->levels) r.measured["new_heights_per_level"].push_back(l.new_heights);
  const bool pass = !c.expected.graph && w.size() >= 10 && decreasing && to_limit &&
                    verified == static_cast<int>(w.size());
  r.status = pass ? CheckResult::Status::pass : CheckResult::Status::fail;
}

void check_zgraph(Context& ctx, CheckResult& r) {
  const Construction& c = ctx.construction();
  std::string reason;
  bool defined = false;
  if (const ReebGraph* g = ctx.graph()) {
    const ZImage zi = project_z(c.region, c.z, *g);
    const ZVerdict v = decide_zgraph(*g, zi);
    r.measured["zgraph"] = v.to_json();
    r.measured["image"] = zi.to_json();
    r.measured["arcs"] = zi.arcs.size();
    defined = v.defined;
    reason = v.reason;
  } else {
    reason = "not-a-graph";
    r.measured["zgraph"] = {{"zgraph", "undefined"}, {"reason", reason}};
  }
  r.measured["expected"] = c.expected.zgraph_defined.value_or(true) ? "defined" : "undefined";
  if (!c.expected.zgraph_reason.empty()) r.measured["expected_reason"] = c.expected.zgraph_reason;
  bool pass = !c.expected.zgraph_defined || defined == *c.expected.zgraph_defined;
  if (!c.expected.zgraph_reason.empty() && reason != c.expected.zgraph_reason) pass = false;
  r.status = pass ? CheckResult::Status::pass : CheckResult::Status::fail;
}

void check_remark1(Context& ctx, CheckResult& r) {
  const Construction& c = ctx.construction();
  const PlanarRegion* region = nullptr;
  const ReebGraph* g = ctx.z_graph(&region);
  if (!g) {
    r.status = CheckResult::Status::skipped;
    r.measured["note"] = "no graph to attach Z to";
    return;
  }
  if (g != ctx.graph()) r.measured["graph_window"] = box_json(region->window());
  const ZImage zi = project_z(*region, c.z, *g);
  const Remark1Vertices rv = remark1_vertices(*g, zi);
  r.measured["critical"] = rv.critical;
  r.measured["added"] = rv.added;
  r.measured["added_raw"] = rv.added_raw;
  r.measured["arc_warning"] = rv.arc_warning;
  r.measured["vertices"] = rv.vertices.size();
  bool pass = true;
  if (c.expected.max_added_vertices) {
    r.measured["max_added"] = *c.expected.max_added_vertices;
    pass = rv.added <= *c.expected.max_added_vertices && !rv.arc_warning;
  }
  r.status = pass ? CheckResult::Status::pass : CheckResult::Status::fail;
}

void check_manifold(Context& ctx, CheckResult& r, std::string* csv) {
  const Construction& c = ctx.construction();
  const ScenarioParams& p = ctx.scenario().params;
  const auto pts = sample_zero_set(c.map, static_cast<std::size_t>(p.samples), p.seed, ctx.parallel());
  double max_res = 0.0;
  int rank_pass = 0, near_gap = 0, outside = 0, gap_probes = 0;
  json fail_list = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& x = pts[i];
    const auto e = eval_map(c.map, x);
    max_res = std::max({max_res, std::fabs(e[0]), std::fabs(e[1])});
    if (!c.region.contains({x[0], x[1]}, p.tol.member)) ++outside;
    bool near = false;
    for (const Point2& g : c.map.gaps) {
      if (std::hypot(x[0] - g.x1, x[1] - g.x2) < p.tol.gap_distance) near = true;
    }
    if (near) {
      ++near_gap;
      continue;
    }
    const RankReport rr = jacobian_rank(c.map, x);
    if (rr.gap_probe) ++gap_probes;
    if (rr.rank == 2) {
      ++rank_pass;
    } else {
      fail_list.push_back({{"index", i}, {"rank", rr.rank}});
    }
  }
  r.measured["samples"] = pts.size();
  r.measured["max_residual"] = max_res;
  r.measured["outside_region"] = outside;
  r.measured["rank"] = {{"pass_count", rank_pass}, {"fail_list", fail_list}};
  r.measured["near_gap_skipped"] = near_gap;
  r.measured["one_sided_probes"] = gap_probes;
  bool pass = max_res < p.tol.residual && fail_list.empty() && outside == 0;
  if (c.expected.projection_count) {
    const ProjectionCount pc =
        projection_critical_count(c.region, c.expected.projection_axis, c.periodic);
    r.measured["projection_axis"] = c.expected.projection_axis == 0 ? "x1" : "x2";
    r.measured["projection_critical"] = pc.count;
    r.measured["projection_ends"] = pc.ends;
    pass = pass && pc.count == *c.expected.projection_count;
  }
  if (csv) *csv = samples_csv(c.map, pts);
  r.status = pass ? CheckResult::Status::pass : CheckResult::Status::fail;
}

void check_properness(Context& ctx, CheckResult& r) {
  const ReebGraph* g = ctx.graph();
  if (!g) {
    r.status = CheckResult::Status::skipped;
    r.measured["note"] = "no graph";
    return;
  }
  const PropernessReport pr = properness_check(*g);
  r.measured["verdict"] = to_string(pr.verdict);
  r.measured["bound"] = pr.bound;
  if (!pr.witness.empty()) r.measured["witness"] = pr.witness;
  if (pr.verdict == PropernessReport::Verdict::proper) {
    r.status = CheckResult::Status::pass;
  } else if (pr.verdict == PropernessReport::Verdict::inconclusive && g->flavor == Flavor::truncated) {
    // A window cut through an unbounded region says nothing either way.
    r.status = CheckResult::Status::skipped;
  } else {
    r.status = CheckResult::Status::fail;
  }
}

void check_oracle(Context& ctx, CheckResult& r) {
  const Construction& c = ctx.construction();
  const ReebGraph* g = ctx.graph();
  if (!g) {
    r.status = CheckResult::Status::skipped;
    r.measured["note"] = "no finite graph to compare";
    return;
  }
  const ReebGraph analytic =
      c.periodic ? build_reeb_graph(c.region, ctx.sweep_options(false)) : *g;
  const RasterGrid grid = ctx.grid();
  const ReebGraph a = canonicalize(analytic);
  const ReebGraph b = canonicalize(brute_force_reeb(c.region, grid, ctx.parallel()));
  const bool iso = iso_check(a, b, false, ctx.scenario().params.tol.iso);
  r.measured["grid"] = json::array({grid.nx1, grid.nx2});
  r.measured["analytic"] = {{"nodes", a.nodes.size()}, {"edges", a.edges.size()}};
  r.measured["brute_force"] = {{"nodes", b.nodes.size()}, {"edges", b.edges.size()}};
  r.measured["isomorphic"] = iso;
  bool pass = iso;
  if (c.reference) {
    const bool ref = iso_check(*g, *c.reference, true, ctx.scenario().params.tol.iso);
    r.measured["matches_reference"] = ref;
    pass = pass && ref;
  }
  r.status = pass ? CheckResult::Status::pass : CheckResult::Status::fail;
}

}  // namespace

bool RunReport::pass() const {
  for (const auto& c : checks) {
    if (!c.ok()) return false;
  }
  return true;
}

json RunReport::to_json() const {
  json j;
  j["scenario"] = scenario;
  j["parameters"] = parameters;
  j["pass"] = pass();
  j["checks"] = json::array();
  for (const auto& c : checks) {
    j["checks"].push_back(
        {{"name", to_string(c.check)}, {"status", status_name(c.status)}, {"measured", c.measured}});
  }
  return j;
}

json parameters_to_json(const Scenario& s) {
  const ScenarioParams& p = s.params;
  json j;
  j["m1"] = p.m1;
  j["m2"] = p.m2;
  j["R0"] = p.R0;
  j["R"] = p.R;
  j["theta"] = p.theta ? json(*p.theta) : json("auto");
  if (p.t1) j["t1"] = *p.t1;
  j["t2"] = p.t2;
  if (p.x1_window) j["x1_window"] = json::array({p.x1_window->lo, p.x1_window->hi});
  if (p.x2_window) j["x2_window"] = json::array({p.x2_window->lo, p.x2_window->hi});
  if (p.period) j["period"] = *p.period;
  j["seed"] = p.seed;
  j["samples"] = p.samples;
  j["tolerances"] = {{"iso", p.tol.iso},
                     {"member", p.tol.member},
                     {"dedup", p.tol.dedup},
                     {"residual", p.tol.residual},
                     {"gap_distance", p.tol.gap_distance}};
  return j;
}

RunReport run_scenario(const Scenario& s, const RunOptions& opts) {
  Context ctx(s, opts);
  RunReport rep;
  rep.scenario = s.name;
  rep.parameters = parameters_to_json(s);
  const Construction& c = ctx.construction();
  if (c.theta != 0.0) rep.parameters["theta_used"] = c.theta;
  rep.parameters["window"] = box_json(c.region.window());

  std::string csv;
  for (Check want : all_checks()) {
    if (std::find(s.checks.begin(), s.checks.end(), want) == s.checks.end()) continue;
    CheckResult r;
    r.check = want;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      switch (want) {
        case Check::reeb: check_reeb(ctx, r); break;
        case Check::accumulation: check_accumulation(ctx, r); break;
        case Check::zgraph: check_zgraph(ctx, r); break;
        case Check::remark1: check_remark1(ctx, r); break;
        case Check::manifold: check_manifold(ctx, r, &csv); break;
        case Check::properness: check_properness(ctx, r); break;
        case Check::oracle_compare: check_oracle(ctx, r); break;
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      r.status = CheckResult::Status::fail;
      r.measured["error"] = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.checks.push_back(std::move(r));
  }

  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    if (const ReebGraph* g = ctx.graph()) {
      write_text(opts.out_dir / "graph.json", g->to_json().dump(2) + "\n");
      write_text(opts.out_dir / "graph.dot", g->to_dot());
      write_text(opts.out_dir / "evidence.json", json{{"verdict", "graph"}}.dump(2) + "\n");
    } else {
      write_text(opts.out_dir / "evidence.json", ctx.evidence()->to_json().dump(2) + "\n");
    }
    if (!csv.empty()) write_text(opts.out_dir / "samples.csv", csv);
    write_text(opts.out_dir / "report.json", rep.to_json().dump(2) + "\n");
  }
  return rep;
}

}  // namespace reebscape
