// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ios>
#include <random>
#include <sstream>
#include <string>

#include "reebscape/analysis.hpp"
#include "reebscape/brute_force.hpp"
#include "reebscape/error.hpp"
#include "reebscape/liftcheck.hpp"
#include "reebscape/scenario.hpp"
#include "reebscape/sweep.hpp"
#include "reebscape/zstruct.hpp"

using namespace reebscape;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Construction named(const std::string& name) {
  Scenario s;
  s.name = name;
  return build_construction(s);
}

// Grid shaped like the window: twice as many rows along a long x2 axis.
RasterGrid grid_for(const PlanarRegion& r) {
  const Box w = r.window();
  return {512, w.x2.length() > 2.0 * w.x1.length() ? 1024 : 512};
}

template <class T>
std::string str(const T& v) {
  std::ostringstream o;
  o << std::boolalpha << v;
  return o.str();
}

Outcome thm1_events() {
  const auto ev = boundary_events(named("thm1").region);
  const double want[] = {-1.0, -0.5, 0.5, 1.0};
  const EventKind kind[] = {EventKind::end, EventKind::tangency, EventKind::tangency, EventKind::end};
  if (ev.size() != 4) return {false, str(ev.size()) + " events"};
  double worst = 0.0;
  bool kinds = true;
  for (std::size_t i = 0; i < 4; ++i) {
    worst = std::max(worst, std::fabs(ev[i].height - want[i]));
    kinds = kinds && ev[i].kind == kind[i];
  }
  return {worst < 1e-9 && kinds, "max height error " + str(worst)};
}

Outcome thm1_graph() {
  const Construction c = named("thm1");
  SweepOptions o;
  o.periodic = true;
  const ReebGraph g = build_reeb_graph(c.region, o);
  int splits = 0, merges = 0;
  bool deg3 = true;
  for (const ReebNode& n : g.nodes) {
    if (n.kind == NodeKind::split) ++splits;
    if (n.kind == NodeKind::merge) ++merges;
    if (n.kind == NodeKind::split || n.kind == NodeKind::merge) deg3 = deg3 && g.degree(n.id) == 3;
  }
  // Edge classes by the kinds and heights of their endpoints.
  int lower_end = 0, middle = 0, upper_end = 0;
  for (const ReebEdge& e : g.edges) {
    const ReebNode& a = g.nodes[static_cast<std::size_t>(e.lo)];
    const ReebNode& b = g.nodes[static_cast<std::size_t>(e.hi)];
    if (a.kind == NodeKind::end && a.height < 0 && b.kind == NodeKind::split) ++lower_end;
    if (a.kind == NodeKind::split && b.kind == NodeKind::merge) ++middle;
    if (a.kind == NodeKind::merge && b.kind == NodeKind::end && b.height > 0) ++upper_end;
  }
  const bool shape = splits == 1 && merges == 1 && deg3 && g.edges.size() == 4 && lower_end == 1 &&
                     middle == 2 && upper_end == 1;
  const bool ref = iso_check(g, *c.reference, true);
  const ReebGraph a = canonicalize(build_reeb_graph(c.region));
  const ReebGraph b = canonicalize(brute_force_reeb(c.region, {512, 1024}));
  const bool brute = iso_check(a, b, false);
  return {shape && ref && brute, "shape " + str(shape) + ", reference " + str(ref) +
                                     ", brute force 512x1024 " + str(brute) + " (" +
                                     str(b.nodes.size()) + " nodes)"};
}

Outcome thm1_properness() {
  SweepOptions o;
  o.periodic = true;
  const PropernessReport p = properness_check(build_reeb_graph(named("thm1").region, o));
  return {p.verdict == PropernessReport::Verdict::proper && p.bound < 4.0,
          std::string(to_string(p.verdict)) + ", bound " + str(p.bound)};
}

Outcome slice_oracle() {
  // At x1 = 0 the excluded discs are (x2 - 2k)^2 < 1/2 around every even integer.
  const Slice s = slice(named("thm1").region, 0.0);
  const double r = std::sqrt(0.5);
  if (s.intervals.size() != 6) return {false, str(s.intervals.size()) + " intervals"};
  double worst = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    const double m = -6.0 + 2.0 * static_cast<double>(i);
    worst = std::max(worst, std::fabs(s.intervals[i].lo.x2 - (m + r)));
    worst = std::max(worst, std::fabs(s.intervals[i].hi.x2 - (m + 2.0 - r)));
  }
  return {worst < 1e-9, "max endpoint error " + str(worst)};
}

Outcome manifold() {
  std::string detail;
  bool pass = true;
  for (const char* name : {"thm1", "thm3-case1", "thm3-case3"}) {
    const Construction c = named(name);
    const double gap_tol = 1e-4;
    const auto pts = sample_zero_set(c.map, 1000, 20240501);
    double worst = 0.0;
    int rank2 = 0, near_gap = 0;
    for (const auto& x : pts) {
      const auto e = eval_map(c.map, x);
      worst = std::max({worst, std::fabs(e[0]), std::fabs(e[1])});
      bool gap = false;
      for (const Point2& q : c.map.gaps) gap = gap || std::hypot(x[0] - q.x1, x[1] - q.x2) < gap_tol;
      if (gap) {
        ++near_gap;
        continue;
      }
      rank2 += jacobian_rank(c.map, x).rank == 2;
    }
    const bool ok = pts.size() == 1000 && worst < 1e-10 && rank2 + near_gap == 1000;
    pass = pass && ok;
    detail += std::string(detail.empty() ? "" : "; ") + name + " max|e| " + str(worst) + ", rank 2 at " +
              str(rank2) + "/" + str(1000 - near_gap);
  }
  return {pass, detail};
}

Outcome flatness_closure() {
  const TrigPoly sin_sq(std::vector<std::vector<double>>{{0.0}, {0.0}, {1.0}});
  const std::vector<SDCRAnFn> family{
      SDCRAnFn(1.0, 0, {{0, sin_sq}}),
      SDCRAnFn(0.5, 1, {{0, TrigPoly(std::vector<std::vector<double>>{{0.0, 1.0}, {2.0}})},
                        {2, TrigPoly::constant(-1.0)}}),
      SDCRAnFn(-3.0, 2, {{1, TrigPoly(std::vector<std::vector<double>>{{1.0, 0.0, 1.0}})}})};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  double worst = 0.0;
  for (const SDCRAnFn& f : family) {
    for (int k = 1; k <= 4; ++k) {
      const SDCRAnFn lower = f.nth_derivative(k - 1);
      const SDCRAnFn dk = f.nth_derivative(k);
      for (int i = 0; i < 20; ++i) {
        const double x = u(rng), h = 1e-3;
        auto d = [&](double s) { return (lower.eval(x + s) - lower.eval(x - s)) / (2.0 * s); };
        const double fd = (4.0 * d(0.5 * h) - d(h)) / 3.0;
        const double sym = dk.eval(x);
        worst = std::max(worst, std::fabs(sym - fd) / std::max(std::fabs(sym), 1e-3));
      }
    }
  }
  const FlatnessReport s = flatness_certificate(Fn1D(family[0]), 4, 1e-8);
  const FlatnessReport c0 = flatness_certificate(make_c0(1.0, 0.01), 4, 1e-8);
  return {worst < 1e-5 && s.pass && c0.pass,
          "closure rel error " + str(worst) + ", flat to order 4: " + str(s.pass && c0.pass)};
}

Outcome non_graph() {
  const Construction c = named("thm3-case1");
  const ReebResult r = build_reeb(c.region);
  if (!std::holds_alternative<NotAGraphEvidence>(r)) return {false, "a graph was returned"};
  const auto& ev = std::get<NotAGraphEvidence>(r);
  const auto& w = ev.witnesses;
  bool decreasing = ev.accumulation_height == 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) decreasing = decreasing && w[i].log_height < w[i - 1].log_height;
  // Toward the limit: the last witness is many orders below the first.
  const bool to_zero = w.size() >= 2 && w.back().log_height - w.front().log_height < std::log(1e-6);
  int maxima = 0;
  for (const auto& wi : w) {
    const double d = 1e-3 * wi.x2 * wi.x2;
    const bool up = c.c0->slope_log(wi.x2 - d).sign > 0;
    const bool down = c.c0->slope_log(wi.x2 + d).sign < 0;
    maxima += up && down;
  }
  return {w.size() >= 10 && decreasing && to_zero && maxima == static_cast<int>(w.size()),
          str(w.size()) + " witnesses, " + str(maxima) + " verified maxima, decreasing " +
              str(decreasing && to_zero)};
}

Outcome finite_graph() {
  const Construction c = named("thm3-case3");
  const ReebGraph g = build_reeb_graph(c.region);
  SweepOptions fine;
  fine.samples_per_band = 12;
  fine.max_refine = 32;
  const ReebGraph g2 = build_reeb_graph(c.region, fine);
  const bool stable = g.nodes.size() == g2.nodes.size() && iso_check(g, g2, true);
  const ZImage zi = project_z(c.region, c.z, g);
  const ZVerdict v = decide_zgraph(g, zi);
  const Remark1Vertices rv = remark1_vertices(g, zi);
  return {stable && v.defined && rv.added <= 2,
          str(g.nodes.size()) + " nodes, stable " + str(stable) + ", zgraph " +
              (v.defined ? "defined" : "undefined(" + v.reason + ")") + ", added " + str(rv.added)};
}

Outcome undefined_verdict() {
  const Construction c = named("thm3-case2");
  const ReebGraph g = build_reeb_graph(c.region);
  const ZImage zi = project_z(c.region, c.z, g);
  const ZVerdict v = decide_zgraph(g, zi);
  return {!zi.arcs.empty() && !v.defined && v.reason == "arc-in-image",
          str(zi.arcs.size()) + " arcs, reason " + v.reason};
}

Outcome sphere_check() {
  const ProjectionCount p = projection_critical_count(named("thm3-case1").region, 1);
  return {p.count == 2, str(p.count) + " critical contours along x2"};
}

Outcome oracle_sweep() {
  std::string detail;
  bool pass = true;
  for (const char* name : {"disk", "thm3-case3", "thm1-truncated"}) {
    const PlanarRegion r = named(name).region;
    const RasterGrid grid = grid_for(r);
    const bool iso =
        iso_check(canonicalize(build_reeb_graph(r)), canonicalize(brute_force_reeb(r, grid)), false);
    pass = pass && iso;
    detail += std::string(detail.empty() ? "" : ", ") + name + " " + (iso ? "iso" : "NOT iso");
  }
  return {pass, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit;
    std::function<Outcome()> run;
  };
  const Criterion all[] = {
      {1, "thm1 event heights", 1.0, thm1_events},
      {2, "thm1 periodic graph", 30.0, thm1_graph},
      {3, "thm1 properness", 5.0, thm1_properness},
      {4, "thm1 slice oracle", 1.0, slice_oracle},
      {5, "zero-set manifold evidence", 10.0, manifold},
      {6, "derivative closure and flatness", 5.0, flatness_closure},
      {7, "case1 not-a-graph evidence", 10.0, non_graph},
      {8, "case3 finite graph with defined Z-graph", 30.0, finite_graph},
      {9, "case2 undefined Z-graph", 30.0, undefined_verdict},
      {10, "sphere projection count", 5.0, sphere_check},
      {11, "analytic vs brute-force sweep", 60.0, oracle_sweep},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit;
    if (!in_time) o.detail += ", over the time limit";
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("[%s] criterion %d: %s: %s (%.2f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id,
                c.title, o.detail.c_str(), secs, c.limit);
    std::fflush(stdout);
  }
  std::printf("%d/11 criteria passed\n", 11 - failed);
  return failed == 0 ? 0 : 1;
}
