#include <doctest.h>

#include <cmath>

#include "reebscape/scenario.hpp"
#include "reebscape/sweep.hpp"
#include "reebscape/zstruct.hpp"

using namespace reebscape;

namespace {

Construction named(const std::string& name) {
  Scenario s;
  s.name = name;
  return build_construction(s);
}

ReebGraph graph_of(const Construction& c) {
  SweepOptions o;
  o.periodic = c.periodic;
  return build_reeb_graph(c.region, o);
}

ZImage image_at_nodes(std::initializer_list<int> nodes) {
  ZImage z;
  int comp = 0;
  for (int n : nodes) z.points.push_back({GraphLocation{n, -1, 0.0}, comp++});
  return z;
}

}  // namespace

TEST_CASE("case1 corners land on one contour of the sub-window graph") {
  const Construction c = named("thm3-case1");
  const PlanarRegion sub = c.region.with_window(*c.graph_window);
  const ReebGraph g = build_reeb_graph(sub);
  const ZImage z = project_z(sub, c.z, g);
  CHECK(z.points.size() == 2);
  CHECK(z.arcs.empty());
  CHECK(z.distinct_points().size() == 1);
  const Remark1Vertices r = remark1_vertices(g, z);
  CHECK(r.added == 1);
  CHECK(r.added_raw == 2);
}

TEST_CASE("case2 lines project to arcs") {
  const Construction c = named("thm3-case2");
  const ReebGraph g = graph_of(c);
  const ZImage z = project_z(c.region, c.z, g);
  REQUIRE_FALSE(z.arcs.empty());
  for (const auto& a : z.arcs) CHECK(a.heights.length() > 1e-7);
  const ZVerdict v = decide_zgraph(g, z);
  CHECK_FALSE(v.defined);
  CHECK(v.reason == "arc-in-image");
  CHECK(v.to_json()["zgraph"] == "undefined");
  CHECK(remark1_vertices(g, z).arc_warning);
}

TEST_CASE("case3 is defined with the two extremes as vertices") {
  const Construction c = named("thm3-case3");
  const ReebGraph g = graph_of(c);
  const ZImage z = project_z(c.region, c.z, g);
  CHECK(z.arcs.empty());
  CHECK(z.distinct_points().size() == 2);
  const ZVerdict v = decide_zgraph(g, z);
  REQUIRE(v.defined);
  CHECK(v.refined.nodes.size() == 2);
  CHECK(v.refined.edges.size() == 1);
  for (const ReebNode& n : v.refined.nodes) CHECK(n.kind == NodeKind::z_vertex);
  CHECK(v.to_json()["zgraph"] == "defined");
  const Remark1Vertices r = remark1_vertices(g, z);
  CHECK(r.added <= 2);

  // Idempotent on its own output.
  const ZImage z2 = project_z(c.region, c.z, v.refined);
  const ZVerdict again = decide_zgraph(v.refined, z2);
  CHECK(again.defined);
  CHECK(again.refined.nodes.size() == v.refined.nodes.size());

  // Monotone in Z.
  ZSpec one{{c.z.components[0]}};
  const Remark1Vertices fewer = remark1_vertices(g, project_z(c.region, one, g));
  CHECK(fewer.vertices.size() <= r.vertices.size());
}

TEST_CASE("empty Z") {
  const Construction d = named("disk");
  const ReebGraph g = graph_of(d);
  const ZImage z = project_z(d.region, ZSpec{}, g);
  CHECK(z.points.empty());
  CHECK(z.arcs.empty());
  const ZVerdict v = decide_zgraph(g, z);
  CHECK_FALSE(v.defined);
  CHECK(v.reason == "uncovered-endpoint");

  const ReebGraph q = graph_of(named("thm1"));
  const Remark1Vertices r = remark1_vertices(q, ZImage{});
  CHECK(r.critical == 4);  // split, merge and both ends
  CHECK(r.added == 0);
}

TEST_CASE("verdict reasons on small graphs") {
  ReebGraph y;
  const int b1 = y.add_node(0.0, NodeKind::birth, -1.0);
  const int b2 = y.add_node(0.0, NodeKind::birth, 1.0);
  const int m = y.add_node(1.0, NodeKind::merge, 0.0);
  const int d = y.add_node(2.0, NodeKind::death, 0.0);
  y.add_edge(b1, m);
  y.add_edge(b2, m);
  y.add_edge(m, d);
  CHECK(decide_zgraph(y, image_at_nodes({b1, b2, d})).reason == "branch-point-not-in-image");
  CHECK(decide_zgraph(y, image_at_nodes({b1, b2, m, d})).defined);
  CHECK(decide_zgraph(y, image_at_nodes({b1, m})).reason == "uncovered-endpoint");

  ZImage arc;
  arc.arcs.push_back({0, {0.2, 0.4}, 0});
  CHECK(decide_zgraph(y, arc).reason == "arc-in-image");

  // Two strands between a split and a merge with Z only at the leaves: the
  // branch points are not vertices.
  ReebGraph ring;
  const int lo = ring.add_node(0.0, NodeKind::birth, 0.0);
  const int s = ring.add_node(1.0, NodeKind::split, 0.0);
  const int w = ring.add_node(2.0, NodeKind::merge, 0.0);
  const int hi = ring.add_node(3.0, NodeKind::death, 0.0);
  ring.add_edge(lo, s);
  ring.add_edge(s, w);
  ring.add_edge(s, w);
  ring.add_edge(w, hi);
  CHECK(decide_zgraph(ring, image_at_nodes({lo, hi})).reason == "branch-point-not-in-image");
}

TEST_CASE("locate") {
  const Construction d = named("disk");
  const ReebGraph g = graph_of(d);
  const GraphLocation at = locate(g, {0.0, 0.0});
  CHECK(at.edge == 0);
  CHECK(at.height == 0.0);
  const GraphLocation top = locate(g, {1.0, 0.0});
  CHECK(top.on_node());
  CHECK(g.node(top.node).kind == NodeKind::death);
}

TEST_CASE("iso_check") {
  const ReebGraph q = graph_of(named("thm1"));
  ReebGraph path;
  path.add_edge(path.add_node(-1.0, NodeKind::birth, 0.0), path.add_node(1.0, NodeKind::death, 0.0));
  CHECK_FALSE(iso_check(path, q, false));

  ReebGraph neg = q;
  for (auto& n : neg.nodes) n.height = -n.height;
  for (auto& e : neg.edges) {
    std::swap(e.lo, e.hi);
    e.shift = -e.shift;
  }
  CHECK_FALSE(iso_check(q, neg, true));

  std::vector<ReebGraph> all{q, graph_of(named("thm1-truncated")), graph_of(named("disk")),
                             graph_of(named("thm3-case2")), graph_of(named("thm3-case3")), path};
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(iso_check(all[i], all[i], true));
    for (std::size_t j = 0; j < all.size(); ++j) {
      CHECK(iso_check(all[i], all[j], false) == iso_check(all[j], all[i], false));
    }
  }
  // Relabelling which copy is the base period does not matter.
  ReebGraph shifted = q;
  for (auto& e : shifted.edges) {
    if (shifted.node(e.hi).kind == NodeKind::merge) e.shift += 1;
    if (shifted.node(e.lo).kind == NodeKind::merge) e.shift -= 1;
  }
  CHECK(iso_check(q, shifted, true));
}
