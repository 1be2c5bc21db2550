#include "reebscape/zstruct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>

#include "reebscape/error.hpp"

namespace reebscape {

namespace {

/// Conservative x2 range of an edge's contour at height h, and the slack
/// allowed when h lies outside the sampled part of the track.
std::pair<Interval, double> track_at(const ReebEdge& e, double h) {
  const auto& tr = e.track;
  if (h <= tr.front().height || h >= tr.back().height) {
    const bool low = h <= tr.front().height;
    const TrackSample& s = low ? tr.front() : tr.back();
    const TrackSample& n = low ? tr[std::min<std::size_t>(1, tr.size() - 1)]
                               : tr[tr.size() >= 2 ? tr.size() - 2 : 0];
    const double gap = std::fabs(h - s.height);
    const double dh = std::fabs(n.height - s.height);
    double slope = 0.0;
    if (dh > 0.0) {
      slope = std::max(std::fabs(n.x2.lo - s.x2.lo), std::fabs(n.x2.hi - s.x2.hi)) / dh;
    }
    return {s.x2, 1e-6 + 2.0 * slope * gap + 4.0 * std::sqrt(gap)};
  }
  auto it = std::lower_bound(tr.begin(), tr.end(), h,
                             [](const TrackSample& s, double v) { return s.height < v; });
  const TrackSample& b = *it;
  const TrackSample& a = *(it - 1);
  return {{std::min(a.x2.lo, b.x2.lo), std::max(a.x2.hi, b.x2.hi)}, 1e-6};
}

bool same_location(const GraphLocation& a, const GraphLocation& b, double tol) {
  if (a.on_node() || b.on_node()) return a.node == b.node && a.on_node() && b.on_node();
  return a.edge == b.edge && std::fabs(a.height - b.height) <= tol;
}

}  // namespace

GraphLocation locate(const ReebGraph& graph, Point2 p) {
  const double h = p.x1, x = p.x2;
  const double htol = 1e-9 * (1.0 + std::fabs(h));
  int best = -1;
  double best_excess = kInf, best_center = kInf;
  for (const ReebEdge& e : graph.edges) {
    if (e.track.empty()) continue;
    const double lo_h = graph.node(e.lo).height, hi_h = graph.node(e.hi).height;
    if (h < lo_h - htol || h > hi_h + htol) continue;
    const auto [iv, slack] = track_at(e, h);
    const double dist = std::max({0.0, iv.lo - x, x - iv.hi});
    const double excess = dist - slack;
    const double center = std::fabs(x - iv.mid());
    if (excess > 0.0) continue;
    if (dist < best_excess || (dist == best_excess && center < best_center)) {
      best = e.id;
      best_excess = dist;
      best_center = center;
    }
  }
  if (best < 0) throw LocateFailed("point matches no edge track of the graph");
  const ReebEdge& e = graph.edges[static_cast<std::size_t>(best)];
  GraphLocation loc;
  loc.height = h;
  if (std::fabs(h - graph.node(e.lo).height) <= htol) {
    loc.node = e.lo;
  } else if (std::fabs(h - graph.node(e.hi).height) <= htol) {
    loc.node = e.hi;
  } else {
    loc.edge = e.id;
  }
  return loc;
}

std::vector<GraphLocation> ZImage::distinct_points(double tol) const {
  std::vector<GraphLocation> out;
  for (const Point& p : points) {
    if (std::none_of(out.begin(), out.end(),
                     [&](const GraphLocation& q) { return same_location(p.at, q, tol); })) {
      out.push_back(p.at);
    }
  }
  return out;
}

nlohmann::json ZImage::to_json() const {
  nlohmann::json j;
  j["points"] = nlohmann::json::array();
  for (const Point& p : points) {
    nlohmann::json jp = {{"height", p.at.height}, {"component", p.component}};
    if (p.at.on_node()) jp["node"] = p.at.node;
    else jp["edge"] = p.at.edge;
    j["points"].push_back(std::move(jp));
  }
  j["distinct_points"] = distinct_points().size();
  j["arcs"] = nlohmann::json::array();
  for (const Arc& a : arcs) {
    j["arcs"].push_back(
        {{"edge", a.edge}, {"heights", {a.heights.lo, a.heights.hi}}, {"component", a.component}});
  }
  return j;
}

ZImage project_z(const PlanarRegion& region, const ZSpec& z, const ReebGraph& graph,
                 const ProjectOptions& opts) {
  ZImage img;
  for (std::size_t ci = 0; ci < z.components.size(); ++ci) {
    const ZComponent& comp = z.components[ci];
    const int cid = static_cast<int>(ci);
    if (comp.kind == ZComponent::Kind::point) {
      if (region.contains(comp.a, 1e-9)) img.points.push_back({locate(graph, comp.a), cid});
      continue;
    }
    auto at = [&](double t) {
      return Point2{comp.a.x1 + t * (comp.b.x1 - comp.a.x1), comp.a.x2 + t * (comp.b.x2 - comp.a.x2)};
    };
    struct Sample {
      double t;
      bool inside;
      GraphLocation loc;
    };
    auto probe = [&](double t) {
      Sample s{t, region.contains(at(t), 1e-9), {}};
      if (s.inside) s.loc = locate(graph, at(t));
      return s;
    };
    auto differ = [](const Sample& a, const Sample& b) {
      if (a.inside != b.inside) return true;
      if (!a.inside) return false;
      return a.loc.on_node() || b.loc.on_node() || a.loc.edge != b.loc.edge;
    };
    std::vector<Sample> samples;
    const int n = std::max(opts.segment_samples, 2);
    for (int k = 0; k < n; ++k) samples.push_back(probe(static_cast<double>(k) / (n - 1)));
    // Refine where consecutive samples land in different places.
    std::function<void(const Sample&, const Sample&, int, std::vector<Sample>&)> refine =
        [&](const Sample& a, const Sample& b, int depth, std::vector<Sample>& out) {
          if (depth == 0 || !differ(a, b)) return;
          const Sample m = probe(0.5 * (a.t + b.t));
          refine(a, m, depth - 1, out);
          out.push_back(m);
          refine(m, b, depth - 1, out);
        };
    std::vector<Sample> fine{samples.front()};
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
      refine(samples[k], samples[k + 1], opts.refine_depth, fine);
      fine.push_back(samples[k + 1]);
    }

    // Runs of consecutive samples on one edge become arcs or points.
    std::size_t k = 0;
    while (k < fine.size()) {
      const Sample& s = fine[k];
      if (!s.inside) {
        ++k;
        continue;
      }
      if (s.loc.on_node()) {
        img.points.push_back({s.loc, cid});
        ++k;
        continue;
      }
      double lo = s.loc.height, hi = s.loc.height;
      std::size_t j = k + 1;
      while (j < fine.size() && fine[j].inside && !fine[j].loc.on_node() &&
             fine[j].loc.edge == s.loc.edge) {
        lo = std::min(lo, fine[j].loc.height);
        hi = std::max(hi, fine[j].loc.height);
        ++j;
      }
      if (hi - lo > opts.arc_tol) {
        img.arcs.push_back({s.loc.edge, {lo, hi}, cid});
      } else {
        GraphLocation loc = s.loc;
        loc.height = 0.5 * (lo + hi);
        img.points.push_back({loc, cid});
      }
      k = j;
    }
  }
  return img;
}

nlohmann::json ZVerdict::to_json() const {
  nlohmann::json j;
  j["zgraph"] = defined ? "defined" : "undefined";
  j["reason"] = reason;
  j["vertices"] = nlohmann::json::array();
  if (defined) {
    for (const ReebNode& n : refined.nodes) j["vertices"].push_back({{"height", n.height}, {"x2", n.x2}});
  }
  return j;
}

namespace {

double track_center(const ReebEdge& e, double h) {
  if (e.track.empty()) return 0.0;
  return track_at(e, h).first.mid();
}

/// Splits edges at interior Z points; returns the graph and its vertex flags.
std::pair<ReebGraph, std::vector<char>> subdivide(const ReebGraph& graph,
                                                   const std::vector<GraphLocation>& zs) {
  ReebGraph g = graph;
  std::vector<char> vertex(g.nodes.size(), 0);
  std::map<int, std::vector<double>> cuts;
  for (const GraphLocation& z : zs) {
    if (z.on_node()) vertex[static_cast<std::size_t>(z.node)] = 1;
    else cuts[z.edge].push_back(z.height);
  }
  std::vector<ReebEdge> edges;
  for (const ReebEdge& e : graph.edges) {
    auto it = cuts.find(e.id);
    if (it == cuts.end()) {
      edges.push_back(e);
      continue;
    }
    std::vector<double> hs = it->second;
    std::sort(hs.begin(), hs.end());
    int below = e.lo;
    int shift = e.shift;
    std::size_t from = 0;
    for (double h : hs) {
      const int mid = g.add_node(h, NodeKind::z_vertex, track_center(e, h));
      vertex.push_back(1);
      ReebEdge piece = e;
      piece.lo = below;
      piece.hi = mid;
      piece.shift = shift;
      piece.track.clear();
      while (from < e.track.size() && e.track[from].height < h) piece.track.push_back(e.track[from++]);
      edges.push_back(std::move(piece));
      below = mid;
      shift = 0;
    }
    ReebEdge last = e;
    last.lo = below;
    last.shift = shift;
    last.track.assign(e.track.begin() + static_cast<std::ptrdiff_t>(from), e.track.end());
    edges.push_back(std::move(last));
  }
  g.edges = std::move(edges);
  for (std::size_t i = 0; i < g.edges.size(); ++i) g.edges[i].id = static_cast<int>(i);
  return {std::move(g), std::move(vertex)};
}

}  // namespace

ZVerdict decide_zgraph(const ReebGraph& graph, const ZImage& z) {
  ZVerdict v;
  if (!z.arcs.empty()) {
    v.reason = "arc-in-image";
    return v;
  }
  auto [g, vertex] = subdivide(graph, z.distinct_points());
  for (const ReebNode& n : g.nodes) {
    if (vertex[static_cast<std::size_t>(n.id)]) continue;
    const int d = g.degree(n.id);
    if (d <= 1) {
      v.reason = "uncovered-endpoint";
      return v;
    }
    if (d > 2) {
      v.reason = "branch-point-not-in-image";
      return v;
    }
  }
  // Contract every non-vertex node of degree two, ignoring edge direction.
  std::vector<char> alive_edge(g.edges.size(), 1);
  std::vector<int> drop;
  for (const ReebNode& n : g.nodes) {
    if (vertex[static_cast<std::size_t>(n.id)]) continue;
    std::vector<int> inc;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (!alive_edge[e]) continue;
      if (g.edges[e].lo == n.id) inc.push_back(static_cast<int>(e));
      if (g.edges[e].hi == n.id) inc.push_back(static_cast<int>(e));
    }
    if (inc.size() != 2 || inc[0] == inc[1]) {
      v.reason = "cycle-without-vertex";
      return v;
    }
    ReebEdge& a = g.edges[static_cast<std::size_t>(inc[0])];
    ReebEdge& b = g.edges[static_cast<std::size_t>(inc[1])];
    // Shift accumulated walking from a's far end through n to b's far end.
    const int a_far = a.lo == n.id ? a.hi : a.lo;
    const int b_far = b.lo == n.id ? b.hi : b.lo;
    const int s_a = a.lo == n.id ? -a.shift : a.shift;  // far(a) -> n
    const int s_b = b.lo == n.id ? b.shift : -b.shift;  // n -> far(b)
    ReebEdge merged = a;
    if (g.node(a_far).height <= g.node(b_far).height) {
      merged.lo = a_far;
      merged.hi = b_far;
      merged.shift = s_a + s_b;
    } else {
      merged.lo = b_far;
      merged.hi = a_far;
      merged.shift = -(s_a + s_b);
    }
    merged.track.insert(merged.track.end(), b.track.begin(), b.track.end());
    std::sort(merged.track.begin(), merged.track.end(),
              [](const TrackSample& x, const TrackSample& y) { return x.height < y.height; });
    a = std::move(merged);
    alive_edge[static_cast<std::size_t>(inc[1])] = 0;
    drop.push_back(n.id);
  }
  std::vector<ReebEdge> kept;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (alive_edge[e]) kept.push_back(g.edges[e]);
  }
  g.edges = std::move(kept);
  for (const ReebEdge& e : g.edges) {
    if (e.lo == e.hi && e.shift == 0) {
      v.reason = "loop-edge";
      return v;
    }
  }
  v.refined = g.without_nodes(drop);
  for (ReebNode& n : v.refined.nodes) n.kind = NodeKind::z_vertex;
  v.defined = true;
  v.reason = "vertex set equals the Z image";
  return v;
}

Remark1Vertices remark1_vertices(const ReebGraph& graph, const ZImage& z) {
  Remark1Vertices r;
  auto critical = [&](int id) {
    const NodeKind k = graph.node(id).kind;
    return is_critical(k);
  };
  for (const ReebNode& n : graph.nodes) {
    if (critical(n.id)) {
      r.vertices.push_back({n.id, -1, n.height});
      ++r.critical;
    }
  }
  for (const GraphLocation& p : z.distinct_points()) {
    if (p.on_node() && critical(p.node)) continue;
    r.vertices.push_back(p);
    ++r.added;
  }
  for (const ZImage::Point& p : z.points) {
    if (!(p.at.on_node() && critical(p.at.node))) ++r.added_raw;
  }
  r.arc_warning = !z.arcs.empty();
  return r;
}

namespace {

enum class NodeClass { split, merge, leaf, regular };

NodeClass classify(NodeKind k) {
  switch (k) {
    case NodeKind::split:
      return NodeClass::split;
    case NodeKind::merge:
      return NodeClass::merge;
    case NodeKind::birth:
    case NodeKind::death:
    case NodeKind::end:
      return NodeClass::leaf;
    default:
      return NodeClass::regular;
  }
}

struct Signature {
  NodeClass cls;
  int down;
  int up;
  bool operator==(const Signature&) const = default;
};

class IsoSearch {
 public:
  IsoSearch(const ReebGraph& a, const ReebGraph& b, bool heights, double tol)
      : a_(a), b_(b), heights_(heights), tol_(tol), map_(a.nodes.size(), -1),
        used_(b.nodes.size(), 0) {
    for (const auto& n : a.nodes) sig_a_.push_back(signature(a, n));
    for (const auto& n : b.nodes) sig_b_.push_back(signature(b, n));
    count_a_ = counts(a);
    count_b_ = counts(b);
    // Visit nodes so that each one after the first touches a visited node.
    std::vector<char> seen(a.nodes.size(), 0);
    for (std::size_t s = 0; s < a.nodes.size(); ++s) {
      if (seen[s]) continue;
      std::queue<int> q;
      q.push(static_cast<int>(s));
      seen[s] = 1;
      while (!q.empty()) {
        const int u = q.front();
        q.pop();
        order_.push_back(u);
        for (const auto& e : a.edges) {
          for (int w : {e.lo == u ? e.hi : -1, e.hi == u ? e.lo : -1}) {
            if (w >= 0 && !seen[static_cast<std::size_t>(w)]) {
              seen[static_cast<std::size_t>(w)] = 1;
              q.push(w);
            }
          }
        }
      }
    }
  }

  bool run() { return extend(0); }

 private:
  static Signature signature(const ReebGraph& g, const ReebNode& n) {
    return {classify(n.kind), g.down_degree(n.id), g.up_degree(n.id)};
  }
  static std::map<std::pair<int, int>, std::vector<int>> counts(const ReebGraph& g) {
    std::map<std::pair<int, int>, std::vector<int>> m;
    for (const auto& e : g.edges) m[{e.lo, e.hi}].push_back(e.shift);
    for (auto& [k, v] : m) std::sort(v.begin(), v.end());
    return m;
  }
  static const std::vector<int>& lookup(const std::map<std::pair<int, int>, std::vector<int>>& m,
                                        int x, int y) {
    static const std::vector<int> none;
    auto it = m.find({x, y});
    return it == m.end() ? none : it->second;
  }

  bool compatible(int u, int v) const {
    if (!(sig_a_[static_cast<std::size_t>(u)] == sig_b_[static_cast<std::size_t>(v)])) return false;
    if (heights_) {
      const ReebNode& x = a_.node(u);
      const ReebNode& y = b_.node(v);
      if (x.kind != y.kind || std::fabs(x.height - y.height) > tol_) return false;
    }
    for (std::size_t w = 0; w < map_.size(); ++w) {
      const int mw = map_[w];
      if (mw < 0 && static_cast<int>(w) != u) continue;
      const int wi = static_cast<int>(w);
      const int wv = static_cast<int>(w) == u ? v : mw;
      if (lookup(count_a_, u, wi).size() != lookup(count_b_, v, wv).size()) return false;
      if (lookup(count_a_, wi, u).size() != lookup(count_b_, wv, v).size()) return false;
    }
    return true;
  }

  /// Shift multisets agree up to an integer potential on nodes.
  bool shifts_consistent() const {
    if (a_.flavor != Flavor::periodic) return true;
    std::vector<long> pot(map_.size(), 0);
    std::vector<char> set(map_.size(), 0);
    for (std::size_t s = 0; s < map_.size(); ++s) {
      if (set[s]) continue;
      set[s] = 1;
      std::queue<int> q;
      q.push(static_cast<int>(s));
      while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (const auto& [key, sa] : count_a_) {
          const auto [x, y] = key;
          if (x != u && y != u) continue;
          const auto& sb = lookup(count_b_, map_[static_cast<std::size_t>(x)],
                                  map_[static_cast<std::size_t>(y)]);
          if (sa.size() != sb.size()) return false;
          const long off = sb.front() - sa.front();
          for (std::size_t i = 0; i < sa.size(); ++i) {
            if (sb[i] - sa[i] != off) return false;
          }
          // off = pot(y) - pot(x)
          const int other = x == u ? y : x;
          const long want = x == u ? pot[static_cast<std::size_t>(u)] + off
                                   : pot[static_cast<std::size_t>(u)] - off;
          if (x == y) {
            if (off != 0) return false;
            continue;
          }
          if (!set[static_cast<std::size_t>(other)]) {
            set[static_cast<std::size_t>(other)] = 1;
            pot[static_cast<std::size_t>(other)] = want;
            q.push(other);
          } else if (pot[static_cast<std::size_t>(other)] != want) {
            return false;
          }
        }
      }
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return shifts_consistent();
    const int u = order_[depth];
    for (std::size_t v = 0; v < b_.nodes.size(); ++v) {
      if (used_[v] || !compatible(u, static_cast<int>(v))) continue;
      map_[static_cast<std::size_t>(u)] = static_cast<int>(v);
      used_[v] = 1;
      if (extend(depth + 1)) return true;
      map_[static_cast<std::size_t>(u)] = -1;
      used_[v] = 0;
    }
    return false;
  }

  const ReebGraph& a_;
  const ReebGraph& b_;
  bool heights_;
  double tol_;
  std::vector<int> map_;
  std::vector<char> used_;
  std::vector<Signature> sig_a_, sig_b_;
  std::map<std::pair<int, int>, std::vector<int>> count_a_, count_b_;
  std::vector<int> order_;
};

}  // namespace

bool iso_check(const ReebGraph& g1, const ReebGraph& g2, bool respect_heights, double height_tol) {
  if (g1.nodes.size() != g2.nodes.size() || g1.edges.size() != g2.edges.size()) return false;
  if ((g1.flavor == Flavor::periodic) != (g2.flavor == Flavor::periodic)) return false;
  if (g1.flavor == Flavor::periodic && std::fabs(g1.period - g2.period) > height_tol) return false;
  return IsoSearch(g1, g2, respect_heights, height_tol).run();
}

}  // namespace reebscape
