#include "reebscape/reeb_graph.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "reebscape/error.hpp"

namespace reebscape {

namespace {

constexpr std::pair<NodeKind, const char*> kKindNames[] = {
    {NodeKind::split, "split"},
    {NodeKind::merge, "merge"},
    {NodeKind::birth, "birth"},
    {NodeKind::death, "death"},
    {NodeKind::corner, "corner"},
    {NodeKind::end, "end"},
    {NodeKind::tangency_degenerate, "tangency-degenerate"},
    {NodeKind::z_vertex, "z-vertex"},
};

}  // namespace

const char* to_string(NodeKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

NodeKind node_kind_from_string(const std::string& s) {
  for (const auto& [kind, name] : kKindNames) {
    if (s == name) return kind;
  }
  throw ConfigError("unknown node kind '" + s + "'");
}

bool is_critical(NodeKind k) {
  return k != NodeKind::corner && k != NodeKind::z_vertex;
}

const char* to_string(Flavor f) {
  switch (f) {
    case Flavor::finite:
      return "finite";
    case Flavor::periodic:
      return "periodic";
    case Flavor::truncated:
      return "truncated";
  }
  return "?";
}

int ReebGraph::add_node(double height, NodeKind kind, double x2, bool truncated) {
  const int id = static_cast<int>(nodes.size());
  nodes.push_back({id, height, kind, x2, truncated});
  return id;
}

int ReebGraph::add_edge(int lo, int hi, std::vector<TrackSample> track, int shift) {
  const int id = static_cast<int>(edges.size());
  ReebEdge e;
  e.id = id;
  e.lo = lo;
  e.hi = hi;
  e.track = std::move(track);
  e.shift = shift;
  edges.push_back(std::move(e));
  return id;
}

int ReebGraph::degree(int id) const { return down_degree(id) + up_degree(id); }

int ReebGraph::down_degree(int id) const {
  return static_cast<int>(
      std::count_if(edges.begin(), edges.end(), [id](const ReebEdge& e) { return e.hi == id; }));
}

int ReebGraph::up_degree(int id) const {
  return static_cast<int>(
      std::count_if(edges.begin(), edges.end(), [id](const ReebEdge& e) { return e.lo == id; }));
}

ReebGraph ReebGraph::without_nodes(const std::vector<int>& ids) const {
  ReebGraph out;
  out.flavor = flavor;
  out.period = period;
  out.window = window;
  std::vector<int> remap(nodes.size(), -1);
  for (const ReebNode& n : nodes) {
    if (std::find(ids.begin(), ids.end(), n.id) != ids.end()) continue;
    remap[static_cast<std::size_t>(n.id)] = out.add_node(n.height, n.kind, n.x2, n.truncated);
  }
  for (const ReebEdge& e : edges) {
    const int lo = remap[static_cast<std::size_t>(e.lo)];
    const int hi = remap[static_cast<std::size_t>(e.hi)];
    if (lo < 0 || hi < 0) continue;
    ReebEdge c = e;
    c.id = static_cast<int>(out.edges.size());
    c.lo = lo;
    c.hi = hi;
    out.edges.push_back(std::move(c));
  }
  return out;
}

nlohmann::json ReebGraph::to_json() const {
  nlohmann::json j;
  j["flavor"] = to_string(flavor);
  if (flavor == Flavor::periodic) j["period"] = period;
  j["window"] = {{"x1", {window.x1.lo, window.x1.hi}}, {"x2", {window.x2.lo, window.x2.hi}}};
  j["nodes"] = nlohmann::json::array();
  for (const ReebNode& n : nodes) {
    nlohmann::json jn = {{"id", n.id}, {"height", n.height}, {"kind", to_string(n.kind)}, {"x2", n.x2}};
    if (n.truncated) jn["truncated"] = true;
    j["nodes"].push_back(std::move(jn));
  }
  j["edges"] = nlohmann::json::array();
  for (const ReebEdge& e : edges) {
    nlohmann::json je = {{"id", e.id},
                         {"lo", e.lo},
                         {"hi", e.hi},
                         {"heights", {node(e.lo).height, node(e.hi).height}}};
    if (flavor == Flavor::periodic) je["shift"] = e.shift;
    if (e.truncated) je["truncated"] = true;
    if (e.unbounded) je["unbounded"] = true;
    j["edges"].push_back(std::move(je));
  }
  return j;
}

ReebGraph ReebGraph::from_json(const nlohmann::json& j) {
  try {
    ReebGraph g;
    const std::string flavor = j.at("flavor").get<std::string>();
    if (flavor == "finite") {
      g.flavor = Flavor::finite;
    } else if (flavor == "periodic") {
      g.flavor = Flavor::periodic;
      g.period = j.at("period").get<double>();
    } else if (flavor == "truncated") {
      g.flavor = Flavor::truncated;
    } else {
      throw ConfigError("unknown graph flavor '" + flavor + "'");
    }
    if (j.contains("window")) {
      const auto& w = j["window"];
      g.window = {{w["x1"][0], w["x1"][1]}, {w["x2"][0], w["x2"][1]}};
    }
    std::map<int, int> ids;
    for (const auto& jn : j.at("nodes")) {
      const int id = g.add_node(jn.at("height").get<double>(),
                                node_kind_from_string(jn.at("kind").get<std::string>()),
                                jn.value("x2", 0.0), jn.value("truncated", false));
      ids[jn.at("id").get<int>()] = id;
    }
    for (const auto& je : j.at("edges")) {
      const int e = g.add_edge(ids.at(je.at("lo").get<int>()), ids.at(je.at("hi").get<int>()), {},
                               je.value("shift", 0));
      g.edges[static_cast<std::size_t>(e)].truncated = je.value("truncated", false);
      g.edges[static_cast<std::size_t>(e)].unbounded = je.value("unbounded", false);
    }
    return g;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("malformed graph JSON: ") + ex.what());
  } catch (const std::out_of_range&) {
    throw ConfigError("graph JSON: edge refers to an unknown node");
  }
}

std::string ReebGraph::to_dot() const {
  std::ostringstream os;
  os.precision(6);
  os << "digraph reeb {\n  rankdir=BT;\n";
  if (flavor == Flavor::periodic) os << "  label=\"periodic, period " << period << "\";\n";
  for (const ReebNode& n : nodes) {
    os << "  n" << n.id << " [label=\"" << to_string(n.kind) << "@" << n.height << "\"];\n";
  }
  for (const ReebEdge& e : edges) {
    os << "  n" << e.lo << " -> n" << e.hi;
    if (flavor == Flavor::periodic && e.shift != 0) os << " [label=\"shift " << e.shift << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

ReebGraph canonicalize(const ReebGraph& g) {
  std::vector<int> clipped;
  for (const ReebNode& n : g.nodes) {
    if (n.truncated) clipped.push_back(n.id);
  }
  ReebGraph h = g.without_nodes(clipped);
  std::vector<ReebEdge> kept;
  for (const ReebEdge& e : h.edges) {
    if (!e.truncated) kept.push_back(e);
  }
  h.edges = std::move(kept);
  std::vector<int> isolated;
  for (const ReebNode& n : h.nodes) {
    if (h.degree(n.id) == 0) isolated.push_back(n.id);
  }
  h = h.without_nodes(isolated);
  // Renumber edge ids after filtering.
  for (std::size_t e = 0; e < h.edges.size(); ++e) h.edges[e].id = static_cast<int>(e);
  ReebGraph c = contract_regular(h, [](const ReebNode&) { return false; });
  for (std::size_t e = 0; e < c.edges.size(); ++e) c.edges[e].id = static_cast<int>(e);
  return c;
}

nlohmann::json NotAGraphEvidence::to_json() const {
  nlohmann::json j;
  j["verdict"] = "not-a-graph";
  j["accumulation_height"] = accumulation_height;
  j["focus"] = {focus.x1, focus.x2};
  j["witnesses"] = nlohmann::json::array();
  for (const Witness& w : witnesses) {
    j["witnesses"].push_back(
        {{"height", w.height}, {"log_height", w.log_height}, {"x2", w.x2}, {"level", w.level}});
  }
  j["levels"] = nlohmann::json::array();
  for (const Level& l : levels) {
    j["levels"].push_back({{"k", l.k},
                           {"offsets", {l.offsets.lo, l.offsets.hi}},
                           {"tangencies", l.tangencies},
                           {"new_heights", l.new_heights}});
  }
  j["contour_counts"] = contour_counts;
  j["degenerate_points_at_limit"] = degenerate_points;
  j["unresolved"] = nlohmann::json::array();
  for (const Interval& z : unresolved) j["unresolved"].push_back({z.lo, z.hi});
  return j;
}

}  // namespace reebscape
