#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reebscape/curve.hpp"

namespace reebscape {

enum class NodeKind { split, merge, birth, death, corner, end, tangency_degenerate, z_vertex };
const char* to_string(NodeKind k);
NodeKind node_kind_from_string(const std::string& s);
/// Critical in the classical sense: splits, merges, births, deaths, tangencies and ends.
bool is_critical(NodeKind k);

struct TrackSample {
  double height = 0.0;
  Interval x2;
};

struct ReebNode {
  int id = 0;
  double height = 0.0;
  NodeKind kind = NodeKind::corner;
  double x2 = 0.0;
  /// Touches the analysis window, so the local picture may be clipped.
  bool truncated = false;
};

struct ReebEdge {
  int id = 0;
  int lo = 0;
  int hi = 0;
  std::vector<TrackSample> track;
  /// Period shift from the lower to the upper node (periodic quotients only).
  int shift = 0;
  bool truncated = false;
  /// Some contour on the edge spans the whole window in x2.
  bool unbounded = false;
};

enum class Flavor { finite, periodic, truncated };
const char* to_string(Flavor f);

class ReebGraph {
 public:
  Flavor flavor = Flavor::finite;
  double period = 0.0;
  Box window{};
  std::vector<ReebNode> nodes;
  std::vector<ReebEdge> edges;

  int add_node(double height, NodeKind kind, double x2, bool truncated = false);
  int add_edge(int lo, int hi, std::vector<TrackSample> track = {}, int shift = 0);

  const ReebNode& node(int id) const { return nodes.at(static_cast<std::size_t>(id)); }
  int degree(int id) const;
  int down_degree(int id) const;
  int up_degree(int id) const;
  /// Height range of an edge, from its end nodes.
  Interval edge_heights(const ReebEdge& e) const { return {node(e.lo).height, node(e.hi).height}; }

  /// Drop the listed nodes, their edges, and renumber ids densely.
  ReebGraph without_nodes(const std::vector<int>& ids) const;

  nlohmann::json to_json() const;
  static ReebGraph from_json(const nlohmann::json& j);
  std::string to_dot() const;
};

/// Removes window-clipped nodes and edges, then isolated nodes, then
/// contracts every node with exactly one edge below and one above.
ReebGraph canonicalize(const ReebGraph& g);

/// Merges lo -> n -> hi chains through every node with one edge below and
/// one above for which `keep` is false.
template <class Keep>
ReebGraph contract_regular(const ReebGraph& g, Keep keep);

struct NotAGraphEvidence {
  struct Witness {
    double height = 0.0;
    double log_height = 0.0;  // natural log of |height|
    double x2 = 0.0;
    int level = 0;
  };
  struct Level {
    int k = 0;
    Interval offsets;  // |t - gap| range of the dyadic shell
    int tangencies = 0;
    int new_heights = 0;
  };
  double accumulation_height = 0.0;
  Point2 focus;
  std::vector<Witness> witnesses;  // strictly decreasing toward the limit
  std::vector<Level> levels;
  /// Proper slice interval count at each witness height.
  std::vector<int> contour_counts;
  /// Point intervals in the slice at the accumulation height.
  int degenerate_points = 0;
  std::vector<Interval> unresolved;

  nlohmann::json to_json() const;
};

}  // namespace reebscape

#include "reebscape/reeb_graph_impl.hpp"
