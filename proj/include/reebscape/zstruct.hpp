#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "reebscape/reeb_graph.hpp"
#include "reebscape/region.hpp"

namespace reebscape {

/// A piece of the non-analyticity set Z in the plane.
struct ZComponent {
  enum class Kind { point, segment } kind = Kind::point;
  Point2 a;
  Point2 b;  // segment end; unused for points
  std::string provenance;

  static ZComponent point(Point2 p, std::string prov = {}) {
    return {Kind::point, p, p, std::move(prov)};
  }
  static ZComponent segment(Point2 p, Point2 q, std::string prov = {}) {
    return {Kind::segment, p, q, std::move(prov)};
  }
};

struct ZSpec {
  std::vector<ZComponent> components;
  bool empty() const { return components.empty(); }
};

/// Where a point of the region lands in a Reeb graph: on a node, or inside an edge.
struct GraphLocation {
  int node = -1;
  int edge = -1;
  double height = 0.0;
  bool on_node() const { return node >= 0; }
};

struct ZImage {
  struct Point {
    GraphLocation at;
    int component = 0;
  };
  struct Arc {
    int edge = 0;
    Interval heights;
    int component = 0;
  };
  std::vector<Point> points;
  std::vector<Arc> arcs;

  /// Distinct graph points among `points`.
  std::vector<GraphLocation> distinct_points(double tol = 1e-7) const;
  nlohmann::json to_json() const;
};

struct ProjectOptions {
  int segment_samples = 64;
  int refine_depth = 6;
  /// Height spread below which a run of samples is a point.
  double arc_tol = 1e-7;
};

/// Locates a region point (x1 = height, x2) on the graph's edge tracks.
/// Throws LocateFailed when no track is close enough.
GraphLocation locate(const ReebGraph& graph, Point2 p);

ZImage project_z(const PlanarRegion& region, const ZSpec& z, const ReebGraph& graph,
                 const ProjectOptions& opts = {});

struct ZVerdict {
  bool defined = false;
  std::string reason;
  ReebGraph refined;  // vertex set exactly the Z image when defined

  nlohmann::json to_json() const;
};

ZVerdict decide_zgraph(const ReebGraph& graph, const ZImage& z);

struct Remark1Vertices {
  std::vector<GraphLocation> vertices;
  int critical = 0;
  /// Z image points that are not already critical nodes, after merging.
  int added = 0;
  /// Same count without merging coincident Z images.
  int added_raw = 0;
  bool arc_warning = false;
};

Remark1Vertices remark1_vertices(const ReebGraph& graph, const ZImage& z);

/// Directed graph isomorphism preserving node classes (split, merge, leaf,
/// regular). With `respect_heights`, node kinds and heights must also match.
/// Periodic quotients must agree on seam shifts up to a relabelling of copies.
bool iso_check(const ReebGraph& g1, const ReebGraph& g2, bool respect_heights,
               double height_tol = 1e-6);

}  // namespace reebscape
