#include "reebscape/brute_force.hpp"

#include "reebscape/error.hpp"

namespace reebscape {

std::vector<std::uint8_t> rasterize(const PlanarRegion& region, RasterGrid grid, bool parallel) {
  if (grid.nx1 < 2 || grid.nx2 < 2) throw Error("rasterize: grid too small");
  const Box& w = region.window();
  const double d1 = w.x1.length() / grid.nx1, d2 = w.x2.length() / grid.nx2;
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(grid.nx1) * grid.nx2);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < grid.nx1; ++i) {
    const double x1 = w.x1.lo + (i + 0.5) * d1;
    for (int j = 0; j < grid.nx2; ++j) {
      cells[static_cast<std::size_t>(i) * grid.nx2 + j] =
          region.contains({x1, w.x2.lo + (j + 0.5) * d2}) ? 1 : 0;
    }
  }
  return cells;
}

namespace {

struct Run {
  int row;
  int first;
  int last;
  int node = -1;
};

}  // namespace

ReebGraph brute_force_reeb(const PlanarRegion& region, RasterGrid grid, bool parallel) {
  const auto cells = rasterize(region, grid, parallel);
  const Box& w = region.window();
  const double d1 = w.x1.length() / grid.nx1, d2 = w.x2.length() / grid.nx2;

  std::vector<std::vector<Run>> rows(static_cast<std::size_t>(grid.nx1));
  for (int i = 0; i < grid.nx1; ++i) {
    const std::uint8_t* row = &cells[static_cast<std::size_t>(i) * grid.nx2];
    for (int j = 0; j < grid.nx2;) {
      if (!row[j]) {
        ++j;
        continue;
      }
      int k = j;
      while (k + 1 < grid.nx2 && row[k + 1]) ++k;
      rows[static_cast<std::size_t>(i)].push_back({i, j, k});
      j = k + 1;
    }
  }

  ReebGraph g;
  g.window = w;
  for (auto& row : rows) {
    for (Run& r : row) {
      const bool clipped = r.first == 0 || r.last == grid.nx2 - 1;
      r.node = g.add_node(w.x1.lo + (r.row + 0.5) * d1, NodeKind::corner,
                          w.x2.lo + (0.5 * (r.first + r.last) + 0.5) * d2, clipped);
    }
  }
  for (int i = 0; i + 1 < grid.nx1; ++i) {
    const auto& lo = rows[static_cast<std::size_t>(i)];
    const auto& hi = rows[static_cast<std::size_t>(i + 1)];
    std::size_t b = 0;
    for (const Run& a : lo) {
      while (b < hi.size() && hi[b].last < a.first) ++b;
      for (std::size_t c = b; c < hi.size() && hi[c].first <= a.last; ++c) {
        g.add_edge(a.node, hi[c].node);
      }
    }
  }

  std::vector<int> down(g.nodes.size(), 0), up(g.nodes.size(), 0);
  for (const ReebEdge& e : g.edges) {
    ++up[static_cast<std::size_t>(e.lo)];
    ++down[static_cast<std::size_t>(e.hi)];
  }
  std::vector<int> isolated;
  for (ReebNode& n : g.nodes) {
    const int k = down[static_cast<std::size_t>(n.id)], u = up[static_cast<std::size_t>(n.id)];
    if (k == 0 && u == 0) isolated.push_back(n.id);
    else if (k == 0) n.kind = NodeKind::birth;
    else if (u == 0) n.kind = NodeKind::death;
    else if (u > k) n.kind = NodeKind::split;
    else if (k > u) n.kind = NodeKind::merge;
    else n.kind = NodeKind::corner;
  }
  g = g.without_nodes(isolated);
  bool truncated = false;
  for (const ReebNode& n : g.nodes) truncated = truncated || n.truncated;
  g.flavor = truncated ? Flavor::truncated : Flavor::finite;
  return contract_regular(g, [](const ReebNode& n) { return n.kind != NodeKind::corner; });
}

}  // namespace reebscape
