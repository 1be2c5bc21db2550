#pragma once

#include <algorithm>

namespace reebscape {

template <class Keep>
ReebGraph contract_regular(const ReebGraph& g, Keep keep) {
  ReebGraph out = g;
  std::vector<char> dead_edge(out.edges.size(), 0);
  std::vector<int> drop;
  for (const ReebNode& n : g.nodes) {
    if (keep(n)) continue;
    int below = -1, above = -1, count_below = 0, count_above = 0;
    for (std::size_t e = 0; e < out.edges.size(); ++e) {
      if (dead_edge[e]) continue;
      if (out.edges[e].hi == n.id) {
        below = static_cast<int>(e);
        ++count_below;
      }
      if (out.edges[e].lo == n.id) {
        above = static_cast<int>(e);
        ++count_above;
      }
    }
    if (count_below != 1 || count_above != 1 || below == above) continue;
    ReebEdge& b = out.edges[static_cast<std::size_t>(below)];
    const ReebEdge& a = out.edges[static_cast<std::size_t>(above)];
    b.hi = a.hi;
    b.shift += a.shift;
    b.truncated = b.truncated || a.truncated || n.truncated;
    b.unbounded = b.unbounded || a.unbounded;
    b.track.insert(b.track.end(), a.track.begin(), a.track.end());
    dead_edge[static_cast<std::size_t>(above)] = 1;
    drop.push_back(n.id);
  }
  std::vector<ReebEdge> kept;
  for (std::size_t e = 0; e < out.edges.size(); ++e) {
    if (!dead_edge[e]) kept.push_back(out.edges[e]);
  }
  out.edges = std::move(kept);
  return out.without_nodes(drop);
}

}  // namespace reebscape
