#pragma once

#include <cstdint>
#include <vector>

#include "reebscape/reeb_graph.hpp"
#include "reebscape/region.hpp"

namespace reebscape {

struct RasterGrid {
  int nx1 = 512;
  int nx2 = 512;
};

/// Row-major membership of cell centres: cell (i, j) has x1 index i.
std::vector<std::uint8_t> rasterize(const PlanarRegion& region, RasterGrid grid,
                                    bool parallel = true);

/// Reeb graph of x1 read off a raster of the region's window: every row is a
/// level band whose runs of member cells are contours, runs in adjacent rows
/// touching in a column are joined, and chains of regular runs are contracted.
/// Runs touching the x2 ends of the window are flagged truncated.
ReebGraph brute_force_reeb(const PlanarRegion& region, RasterGrid grid, bool parallel = true);

}  // namespace reebscape
