#pragma once

#include <optional>
#include <string>
#include <variant>

#include "reebscape/reeb_graph.hpp"
#include "reebscape/region.hpp"

namespace reebscape {

struct AccumulationSchedule {
  double delta0 = 1.0 / kPi;
  int levels = 5;
  int min_count = 2;
};

struct SweepOptions {
  bool periodic = false;
  int max_refine = 16;
  /// Slices per band between consecutive events, used for tracks and for
  /// detecting events the boundary analysis missed.
  int samples_per_band = 6;
  SliceOptions slice{};
  EventOptions events{};
  AccumulationSchedule accumulation{};
  /// Evaluate band slices with OpenMP; false runs the serial reference.
  bool parallel = true;
};

using ReebResult = std::variant<ReebGraph, NotAGraphEvidence>;

/// Reeb graph of the height x1 on the region, or evidence that critical
/// values accumulate. In periodic mode the result is the quotient over one
/// period centred in the window.
ReebResult build_reeb(const PlanarRegion& region, const SweepOptions& opts = {});

/// build_reeb that insists on a graph.
ReebGraph build_reeb_graph(const PlanarRegion& region, const SweepOptions& opts = {});

/// One period of a translation-invariant graph, with seam shifts on edges.
ReebGraph periodic_quotient(const ReebGraph& full, double period, double center);

/// Tangency heights of the boundary in dyadic shells around the analyticity
/// gap located at `focus`.
std::optional<NotAGraphEvidence> detect_accumulation(const PlanarRegion& region, Point2 focus,
                                                     const AccumulationSchedule& schedule = {},
                                                     const RootOptions& roots = {});

struct PropernessReport {
  enum class Verdict { proper, improper, inconclusive } verdict = Verdict::proper;
  /// Largest contour width seen on any edge track.
  double bound = 0.0;
  int edge = -1;
  std::string witness;
};
const char* to_string(PropernessReport::Verdict v);

PropernessReport properness_check(const ReebGraph& graph);

}  // namespace reebscape
