#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reebscape/curve.hpp"

namespace reebscape {

/// The closed half {side * g >= 0} of a boundary curve's defining function.
struct Constraint {
  PlaneCurve curve;
  int side = 1;
  std::string label;
};

class PlanarRegion {
 public:
  PlanarRegion(std::vector<Constraint> constraints, Box window,
               std::optional<double> period = std::nullopt);

  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Box& window() const { return window_; }
  std::optional<double> period() const { return period_; }

  /// Sign of side * g for constraint k, robust against underflow.
  int constraint_sign(std::size_t k, Point2 p) const;
  bool contains(Point2 p, double tol = 0.0) const;

  /// Same constraints with another window.
  PlanarRegion with_window(Box w) const { return PlanarRegion(constraints_, w, period_); }
  PlanarRegion without_constraint(std::size_t k) const;
  /// Image under an affine map; the window becomes the given box.
  PlanarRegion mapped(const Affine2& map, Box window) const;

 private:
  std::vector<Constraint> constraints_;
  Box window_;
  std::optional<double> period_;
};

/// Endpoint of a slice interval. `source` is the generating constraint, or -1
/// when the window clipped the interval.
struct SliceEnd {
  double x2 = 0.0;
  int source = -1;
  bool truncated() const { return source < 0; }
};

struct SliceInterval {
  SliceEnd lo;
  SliceEnd hi;
  bool degenerate() const { return lo.x2 == hi.x2; }
  double length() const { return hi.x2 - lo.x2; }
  bool overlaps(const SliceInterval& o) const { return lo.x2 <= o.hi.x2 && o.lo.x2 <= hi.x2; }
};

struct Slice {
  double height = 0.0;
  std::vector<SliceInterval> intervals;
  /// x2 ranges where boundary crossings accumulate beyond resolution.
  std::vector<Interval> unresolved;

  /// Intervals of positive length.
  std::vector<SliceInterval> proper_intervals() const;
  std::size_t proper_count() const { return proper_intervals().size(); }
};

struct SliceOptions {
  RootOptions roots{};
  /// Tolerance for accepting a crossing point as a region member.
  double member_tol = 1e-9;
};

/// {x2 : (x1, x2) in region and window} as maximal closed intervals.
Slice slice(const PlanarRegion& region, double x1, const SliceOptions& opts = {});

enum class EventKind { tangency, corner, end };
const char* to_string(EventKind k);

struct BoundaryEvent {
  double height = 0.0;
  EventKind kind = EventKind::tangency;
  /// Every boundary point found at this height.
  std::vector<Point2> witnesses;
  /// Constraint indices involved; -1 for the window.
  int curve_a = -1;
  int curve_b = -1;
};

struct EventOptions {
  RootOptions roots{};
  double dedup_tol = 1e-9;
  double member_tol = 1e-9;
};

/// Candidate critical heights of x1 on the region: vertical tangencies of the
/// boundary, pairwise corners and end levels. Throws AccumulationSuspected when
/// tangencies crowd an analyticity gap.
std::vector<BoundaryEvent> boundary_events(const PlanarRegion& region,
                                           const EventOptions& opts = {});

/// Distinct event heights after deduplication.
std::vector<double> event_heights(const std::vector<BoundaryEvent>& events);

}  // namespace reebscape
