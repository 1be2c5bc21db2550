#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "reebscape/region.hpp"

namespace reebscape {

/// e(x1, x2, y1, y2) = (f1(x) - |y1|^2, f2(x) - |y2|^2) with y1 in R^m1 and
/// y2 in R^m2. Its zero set is a sphere bundle over {f1 >= 0, f2 >= 0}.
struct SuspensionMap {
  std::function<double(Point2)> f1;
  std::function<double(Point2)> f2;
  int m1 = 1;
  int m2 = 1;
  /// Plane region {f1 >= 0, f2 >= 0} within the sampling window.
  PlanarRegion region;
  /// Plane points where f1 or f2 fails to be real analytic.
  std::vector<Point2> gaps;

  int dim() const { return m1 + m2 + 2; }

  /// f1 and f2 as products of the signed defining functions of the listed
  /// constraints of the region.
  static SuspensionMap from_region(const PlanarRegion& region, std::vector<int> first,
                                   std::vector<int> second, int m1, int m2);
};

std::array<double, 2> eval_map(const SuspensionMap& map, const std::vector<double>& point);

/// n points of the zero set. Plane points are rejection-sampled in the region
/// and fibre points are uniform on the spheres of radii sqrt(f1), sqrt(f2).
/// Sample i depends only on (seed, i).
std::vector<std::vector<double>> sample_zero_set(const SuspensionMap& map, std::size_t n,
                                                 std::uint64_t seed, bool parallel = true);

struct RankReport {
  int rank = 0;
  std::vector<double> singular_values;
  /// A probe would have crossed an analyticity gap and was taken one-sidedly.
  bool gap_probe = false;
};

RankReport jacobian_rank(const SuspensionMap& map, const std::vector<double>& point,
                         double h = 1e-5);

/// Rank of an arbitrary map R^n -> R^2 by the same finite differences.
RankReport jacobian_rank(const std::function<std::array<double, 2>(const std::vector<double>&)>& e,
                         const std::vector<double>& point, double h = 1e-5);

struct ProjectionCount {
  /// Critical contours other than ends.
  int count = 0;
  /// End contours, counted separately.
  int ends = 0;
  std::vector<double> heights;
};

/// Critical contours of the coordinate projection (axis 0: x1, axis 1: x2)
/// restricted to the zero set, read off the region sweep with that axis as height.
ProjectionCount projection_critical_count(const PlanarRegion& region, int axis,
                                          bool periodic = false);

/// Samples as CSV rows x1,x2,y1_1..,y2_1..
std::string samples_csv(const SuspensionMap& map, const std::vector<std::vector<double>>& pts);

}  // namespace reebscape
