#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "reebscape/fn1d.hpp"
#include "reebscape/numeric.hpp"
#include "reebscape/roots.hpp"

namespace reebscape {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Box {
  Interval x1;
  Interval x2;
  bool contains(Point2 p, double tol = 0.0) const {
    return x1.contains(p.x1, tol) && x2.contains(p.x2, tol);
  }
};

/// p -> M p + b on the plane.
struct Affine2 {
  std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};  // row-major
  std::array<double, 2> b{0.0, 0.0};

  static Affine2 identity() { return {}; }
  static Affine2 rotation(double theta);
  static Affine2 translation(double b1, double b2);
  static Affine2 linear(double m00, double m01, double m10, double m11);
  static Affine2 swap_axes() { return linear(0.0, 1.0, 1.0, 0.0); }

  Point2 apply(Point2 p) const;
  Point2 apply_linear(Point2 v) const;
  double det() const { return m[0] * m[3] - m[1] * m[2]; }
  bool is_identity() const;
  Affine2 inverse() const;
  /// (*this) after `inner`.
  Affine2 compose(const Affine2& inner) const;
};

/// x1 = vertex + sign (x2 - centre)^2 around the nearest centre
/// offset + k period.
struct ParabolaChain {
  double offset = 0.0;
  double sign = 1.0;
  double period = 4.0;
  double vertex = -0.5;

  double nearest_center(double x2) const;
  double operator()(double x2) const;
  double slope(double x2) const;
};

/// The locus x1^2 + x2^2 = level.
struct Circle {
  double level = 1.0;
};

/// {(f(t), t)} for t in the parameter window.
struct FnGraph {
  Fn1D f;
  Interval param_window{-kInf, kInf};
};

/// A boundary curve: a primitive in its own coordinates followed by an affine
/// map. Nested transforms are flattened on construction.
class PlaneCurve {
 public:
  using Primitive = std::variant<ParabolaChain, Circle, FnGraph>;

  PlaneCurve(Primitive prim);
  static PlaneCurve transformed(const PlaneCurve& base, const Affine2& map);

  const Primitive& primitive() const { return prim_; }
  const Affine2& map() const { return map_; }
  bool is_transformed() const { return !map_.is_identity(); }

  Point2 point(double t) const;
  Point2 velocity(double t) const;
  /// Sign-preserving dx1/dt.
  LogAbs dx1_log(double t) const;
  /// Sign-preserving x1(t) - h.
  LogAbs height_offset_log(double t, double h) const;

  /// Defining function g: zero on the curve. Positive inside a circle and to
  /// the right (larger x1) of parabola chains and function graphs, in the
  /// primitive's coordinates.
  double side_value(Point2 p) const;
  LogAbs side_log(Point2 p) const;
  Point2 side_gradient(Point2 p) const;

  /// Parameter range covering the part of the curve inside the box.
  Interval param_range(const Box& box) const;
  SeedSet param_seeds(Interval range, int max_seeds) const;
  /// Parameters where the curve's defining function is not real analytic.
  std::vector<double> param_gaps() const;

  /// Height if the curve is a vertical line x1 = const.
  std::optional<double> constant_height() const;

  /// Parameters of the points at height h with x2 in the window.
  RootSet crossings(double h, const Box& window, const RootOptions& opts = {}) const;

  /// Parameter values where dx1/dt changes sign. Throws AccumulationSuspected
  /// when tangencies crowd every dyadic shell around a gap parameter.
  std::vector<double> vertical_tangents(Interval range, const RootOptions& opts = {}) const;

 private:
  PlaneCurve(Primitive prim, Affine2 map) : prim_(std::move(prim)), map_(map) {}
  Point2 base_point(double t) const;
  Point2 base_velocity(double t) const;

  Primitive prim_;
  Affine2 map_;
};

}  // namespace reebscape
