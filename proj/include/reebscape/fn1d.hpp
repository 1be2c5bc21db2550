#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "reebscape/numeric.hpp"
#include "reebscape/polynomial.hpp"
#include "reebscape/sdcran.hpp"

namespace reebscape {

class Fn1D;

/// 0 for x <= 0, e^{-1/x} for x > 0.
struct ExampleOne {};

struct Composition {
  Polynomial outer;
  std::shared_ptr<const Fn1D> inner;
};

/// Pieces joined by C-infinity blends: piece k is active on [breaks[k-1],
/// breaks[k]], and adjacent pieces are mixed over a window of the given width
/// centred at each break.
struct PiecewiseBlend {
  std::vector<Fn1D> pieces;
  std::vector<double> breaks;
  double width = 0.1;
};

/// Oscillation seeds for root and extremum isolation near an analyticity gap.
struct SeedSet {
  std::vector<double> points;
  /// Open neighbourhoods of gap points below the seed resolution.
  std::vector<Interval> unresolved;
};

/// A real function of one variable from the families used to build boundary
/// curves. Values are immutable.
class Fn1D {
 public:
  using Variant =
      std::variant<Polynomial, SDCRAnFn, Composition, ExampleOne, PiecewiseBlend>;

  Fn1D(Polynomial p);
  Fn1D(SDCRAnFn f);
  Fn1D(ExampleOne e);
  Fn1D(Composition c);
  Fn1D(PiecewiseBlend b);

  static Fn1D compose(Polynomial outer, Fn1D inner);

  const Variant& variant() const { return v_; }

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  /// Sign-preserving evaluation that survives underflow of flat factors.
  LogAbs eval_log(double x) const;

  /// f^{(k)}(x), k = 0..order.
  std::vector<double> derivatives(double x, int order) const;
  double derivative(double x, int order = 1) const {
    return derivatives(x, order)[order];
  }
  /// Sign-preserving first derivative.
  LogAbs slope_log(double x) const;

  /// Points where the function is not real analytic.
  std::vector<double> analyticity_gap() const;
  bool is_dran() const;
  bool is_dcran() const;
  bool is_constant() const;

  /// Extra grid points resolving oscillation near gaps in [lo, hi].
  SeedSet oscillation_seeds(double lo, double hi, int max_seeds) const;

 private:
  Variant v_;
  std::shared_ptr<const SDCRAnFn> slope_;  // precomputed for the SDCRAn case
};

}  // namespace reebscape
