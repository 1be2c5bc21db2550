#pragma once

#include <functional>
#include <vector>

#include "reebscape/fn1d.hpp"
#include "reebscape/numeric.hpp"

namespace reebscape {

struct RootOptions {
  double tol = 1e-12;
  /// Uniform samples across the bracket, in addition to oscillation seeds.
  int density = 2048;
  /// Seed budget per side of each analyticity gap.
  int max_seeds = 4096;
  /// Also report touching roots (local minima of |g| that reach zero).
  bool tangential = true;
};

/// A scalar function presented for root isolation. `value` and `slope` return
/// sign-preserving values so that flat factors do not erase sign structure.
struct ScalarProbe {
  std::function<LogAbs(double)> value;
  std::function<LogAbs(double)> slope;  // may be empty
  std::vector<double> seeds;
  std::vector<Interval> unresolved;
};

struct RootSet {
  std::vector<double> roots;
  /// Parts of the bracket where roots accumulate beyond the seed budget.
  std::vector<Interval> unresolved;
};

/// Sign-change and touching-root isolation on a seeded grid, refined by
/// bisection to machine precision.
RootSet isolate_roots(const ScalarProbe& probe, Interval bracket,
                      const RootOptions& opts = {});

/// Sorted roots of f(x) = target on the bracket.
std::vector<double> roots_in_interval(const Fn1D& f, double target, Interval bracket,
                                      const RootOptions& opts = {});

/// Same as roots_in_interval, also reporting unresolved accumulation zones.
RootSet root_set_in_interval(const Fn1D& f, double target, Interval bracket,
                             const RootOptions& opts = {});

/// Bisection on a sign function; `lo` and `hi` must carry opposite signs.
double bisect_sign(const std::function<int(double)>& sign, double lo, double hi,
                   double tol = 0.0);

}  // namespace reebscape
