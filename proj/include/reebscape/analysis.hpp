#pragma once

#include <optional>
#include <vector>

#include "reebscape/fn1d.hpp"
#include "reebscape/numeric.hpp"

namespace reebscape {

struct FlatnessOrder {
  int order = 0;
  /// First grid index k (x = 2^{-k}) from which all samples are below tol;
  /// absent when even the last sample violates.
  std::optional<int> k0;
  double max_tail = 0.0;
};

struct FlatnessReport {
  bool pass = false;
  std::vector<FlatnessOrder> orders;
  /// First violating (order, x) when the certificate fails.
  std::optional<int> failing_order;
  std::optional<double> failing_x;
};

/// Checks that derivatives of orders 1..max_order tend to zero along
/// x_k = +-2^{-k}, k = 4..40. max_order must be at most 6.
FlatnessReport flatness_certificate(const Fn1D& f, int max_order, double tol);

/// max |f'| over `density` midpoints of the window, times a safety factor 2.
double sup_abs_derivative(const Fn1D& f, Interval window, int density);

}  // namespace reebscape
