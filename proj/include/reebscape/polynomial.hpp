#pragma once

#include <vector>

#include "reebscape/numeric.hpp"

namespace reebscape {

/// Univariate real polynomial, coefficients in ascending order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  static Polynomial constant(double c) { return Polynomial({c}); }

  const std::vector<double>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }

  double operator()(double x) const;
  Polynomial derivative() const;

  /// Evaluates at an argument given in log form. When the argument is far
  /// below the double range, the lowest-order nonzero term dominates.
  LogAbs eval_log(LogAbs t) const;

 private:
  std::vector<double> coeffs_;
};

}  // namespace reebscape
