#pragma once

#include <cstddef>
#include <vector>

#include "reebscape/polynomial.hpp"

namespace reebscape {

/// Truncated Taylor expansion: c[k] = f^{(k)}(x0) / k!.
class Jet {
 public:
  explicit Jet(std::size_t order, double value = 0.0);
  static Jet variable(std::size_t order, double x0);
  static Jet from_derivatives(const std::vector<double>& derivs);

  std::size_t order() const { return c_.size() - 1; }
  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }

  /// f^{(k)}(x0) for k = 0..order.
  std::vector<double> derivatives() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

 private:
  std::vector<double> c_;
};

/// outer(inner) in jet arithmetic.
Jet compose(const Polynomial& outer, const Jet& inner);

}  // namespace reebscape
