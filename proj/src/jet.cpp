#include "reebscape/jet.hpp"

#include <stdexcept>

namespace reebscape {

Jet::Jet(std::size_t order, double value) : c_(order + 1, 0.0) { c_[0] = value; }

Jet Jet::variable(std::size_t order, double x0) {
  Jet j(order, x0);
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Jet Jet::from_derivatives(const std::vector<double>& derivs) {
  Jet j(derivs.size() - 1);
  double fact = 1.0;
  for (std::size_t k = 0; k < derivs.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    j.c_[k] = derivs[k] / fact;
  }
  return j;
}

std::vector<double> Jet::derivatives() const {
  std::vector<double> d(c_.size());
  double fact = 1.0;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    d[k] = c_[k] * fact;
  }
  return d;
}

Jet& Jet::operator+=(const Jet& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
    r.c_[k] = acc;
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  if (b.c_[0] == 0.0) throw std::domain_error("jet division by zero");
  Jet r(a.order());
  for (std::size_t k = 0; k <= a.order(); ++k) {
    double acc = a.c_[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= b.c_[j] * r.c_[k - j];
    r.c_[k] = acc / b.c_[0];
  }
  return r;
}

Jet compose(const Polynomial& outer, const Jet& inner) {
  const auto& a = outer.coefficients();
  Jet acc(inner.order(), a.back());
  for (auto it = a.rbegin() + 1; it != a.rend(); ++it) {
    acc = acc * inner;
    acc[0] += *it;
  }
  return acc;
}

}  // namespace reebscape
