#include "reebscape/polynomial.hpp"

#include <cmath>

namespace reebscape {

Polynomial::Polynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = k * coeffs_[k];
  return Polynomial(std::move(d));
}

LogAbs Polynomial::eval_log(LogAbs t) const {
  if (t.sign == 0) return LogAbs::of(coeffs_[0]);
  if (t.log_abs > -700.0) return LogAbs::of((*this)(t.value()));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0.0) continue;
    int s = coeffs_[k] > 0 ? 1 : -1;
    if (k % 2 == 1) s *= t.sign;
    return {s, std::log(std::fabs(coeffs_[k])) + static_cast<double>(k) * t.log_abs};
  }
  return {};
}

}  // namespace reebscape
