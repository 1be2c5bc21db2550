#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace reebscape {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Exponent below which exp() is treated as exact zero.
inline constexpr double kExpUnderflow = -745.0;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }
};

/// A real number carried as sign and natural log of magnitude, so that values
/// far below the double range (e^{-1/x^2} near 0) keep their sign and order.
struct LogAbs {
  int sign = 0;
  double log_abs = -kInf;

  static LogAbs of(double v) {
    if (v == 0.0 || std::isnan(v)) return {};
    return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
  }
  double value() const {
    if (sign == 0 || log_abs < kExpUnderflow) return 0.0;
    return sign * std::exp(log_abs);
  }
  bool is_zero() const { return sign == 0; }
};

inline LogAbs operator*(LogAbs a, LogAbs b) {
  if (a.sign == 0 || b.sign == 0) return {};
  return {a.sign * b.sign, a.log_abs + b.log_abs};
}

/// Sum of two log-represented values.
inline LogAbs log_add(LogAbs a, LogAbs b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.log_abs < b.log_abs) std::swap(a, b);
  double r = std::exp(b.log_abs - a.log_abs);
  double m = a.sign == b.sign ? 1.0 + r : 1.0 - r;
  if (m <= 0.0) return {};
  return {a.sign, a.log_abs + std::log(m)};
}

inline int sign_of(double v) { return (v > 0) - (v < 0); }

/// Sorted unique merge within an absolute tolerance.
inline std::vector<double> sorted_unique(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

}  // namespace reebscape
