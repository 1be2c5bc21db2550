#pragma once

#include <vector>

#include "reebscape/numeric.hpp"

namespace reebscape {

/// Dense bivariate polynomial T(s, c), where s and c stand for sin(1/x) and
/// cos(1/x). coeff(a, b) multiplies s^a c^b. Degrees are capped at kMaxDegree
/// in each variable.
class TrigPoly {
 public:
  static constexpr int kMaxDegree = 8;

  TrigPoly() = default;
  /// rows[a][b] is the coefficient of s^a c^b.
  explicit TrigPoly(std::vector<std::vector<double>> rows);
  static TrigPoly constant(double v);

  double coeff(int a, int b) const;
  int s_degree() const { return static_cast<int>(rows_.size()) - 1; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  double operator()(double s, double c) const;
  bool is_zero() const;
  /// True when T does not depend on s or c.
  bool is_constant() const;

  TrigPoly d_ds() const;
  TrigPoly d_dc() const;
  TrigPoly times_s() const;
  TrigPoly times_c() const;
  TrigPoly scaled(double k) const;
  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const { return *this + o.scaled(-1.0); }

 private:
  void trim();
  std::vector<std::vector<double>> rows_;
};

struct SDCRAnTerm {
  int i = 0;
  TrigPoly T;
};

/// f(x) = R e^{-1/x^2} (1/x)^{j0} sum_j (1/x)^{i_j} T_j(sin(1/x), cos(1/x)),
/// f(0) = 0. Flat at 0 and closed under differentiation.
class SDCRAnFn {
 public:
  SDCRAnFn(double R, int j0, std::vector<SDCRAnTerm> terms);

  double R() const { return R_; }
  int j0() const { return j0_; }
  const std::vector<SDCRAnTerm>& terms() const { return terms_; }

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  LogAbs eval_log(double x) const;

  SDCRAnFn derivative() const;
  SDCRAnFn nth_derivative(int n) const;
  SDCRAnFn scaled(double k) const;

  /// True when some T_j depends on sin/cos, i.e. f oscillates near 0.
  bool oscillates() const;

 private:
  double R_;
  int j0_;
  std::vector<SDCRAnTerm> terms_;
};

}  // namespace reebscape
