#include "reebscape/analysis.hpp"

#include <cmath>

#include "reebscape/error.hpp"

namespace reebscape {

FlatnessReport flatness_certificate(const Fn1D& f, int max_order, double tol) {
  if (max_order < 1 || max_order > 6) throw Error("flatness_certificate: max_order must be 1..6");
  constexpr int kFirst = 4, kLast = 40;
  FlatnessReport rep;
  rep.pass = true;
  for (int j = 1; j <= max_order; ++j) {
    FlatnessOrder fo;
    fo.order = j;
    std::optional<int> first_bad;
    int last_bad = kFirst - 1;
    for (int k = kFirst; k <= kLast; ++k) {
      const double x = std::ldexp(1.0, -k);
      const double vp = std::fabs(f.derivative(x, j));
      const double vm = std::fabs(f.derivative(-x, j));
      const double v = std::max(vp, vm);
      if (!(v < tol)) {
        last_bad = k;
        if (!first_bad) first_bad = k;
      } else {
        fo.max_tail = std::max(fo.max_tail, v);
      }
    }
    if (last_bad < kLast) {
      fo.k0 = last_bad + 1;
    } else if (rep.pass) {
      rep.pass = false;
      rep.failing_order = j;
      rep.failing_x = std::ldexp(1.0, -*first_bad);
    }
    rep.orders.push_back(fo);
  }
  return rep;
}

double sup_abs_derivative(const Fn1D& f, Interval window, int density) {
  double best = 0.0;
  const int n = std::max(density, 1);
  const double h = window.length() / n;
  for (int k = 0; k < n; ++k) {
    const double x = window.lo + (k + 0.5) * h;
    best = std::max(best, std::fabs(f.derivative(x, 1)));
  }
  return 2.0 * best;
}

}  // namespace reebscape
