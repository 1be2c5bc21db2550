#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "reebscape/analysis.hpp"
#include "reebscape/curve.hpp"
#include "reebscape/roots.hpp"
#include "reebscape/scenario.hpp"

using namespace reebscape;

namespace {

const TrigPoly kSinSq(std::vector<std::vector<double>>{{0.0}, {0.0}, {1.0}});

// e^{-1/x^2} sin^2(1/x)
SDCRAnFn flat_sine() { return SDCRAnFn(1.0, 0, {{0, kSinSq}}); }

// Central difference of g at x, Richardson-extrapolated from steps h and h/2.
double richardson(const std::function<double(double)>& g, double x, double h) {
  auto d = [&](double s) { return (g(x + s) - g(x - s)) / (2.0 * s); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

bool rel_close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

TEST_CASE("flat sine evaluates by the closed form") {
  const SDCRAnFn f = flat_sine();
  CHECK(f.eval(0.0) == 0.0);
  CHECK(std::fabs(f.eval(1.0 / kPi)) < 1e-20);
  // sin(pi/2) = 1, so the value is e^{-pi^2/4}.
  const long double expect = std::exp(-(long double)kPi * kPi / 4.0L);
  CHECK(f.eval(2.0 / kPi) == doctest::Approx(static_cast<double>(expect)).epsilon(1e-13));
  // Far below the double range the value is exactly zero, never NaN.
  CHECK(f.eval(1e-3) == 0.0);
  CHECK(f.eval_log(1e-3).sign == 1);
}

TEST_CASE("derivative of e^{-1/x^2} is 2 x^{-3} e^{-1/x^2}") {
  const SDCRAnFn g(1.0, 0, {{0, TrigPoly::constant(1.0)}});
  const SDCRAnFn d = g.derivative();
  for (double x : {0.3, 0.7, 1.5}) {
    const double closed = 2.0 * std::exp(-1.0 / (x * x)) / (x * x * x);
    CHECK(rel_close(d.eval(x), closed, 1e-12));
    CHECK(rel_close(d.eval(x), richardson([&](double t) { return g.eval(t); }, x, 1e-3), 1e-6));
  }
  CHECK(d.eval(0.0) == 0.0);
}

TEST_CASE("derivative is linear and vanishes at 0") {
  const Fn1D c0 = make_c0(1.0, 0.01);
  for (int k = 1; k <= 4; ++k) CHECK(c0.derivative(0.0, k) == 0.0);
  const SDCRAnFn f = flat_sine();
  CHECK(rel_close(f.scaled(2.0).derivative().eval(0.5), 2.0 * f.derivative().eval(0.5), 1e-14));
  CHECK_THROWS(SDCRAnFn(0.0, 0, {{0, kSinSq}}));
}

TEST_CASE("derivative closure matches finite differences up to order 4") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  const std::vector<SDCRAnFn> family{
      flat_sine(),
      SDCRAnFn(0.5, 1, {{0, TrigPoly(std::vector<std::vector<double>>{{0.0, 1.0}, {2.0}})},
                        {2, TrigPoly::constant(-1.0)}}),
      SDCRAnFn(-3.0, 2, {{1, TrigPoly(std::vector<std::vector<double>>{{1.0, 0.0, 1.0}})}})};
  for (const SDCRAnFn& f : family) {
    for (int k = 1; k <= 4; ++k) {
      const SDCRAnFn lower = f.nth_derivative(k - 1);
      const SDCRAnFn dk = f.nth_derivative(k);
      for (int i = 0; i < 20; ++i) {
        const double x = u(rng);
        const double fd = richardson([&](double t) { return lower.eval(t); }, x, 1e-3);
        const double sym = dk.eval(x);
        CHECK(std::fabs(sym - fd) <= 1e-5 * std::max(std::fabs(sym), 1e-3));
      }
    }
  }
}

TEST_CASE("flatness certificate") {
  SUBCASE("flat sine to order 4") {
    const FlatnessReport r = flatness_certificate(Fn1D(flat_sine()), 4, 1e-8);
    CHECK(r.pass);
    CHECK(r.orders.size() == 4);
  }
  SUBCASE("e^{-1/x} from the right") { CHECK(flatness_certificate(Fn1D(ExampleOne{}), 3, 1e-8).pass); }
  SUBCASE("x^2 fails at order 2") {
    const FlatnessReport r = flatness_certificate(Fn1D(Polynomial({0.0, 0.0, 1.0})), 2, 1e-8);
    CHECK_FALSE(r.pass);
    REQUIRE(r.failing_order.has_value());
    CHECK(*r.failing_order == 2);
  }
}

TEST_CASE("derivatives are dominated by e^{-1/(2x^2)} near 0") {
  const SDCRAnFn f = flat_sine();
  for (int k = 0; k <= 4; ++k) {
    const SDCRAnFn d = f.nth_derivative(k);
    // log of |f^(k)(x)| / e^{-1/(2x^2)} on a geometric grid: bounded above
    // (the constant C is its maximum) and falling toward 0.
    std::vector<double> ratio;
    for (double x = 0.1; x > 0.01; x *= 0.8) {
      const LogAbs v = d.eval_log(x);
      ratio.push_back(v.sign == 0 ? -kInf : v.log_abs + 1.0 / (2.0 * x * x));
    }
    const double log_c = *std::max_element(ratio.begin(), ratio.end());
    CHECK(std::isfinite(log_c));
    CHECK(ratio.back() < ratio.front());
  }
}

TEST_CASE("function families") {
  const Fn1D c0 = make_c0(1.0, 0.01);
  const SDCRAnFn s(0.01, 0, {{0, kSinSq}});
  for (double x : {-0.7, 0.2, 0.45, 1.0}) {
    const double sv = s.eval(x);
    CHECK(c0.eval(x) == doctest::Approx(sv * (1.0 - sv)).epsilon(1e-14));
  }
  CHECK(Fn1D(flat_sine()).analyticity_gap() == std::vector<double>{0.0});
  CHECK(Fn1D(ExampleOne{}).analyticity_gap() == std::vector<double>{0.0});
  CHECK(Fn1D(Polynomial({1.0, 2.0})).analyticity_gap().empty());
  CHECK(Fn1D(ExampleOne{}).eval(-1.0) == 0.0);
  CHECK(Fn1D(ExampleOne{}).eval(0.5) == doctest::Approx(std::exp(-2.0)));
  CHECK(Fn1D(flat_sine()).is_dran());
}

TEST_CASE("roots of the vertex parabola, c0 and the identity") {
  const auto r = roots_in_interval(Fn1D(Polynomial({-0.5, 0.0, 1.0})), 0.0, {-2.0, 2.0});
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  const Fn1D c0 = make_c0(1.0, 0.01);
  const double eps = 1e-3;
  const auto z = roots_in_interval(c0, 0.0, {1.0 / (5.0 * kPi) - eps, 1.0 / kPi + eps});
  REQUIRE(z.size() == 5);
  for (int k = 1; k <= 5; ++k) {
    // Ascending order: the k-th root from the right is 1/(k pi).
    CHECK(z[static_cast<std::size_t>(5 - k)] == doctest::Approx(1.0 / (k * kPi)).epsilon(1e-12));
  }

  const auto id = roots_in_interval(Fn1D(Polynomial({0.0, 1.0})), 0.0, {-1.0, 1.0});
  REQUIRE(id.size() == 1);
  CHECK(std::fabs(id[0]) < 1e-12);
}

TEST_CASE("root sets only grow under grid refinement") {
  const Fn1D c0 = make_c0(1.0, 0.01);
  const Interval br{0.05, 1.0};
  RootOptions coarse;
  coarse.density = 512;
  RootOptions fine = coarse;
  fine.density = 1024;
  const auto a = roots_in_interval(c0, 1e-4, br, coarse);
  const auto b = roots_in_interval(c0, 1e-4, br, fine);
  for (double x : a) {
    bool found = false;
    for (double y : b) found = found || std::fabs(x - y) < 1e-9;
    CHECK(found);
  }
}

TEST_CASE("vertical tangents") {
  SUBCASE("parabola vertex") {
    const PlaneCurve p(FnGraph{Fn1D(Polynomial({-0.5, 0.0, 1.0}))});
    const auto t = p.vertical_tangents({-2.0, 2.0});
    REQUIRE(t.size() == 1);
    CHECK(std::fabs(t[0]) < 1e-9);
  }
  SUBCASE("c0 graph between 1/(3 pi) and 1/pi agrees with a grid count of sign changes") {
    const Fn1D c0 = make_c0(1.0, 0.01);
    const Interval w{1.0 / (3.0 * kPi), 1.0 / kPi};
    int changes = 0;
    int prev = 0;
    const int n = 10000;
    for (int i = 1; i < n; ++i) {  // interior grid points only
      const int sg = c0.slope_log(w.lo + w.length() * i / n).sign;
      if (sg != 0 && prev != 0 && sg != prev) ++changes;
      if (sg != 0) prev = sg;
    }
    const auto t = PlaneCurve(FnGraph{c0}).vertical_tangents(w);
    CHECK(static_cast<int>(t.size()) == changes);
    for (double x : t) CHECK(std::fabs(c0.derivative(x)) < 1e-12);
  }
  SUBCASE("rotation steeper than twice the slope removes all tangents") {
    const Fn1D c0 = make_c0(1.0, 0.01);
    const double theta = auto_theta(c0, {0.0, 1.0});
    const PlaneCurve rot = PlaneCurve::transformed(PlaneCurve(FnGraph{c0}), Affine2::rotation(theta));
    CHECK(rot.vertical_tangents({1e-3, 1.0 / kPi}).empty());
    // Oracle: dx1/dp = c0' cos(theta) - sin(theta) stays negative on a grid.
    for (int i = 0; i <= 2000; ++i) {
      const double x = 1e-3 + (1.0 / kPi - 1e-3) * i / 2000.0;
      CHECK(c0.derivative(x) * std::cos(theta) - std::sin(theta) < 0.0);
    }
  }
}

TEST_CASE("sup of |f'| with safety factor") {
  const double sq = sup_abs_derivative(Fn1D(Polynomial({0.0, 0.0, 1.0})), {0.0, 1.0}, 1000);
  CHECK(sq >= 2.0);
  CHECK(sq <= 4.0);
  CHECK(sup_abs_derivative(Fn1D(Polynomial({3.0})), {0.0, 1.0}, 100) == 0.0);
  const double a = sup_abs_derivative(make_c0(1.0, 0.01), {0.0, 1.0}, 100000);
  const double b = sup_abs_derivative(make_c0(1.0, 0.001), {0.0, 1.0}, 100000);
  CHECK(std::isfinite(a));
  CHECK(a > 0.0);
  CHECK(a / b == doctest::Approx(10.0).epsilon(0.02));
}

TEST_CASE("affine maps round trip") {
  const Affine2 m{{0.8, -0.3, 0.25, 1.1}, {0.4, -2.0}};
  const Affine2 inv = m.inverse();
  const PlaneCurve base(FnGraph{make_c0(1.0, 0.01)});
  const PlaneCurve there = PlaneCurve::transformed(base, m);
  const PlaneCurve back = PlaneCurve::transformed(there, inv);
  for (int i = 0; i < 100; ++i) {
    const double t = -1.0 + 2.0 * i / 99.0;
    const Point2 p = base.point(t), q = back.point(t);
    CHECK(std::fabs(p.x1 - q.x1) < 1e-12);
    CHECK(std::fabs(p.x2 - q.x2) < 1e-12);
    const Point2 r = inv.apply(m.apply(p));
    CHECK(std::fabs(r.x1 - p.x1) < 1e-12);
  }
  const Point2 rp = Affine2::rotation(kPi / 2).apply({1.0, 0.0});
  CHECK(std::fabs(rp.x1) < 1e-15);
  CHECK(rp.x2 == doctest::Approx(1.0));
}
