#include "reebscape/curve.hpp"

#include <algorithm>
#include <cmath>

#include "reebscape/error.hpp"

namespace reebscape {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

LogAbs negated(LogAbs v) { return {-v.sign, v.log_abs}; }

constexpr int kAccumulationShells = 5;

}  // namespace

Affine2 Affine2::rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return linear(c, -s, s, c);
}

Affine2 Affine2::translation(double b1, double b2) {
  Affine2 a;
  a.b = {b1, b2};
  return a;
}

Affine2 Affine2::linear(double m00, double m01, double m10, double m11) {
  Affine2 a;
  a.m = {m00, m01, m10, m11};
  return a;
}

Point2 Affine2::apply(Point2 p) const {
  return {m[0] * p.x1 + m[1] * p.x2 + b[0], m[2] * p.x1 + m[3] * p.x2 + b[1]};
}

Point2 Affine2::apply_linear(Point2 v) const {
  return {m[0] * v.x1 + m[1] * v.x2, m[2] * v.x1 + m[3] * v.x2};
}

bool Affine2::is_identity() const {
  return m == std::array<double, 4>{1.0, 0.0, 0.0, 1.0} && b[0] == 0.0 && b[1] == 0.0;
}

Affine2 Affine2::inverse() const {
  const double d = det();
  if (d == 0.0) throw Error("Affine2: map is not invertible");
  Affine2 inv = linear(m[3] / d, -m[1] / d, -m[2] / d, m[0] / d);
  Point2 nb = inv.apply_linear({b[0], b[1]});
  inv.b = {-nb.x1, -nb.x2};
  return inv;
}

Affine2 Affine2::compose(const Affine2& inner) const {
  Affine2 r = linear(m[0] * inner.m[0] + m[1] * inner.m[2], m[0] * inner.m[1] + m[1] * inner.m[3],
                     m[2] * inner.m[0] + m[3] * inner.m[2], m[2] * inner.m[1] + m[3] * inner.m[3]);
  Point2 nb = apply({inner.b[0], inner.b[1]});
  r.b = {nb.x1, nb.x2};
  return r;
}

double ParabolaChain::nearest_center(double x2) const {
  return offset + period * std::round((x2 - offset) / period);
}

double ParabolaChain::operator()(double x2) const {
  const double d = x2 - nearest_center(x2);
  return vertex + sign * d * d;
}

double ParabolaChain::slope(double x2) const { return 2.0 * sign * (x2 - nearest_center(x2)); }

PlaneCurve::PlaneCurve(Primitive prim) : prim_(std::move(prim)) {
  if (auto c = std::get_if<Circle>(&prim_); c && !(c->level > 0.0))
    throw Error("Circle: level must be positive");
  if (auto p = std::get_if<ParabolaChain>(&prim_); p && !(p->period > 0.0 && p->sign != 0.0))
    throw Error("ParabolaChain: need positive period and nonzero sign");
}

PlaneCurve PlaneCurve::transformed(const PlaneCurve& base, const Affine2& map) {
  (void)map.inverse();  // rejects singular maps
  return PlaneCurve(base.prim_, map.compose(base.map_));
}

Point2 PlaneCurve::base_point(double t) const {
  return std::visit(overloaded{
                        [&](const ParabolaChain& p) { return Point2{p(t), t}; },
                        [&](const Circle& c) {
                          const double r = std::sqrt(c.level);
                          return Point2{r * std::cos(t), r * std::sin(t)};
                        },
                        [&](const FnGraph& g) { return Point2{g.f(t), t}; },
                    },
                    prim_);
}

Point2 PlaneCurve::base_velocity(double t) const {
  return std::visit(overloaded{
                        [&](const ParabolaChain& p) { return Point2{p.slope(t), 1.0}; },
                        [&](const Circle& c) {
                          const double r = std::sqrt(c.level);
                          return Point2{-r * std::sin(t), r * std::cos(t)};
                        },
                        [&](const FnGraph& g) { return Point2{g.f.derivative(t, 1), 1.0}; },
                    },
                    prim_);
}

Point2 PlaneCurve::point(double t) const { return map_.apply(base_point(t)); }

Point2 PlaneCurve::velocity(double t) const { return map_.apply_linear(base_velocity(t)); }

LogAbs PlaneCurve::dx1_log(double t) const {
  if (auto g = std::get_if<FnGraph>(&prim_)) {
    return log_add(LogAbs::of(map_.m[0]) * g->f.slope_log(t), LogAbs::of(map_.m[1]));
  }
  return LogAbs::of(velocity(t).x1);
}

LogAbs PlaneCurve::height_offset_log(double t, double h) const {
  if (auto g = std::get_if<FnGraph>(&prim_)) {
    return log_add(LogAbs::of(map_.m[0]) * g->f.eval_log(t),
                   LogAbs::of(map_.m[1] * t + map_.b[0] - h));
  }
  return LogAbs::of(point(t).x1 - h);
}

double PlaneCurve::side_value(Point2 p) const {
  const Point2 q = map_.is_identity() ? p : map_.inverse().apply(p);
  return std::visit(overloaded{
                        [&](const ParabolaChain& c) { return q.x1 - c(q.x2); },
                        [&](const Circle& c) { return c.level - q.x1 * q.x1 - q.x2 * q.x2; },
                        [&](const FnGraph& g) { return q.x1 - g.f(q.x2); },
                    },
                    prim_);
}

LogAbs PlaneCurve::side_log(Point2 p) const {
  if (auto g = std::get_if<FnGraph>(&prim_)) {
    const Point2 q = map_.is_identity() ? p : map_.inverse().apply(p);
    return log_add(LogAbs::of(q.x1), negated(g->f.eval_log(q.x2)));
  }
  return LogAbs::of(side_value(p));
}

Point2 PlaneCurve::side_gradient(Point2 p) const {
  const Affine2 inv = map_.inverse();
  const Point2 q = inv.apply(p);
  const Point2 gq = std::visit(
      overloaded{
          [&](const ParabolaChain& c) { return Point2{1.0, -c.slope(q.x2)}; },
          [&](const Circle&) { return Point2{-2.0 * q.x1, -2.0 * q.x2}; },
          [&](const FnGraph& g) { return Point2{1.0, -g.f.derivative(q.x2, 1)}; },
      },
      prim_);
  return {inv.m[0] * gq.x1 + inv.m[2] * gq.x2, inv.m[1] * gq.x1 + inv.m[3] * gq.x2};
}

Interval PlaneCurve::param_range(const Box& box) const {
  if (std::holds_alternative<Circle>(prim_)) return {-kPi, kPi};
  const Affine2 inv = map_.inverse();
  double lo = kInf, hi = -kInf;
  for (double a : {box.x1.lo, box.x1.hi}) {
    for (double b : {box.x2.lo, box.x2.hi}) {
      const double q2 = inv.apply({a, b}).x2;
      lo = std::min(lo, q2);
      hi = std::max(hi, q2);
    }
  }
  if (auto g = std::get_if<FnGraph>(&prim_)) {
    lo = std::max(lo, g->param_window.lo);
    hi = std::min(hi, g->param_window.hi);
  }
  return {lo, hi};
}

SeedSet PlaneCurve::param_seeds(Interval range, int max_seeds) const {
  return std::visit(overloaded{
                        [&](const FnGraph& g) {
                          return g.f.oscillation_seeds(range.lo, range.hi, max_seeds);
                        },
                        [&](const ParabolaChain& p) {
                          SeedSet s;
                          const double step = 0.5 * p.period;
                          for (double x = p.offset + step * std::floor((range.lo - p.offset) / step);
                               x <= range.hi; x += step)
                            s.points.push_back(x);
                          return s;
                        },
                        [&](const Circle&) {
                          SeedSet s;
                          for (int k = -4; k <= 4; ++k) s.points.push_back(k * kPi / 2);
                          return s;
                        },
                    },
                    prim_);
}

std::vector<double> PlaneCurve::param_gaps() const {
  if (auto g = std::get_if<FnGraph>(&prim_)) return g->f.analyticity_gap();
  return {};
}

std::optional<double> PlaneCurve::constant_height() const {
  auto g = std::get_if<FnGraph>(&prim_);
  if (g == nullptr || !g->f.is_constant() || map_.m[1] != 0.0) return std::nullopt;
  return map_.m[0] * g->f(0.0) + map_.b[0];
}

RootSet PlaneCurve::crossings(double h, const Box& window, const RootOptions& opts) const {
  const Interval range = param_range(window);
  RootSet out;
  auto keep = [&](double t) {
    if (t < range.lo || t > range.hi) return;
    if (window.x2.contains(point(t).x2)) out.roots.push_back(t);
  };
  if (auto c = std::get_if<Circle>(&prim_)) {
    const double r = std::sqrt(c->level);
    const double rho = r * std::hypot(map_.m[0], map_.m[1]);
    const double phi = std::atan2(map_.m[1], map_.m[0]);
    const double a = (h - map_.b[0]) / rho;
    if (std::fabs(a) > 1.0) return out;
    const double ac = std::acos(a);
    for (double t : {phi + ac, phi - ac}) {
      t = std::remainder(t, 2.0 * kPi);
      keep(t);
    }
    out.roots = sorted_unique(std::move(out.roots), 0.0);
    return out;
  }
  if (auto p = std::get_if<ParabolaChain>(&prim_)) {
    // A00 (vertex + s d^2) + A01 (c + d) + b0 = h per cell centre c.
    const double qa = map_.m[0] * p->sign;
    const double qb = map_.m[1];
    const double half = 0.5 * p->period;
    for (double cj = p->nearest_center(range.lo) - p->period; cj <= range.hi + p->period;
         cj += p->period) {
      const double qc = map_.m[0] * p->vertex + map_.m[1] * cj + map_.b[0] - h;
      std::vector<double> ds;
      if (qa == 0.0) {
        if (qb != 0.0) ds.push_back(-qc / qb);
      } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
          const double sq = std::sqrt(disc);
          ds.push_back((-qb + sq) / (2.0 * qa));
          if (sq > 0.0) ds.push_back((-qb - sq) / (2.0 * qa));
        }
      }
      for (double d : ds) {
        if (std::fabs(d) <= half) keep(cj + d);
      }
    }
    out.roots = sorted_unique(std::move(out.roots), 0.0);
    return out;
  }
  ScalarProbe probe;
  probe.value = [this, h](double t) { return height_offset_log(t, h); };
  probe.slope = [this](double t) { return dx1_log(t); };
  SeedSet seeds = param_seeds(range, opts.max_seeds);
  probe.seeds = std::move(seeds.points);
  probe.unresolved = std::move(seeds.unresolved);
  RootSet rs = isolate_roots(probe, range, opts);
  for (double t : rs.roots) keep(t);
  out.unresolved = std::move(rs.unresolved);
  return out;
}

std::vector<double> PlaneCurve::vertical_tangents(Interval range, const RootOptions& opts) const {
  std::vector<double> ts;
  if (auto c = std::get_if<Circle>(&prim_)) {
    (void)c;
    const double phi = std::atan2(map_.m[1], map_.m[0]);
    for (int k = -3; k <= 3; ++k) {
      const double t = phi + k * kPi;
      if (t >= range.lo && t < range.hi) ts.push_back(t);
    }
    return sorted_unique(std::move(ts), 0.0);
  }
  if (auto p = std::get_if<ParabolaChain>(&prim_)) {
    if (map_.m[0] == 0.0) return ts;
    const double d = -map_.m[1] / (2.0 * p->sign * map_.m[0]);
    if (std::fabs(d) > 0.5 * p->period) return ts;
    for (double cj = p->nearest_center(range.lo) - p->period; cj <= range.hi + p->period;
         cj += p->period) {
      if (cj + d >= range.lo && cj + d <= range.hi) ts.push_back(cj + d);
    }
    return ts;
  }
  if (constant_height()) return ts;

  ScalarProbe probe;
  probe.value = [this](double t) { return dx1_log(t); };
  SeedSet seeds = param_seeds(range, opts.max_seeds);
  probe.seeds = std::move(seeds.points);
  probe.unresolved = std::move(seeds.unresolved);
  RootOptions o = opts;
  o.tangential = false;
  for (double t : isolate_roots(probe, range, o).roots) {
    // Only interior sign changes count; range ends belong to the caller's window.
    const double edge = 1e-12 * std::max(1.0, std::fabs(t));
    if (t - range.lo > edge && range.hi - t > edge) ts.push_back(t);
  }

  for (double g : param_gaps()) {
    if (!(g > range.lo && g < range.hi)) continue;
    const double r = std::min(g - range.lo, range.hi - g);
    std::array<int, kAccumulationShells> counts{};
    for (double t : ts) {
      const double d = std::fabs(t - g);
      for (int k = 0; k < kAccumulationShells; ++k) {
        if (d <= std::ldexp(r, -k) && d >= std::ldexp(r, -k - 1)) ++counts[k];
      }
    }
    const bool crowded = std::all_of(counts.begin(), counts.end(), [](int n) { return n > 0; }) &&
                         counts.back() >= counts.front();
    if (crowded) {
      const Point2 f = point(g);
      throw AccumulationSuspected("vertical tangencies accumulate at a gap point", f.x1, f.x2,
                                  kAccumulationShells);
    }
  }
  return ts;
}

}  // namespace reebscape
