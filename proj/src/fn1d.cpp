#include "reebscape/fn1d.hpp"

#include <cmath>
#include <optional>

#include "reebscape/error.hpp"
#include "reebscape/jet.hpp"

namespace reebscape {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Derivatives of e^{-1/x}: f^{(k)} = e^{-u} Q_k(u), u = 1/x, with
// Q_{k+1}(u) = u^2 (Q_k(u) - Q_k'(u)).
std::vector<double> example_one_derivatives(double x, int order) {
  std::vector<double> d(order + 1, 0.0);
  if (x <= 0.0) return d;
  const double u = 1.0 / x;
  const double e = std::exp(-u);
  if (e == 0.0) return d;
  Polynomial q({1.0});
  const Polynomial u2({0.0, 0.0, 1.0});
  for (int k = 0; k <= order; ++k) {
    d[k] = e * q(u);
    auto diff = q.coefficients();
    auto dq = q.derivative().coefficients();
    for (std::size_t i = 0; i < dq.size(); ++i) diff[i] -= dq[i];
    std::vector<double> next(diff.size() + 2, 0.0);
    for (std::size_t i = 0; i < diff.size(); ++i) next[i + 2] = diff[i];
    q = Polynomial(std::move(next));
  }
  return d;
}

struct BlendSpot {
  int piece = 0;      // active piece (left piece when blending)
  bool blending = false;
  double t = 0.0;     // position inside the blend window, in [0, 1]
};

BlendSpot locate(const PiecewiseBlend& b, double x) {
  const double half = 0.5 * b.width;
  for (std::size_t k = 0; k < b.breaks.size(); ++k) {
    if (x < b.breaks[k] - half) return {static_cast<int>(k), false, 0.0};
    if (x <= b.breaks[k] + half)
      return {static_cast<int>(k), true, (x - (b.breaks[k] - half)) / b.width};
  }
  return {static_cast<int>(b.breaks.size()), false, 0.0};
}

void append_seeds_side(double xmin, double xmax, double sign, int max_seeds,
                       std::vector<double>& pts, double& innermost) {
  // Seeds sit on the zeros and quarter points of sin(1/x), cos(1/x), with a
  // pair of near neighbours around each zero so that extrema lying exactly on
  // a seed are bracketed.
  constexpr double kEta = 1e-9;
  const double umin = 1.0 / xmax;
  long k = static_cast<long>(std::floor(umin / (kPi / 2))) + 1;
  int count = 0;
  innermost = xmax;
  for (;; ++k) {
    const double u = k * (kPi / 2);
    const double x = 1.0 / u;
    if (x < xmin) {
      innermost = xmin;
      return;
    }
    if (count >= max_seeds) return;
    pts.push_back(sign * x);
    pts.push_back(sign / (u * (1.0 + kEta)));
    pts.push_back(sign / (u * (1.0 - kEta)));
    const double q = 1.0 / (u + kPi / 4);
    if (q >= xmin) pts.push_back(sign * q);
    innermost = x;
    count += 4;
  }
}

}  // namespace

Fn1D::Fn1D(Polynomial p) : v_(std::move(p)) {}
Fn1D::Fn1D(SDCRAnFn f)
    : v_(f), slope_(std::make_shared<const SDCRAnFn>(f.derivative())) {}
Fn1D::Fn1D(ExampleOne e) : v_(e) {}
Fn1D::Fn1D(Composition c) : v_(std::move(c)) {
  if (!std::get<Composition>(v_).inner) throw Error("Composition: missing inner");
}
Fn1D::Fn1D(PiecewiseBlend b) : v_(std::move(b)) {
  const auto& pb = std::get<PiecewiseBlend>(v_);
  if (pb.pieces.size() != pb.breaks.size() + 1 || pb.pieces.empty())
    throw Error("PiecewiseBlend: need one more piece than breaks");
  if (!(pb.width > 0.0)) throw Error("PiecewiseBlend: width must be positive");
  for (std::size_t k = 1; k < pb.breaks.size(); ++k) {
    if (pb.breaks[k] - pb.breaks[k - 1] <= pb.width)
      throw Error("PiecewiseBlend: blend windows overlap");
  }
}

Fn1D Fn1D::compose(Polynomial outer, Fn1D inner) {
  return Fn1D(Composition{std::move(outer), std::make_shared<const Fn1D>(std::move(inner))});
}

double Fn1D::eval(double x) const {
  return std::visit(
      overloaded{
          [&](const Polynomial& p) { return p(x); },
          [&](const SDCRAnFn& f) { return f.eval(x); },
          [&](const Composition& c) { return c.outer(c.inner->eval(x)); },
          [&](const ExampleOne&) { return x <= 0.0 ? 0.0 : std::exp(-1.0 / x); },
          [&](const PiecewiseBlend&) { return derivatives(x, 0)[0]; },
      },
      v_);
}

LogAbs Fn1D::eval_log(double x) const {
  return std::visit(
      overloaded{
          [&](const Polynomial& p) { return LogAbs::of(p(x)); },
          [&](const SDCRAnFn& f) { return f.eval_log(x); },
          [&](const Composition& c) { return c.outer.eval_log(c.inner->eval_log(x)); },
          [&](const ExampleOne&) {
            return x <= 0.0 ? LogAbs{} : LogAbs{1, -1.0 / x};
          },
          [&](const PiecewiseBlend&) { return LogAbs::of(eval(x)); },
      },
      v_);
}

std::vector<double> Fn1D::derivatives(double x, int order) const {
  return std::visit(
      overloaded{
          [&](const Polynomial& p) {
            std::vector<double> d;
            Polynomial q = p;
            for (int k = 0; k <= order; ++k) {
              d.push_back(q(x));
              q = q.derivative();
            }
            return d;
          },
          [&](const SDCRAnFn& f) {
            std::vector<double> d;
            SDCRAnFn g = f;
            for (int k = 0; k <= order; ++k) {
              d.push_back(g.eval(x));
              if (k < order) g = g.derivative();
            }
            return d;
          },
          [&](const Composition& c) {
            Jet inner = Jet::from_derivatives(c.inner->derivatives(x, order));
            return reebscape::compose(c.outer, inner).derivatives();
          },
          [&](const ExampleOne&) { return example_one_derivatives(x, order); },
          [&](const PiecewiseBlend& b) {
            BlendSpot at = locate(b, x);
            if (!at.blending) return b.pieces[at.piece].derivatives(x, order);
            Jet left = Jet::from_derivatives(b.pieces[at.piece].derivatives(x, order));
            Jet right =
                Jet::from_derivatives(b.pieces[at.piece + 1].derivatives(x, order));
            // psi(t) = h(t) / (h(t) + h(1 - t)), h = e^{-1/t} on t > 0.
            auto hl = example_one_derivatives(at.t, order);
            auto hr = example_one_derivatives(1.0 - at.t, order);
            double scale = 1.0;
            for (int k = 0; k <= order; ++k) {
              hl[k] *= scale;
              hr[k] *= (k % 2 == 0 ? scale : -scale);
              scale /= b.width;
            }
            Jet a = Jet::from_derivatives(hl);
            Jet w = a / (a + Jet::from_derivatives(hr));
            Jet one(order, 1.0);
            return (left * (one - w) + right * w).derivatives();
          },
      },
      v_);
}

LogAbs Fn1D::slope_log(double x) const {
  return std::visit(
      overloaded{
          [&](const Polynomial& p) { return LogAbs::of(p.derivative()(x)); },
          [&](const SDCRAnFn&) { return slope_->eval_log(x); },
          [&](const Composition& c) {
            return c.outer.derivative().eval_log(c.inner->eval_log(x)) *
                   c.inner->slope_log(x);
          },
          [&](const ExampleOne&) {
            return x <= 0.0 ? LogAbs{} : LogAbs{1, -1.0 / x - 2.0 * std::log(x)};
          },
          [&](const PiecewiseBlend&) { return LogAbs::of(derivative(x, 1)); },
      },
      v_);
}

std::vector<double> Fn1D::analyticity_gap() const {
  return std::visit(
      overloaded{
          [](const Polynomial&) { return std::vector<double>{}; },
          [](const SDCRAnFn&) { return std::vector<double>{0.0}; },
          [](const Composition& c) { return c.inner->analyticity_gap(); },
          [](const ExampleOne&) { return std::vector<double>{0.0}; },
          [](const PiecewiseBlend& b) {
            std::vector<double> g;
            for (const auto& p : b.pieces) {
              auto pg = p.analyticity_gap();
              g.insert(g.end(), pg.begin(), pg.end());
            }
            for (double br : b.breaks) {
              g.push_back(br - 0.5 * b.width);
              g.push_back(br + 0.5 * b.width);
            }
            return sorted_unique(std::move(g), 0.0);
          },
      },
      v_);
}

bool Fn1D::is_dran() const { return true; }

bool Fn1D::is_dcran() const {
  return std::visit(overloaded{
                        [](const Polynomial&) { return true; },
                        [](const SDCRAnFn&) { return true; },
                        [](const Composition& c) { return c.inner->is_dcran(); },
                        [](const ExampleOne&) { return false; },
                        [](const PiecewiseBlend&) { return false; },
                    },
                    v_);
}

bool Fn1D::is_constant() const {
  if (auto p = std::get_if<Polynomial>(&v_)) return p->is_constant();
  if (auto c = std::get_if<Composition>(&v_)) return c->outer.is_constant();
  return false;
}

SeedSet Fn1D::oscillation_seeds(double lo, double hi, int max_seeds) const {
  SeedSet out;
  if (auto c = std::get_if<Composition>(&v_)) return c->inner->oscillation_seeds(lo, hi, max_seeds);
  if (auto b = std::get_if<PiecewiseBlend>(&v_)) {
    for (const auto& p : b->pieces) {
      SeedSet s = p.oscillation_seeds(lo, hi, max_seeds);
      out.points.insert(out.points.end(), s.points.begin(), s.points.end());
      out.unresolved.insert(out.unresolved.end(), s.unresolved.begin(), s.unresolved.end());
    }
    return out;
  }
  auto f = std::get_if<SDCRAnFn>(&v_);
  if (f == nullptr || !f->oscillates() || !(hi > lo)) return out;
  if (lo <= 0.0 && hi >= 0.0) out.points.push_back(0.0);
  // Each side is resolved down to `near`, its point closest to the gap; the
  // rest of the way to `near` is left unresolved when the budget runs out.
  std::optional<Interval> pos_zone, neg_zone;
  if (hi > 0.0) {
    const double near = std::max(lo, 0.0);
    double inner = near;
    append_seeds_side(near, hi, 1.0, max_seeds, out.points, inner);
    if (inner > near) pos_zone = Interval{near, inner};
  }
  if (lo < 0.0) {
    const double near = std::max(-hi, 0.0);
    double inner = near;
    append_seeds_side(near, -lo, -1.0, max_seeds, out.points, inner);
    if (inner > near) neg_zone = Interval{-inner, -near};
  }
  if (pos_zone && neg_zone && pos_zone->lo == 0.0 && neg_zone->hi == 0.0) {
    out.unresolved.push_back({neg_zone->lo, pos_zone->hi});
  } else {
    if (neg_zone) out.unresolved.push_back(*neg_zone);
    if (pos_zone) out.unresolved.push_back(*pos_zone);
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

}  // namespace reebscape
