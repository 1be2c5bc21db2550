#include "reebscape/region.hpp"

#include <algorithm>
#include <cmath>

#include "reebscape/error.hpp"

namespace reebscape {

PlanarRegion::PlanarRegion(std::vector<Constraint> constraints, Box window,
                           std::optional<double> period)
    : constraints_(std::move(constraints)), window_(window), period_(period) {
  if (!(window_.x1.hi >= window_.x1.lo && window_.x2.hi >= window_.x2.lo))
    throw Error("PlanarRegion: window is empty");
  if (period_ && !(*period_ > 0.0)) throw Error("PlanarRegion: period must be positive");
  for (const auto& c : constraints_) {
    if (c.side != 1 && c.side != -1) throw Error("PlanarRegion: side must be +1 or -1");
  }
}

int PlanarRegion::constraint_sign(std::size_t k, Point2 p) const {
  const Constraint& c = constraints_[k];
  return c.side * c.curve.side_log(p).sign;
}

bool PlanarRegion::contains(Point2 p, double tol) const {
  if (!window_.contains(p, tol)) return false;
  for (std::size_t k = 0; k < constraints_.size(); ++k) {
    if (constraint_sign(k, p) >= 0) continue;
    if (tol > 0.0 && std::fabs(constraints_[k].curve.side_value(p)) <= tol) continue;
    return false;
  }
  return true;
}

PlanarRegion PlanarRegion::without_constraint(std::size_t k) const {
  std::vector<Constraint> cs = constraints_;
  cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(k));
  return PlanarRegion(std::move(cs), window_, period_);
}

PlanarRegion PlanarRegion::mapped(const Affine2& map, Box window) const {
  std::vector<Constraint> cs;
  for (const auto& c : constraints_) {
    cs.push_back({PlaneCurve::transformed(c.curve, map), c.side, c.label});
  }
  return PlanarRegion(std::move(cs), window, std::nullopt);
}

std::vector<SliceInterval> Slice::proper_intervals() const {
  std::vector<SliceInterval> out;
  for (const auto& iv : intervals) {
    if (!iv.degenerate()) out.push_back(iv);
  }
  return out;
}

namespace {

struct Breakpoint {
  double x2;
  std::vector<int> sources;  // -1 for the window
  int representative() const {
    for (int s : sources) {
      if (s >= 0) return s;
    }
    return -1;
  }
};

bool close_enough(double a, double b) {
  return std::fabs(a - b) <= 1e-13 * std::max(1.0, std::fabs(a));
}

}  // namespace

Slice slice(const PlanarRegion& region, double x1, const SliceOptions& opts) {
  Slice out;
  out.height = x1;
  const Box& w = region.window();
  if (!w.x1.contains(x1)) return out;

  std::vector<Breakpoint> raw{{w.x2.lo, {-1}}, {w.x2.hi, {-1}}};
  const auto& cs = region.constraints();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const PlaneCurve& curve = cs[k].curve;
    if (curve.constant_height()) continue;  // a vertical line never cuts a slice
    RootSet rs = curve.crossings(x1, w, opts.roots);
    for (double t : rs.roots) {
      const double x2 = curve.point(t).x2;
      if (w.x2.contains(x2)) raw.push_back({x2, {static_cast<int>(k)}});
    }
    for (const Interval& z : rs.unresolved) {
      const double a = curve.point(z.lo).x2, b = curve.point(z.hi).x2;
      out.unresolved.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a.x2 < b.x2; });
  std::vector<Breakpoint> bps;
  for (auto& b : raw) {
    if (!bps.empty() && close_enough(bps.back().x2, b.x2)) {
      bps.back().sources.insert(bps.back().sources.end(), b.sources.begin(), b.sources.end());
      if (b.representative() >= 0 && bps.back().representative() < 0) bps.back().x2 = b.x2;
    } else {
      bps.push_back(std::move(b));
    }
  }

  auto point_member = [&](const Breakpoint& b) {
    const Point2 p{x1, b.x2};
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (std::find(b.sources.begin(), b.sources.end(), static_cast<int>(k)) != b.sources.end())
        continue;
      if (region.constraint_sign(k, p) >= 0) continue;
      if (std::fabs(cs[k].curve.side_value(p)) <= opts.member_tol) continue;
      return false;
    }
    return true;
  };
  const std::size_t n = bps.size();
  std::vector<char> seg(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    seg[i] = region.contains({x1, 0.5 * (bps[i].x2 + bps[i + 1].x2)});
  }

  bool open = false;
  SliceEnd start;
  for (std::size_t i = 0; i < n; ++i) {
    const SliceEnd here{bps[i].x2, bps[i].representative()};
    const bool right = i + 1 < n && seg[i];
    if (open) {
      if (!right) {
        out.intervals.push_back({start, here});
        open = false;
      }
    } else if (right) {
      start = here;
      open = true;
    } else if (here.source >= 0 && (i == 0 || !seg[i - 1]) && point_member(bps[i])) {
      out.intervals.push_back({here, here});
    }
  }
  return out;
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::tangency:
      return "tangency";
    case EventKind::corner:
      return "corner";
    case EventKind::end:
      return "end";
  }
  return "?";
}

namespace {

int priority(EventKind k) {
  switch (k) {
    case EventKind::end:
      return 2;
    case EventKind::tangency:
      return 1;
    case EventKind::corner:
      return 0;
  }
  return 0;
}

/// Parameters on curve a where curve b's defining function vanishes.
std::vector<double> meeting_params(const PlaneCurve& a, const PlaneCurve& b, const Box& window,
                                   const RootOptions& ro) {
  const Interval range = a.param_range(window);
  if (!(range.hi > range.lo)) return {};
  ScalarProbe probe;
  probe.value = [&](double t) { return b.side_log(a.point(t)); };
  SeedSet seeds = a.param_seeds(range, ro.max_seeds);
  probe.seeds = std::move(seeds.points);
  probe.unresolved = std::move(seeds.unresolved);
  RootOptions o = ro;
  o.tangential = false;
  return isolate_roots(probe, range, o).roots;
}

/// Vertical tangents of a curve whose tangencies may accumulate at a gap
/// lying outside the window. Dyadic shells around such a gap are peeled off
/// from the outside in, and the search stops at the first shell whose
/// tangencies all lie outside the window.
std::vector<double> tangents_in_window(const PlaneCurve& curve, Interval range, const Box& w,
                                       const EventOptions& opts) {
  try {
    return curve.vertical_tangents(range, opts.roots);
  } catch (const AccumulationSuspected& acc) {
    if (w.x1.contains(acc.focus_x1(), opts.member_tol)) throw;
    std::vector<double> out;
    for (double g : curve.param_gaps()) {
      if (!(g > range.lo && g < range.hi)) continue;
      const double r = std::min(g - range.lo, range.hi - g);
      auto collect = [&](Interval win) {
        for (double t : curve.vertical_tangents(win, opts.roots)) out.push_back(t);
      };
      collect({range.lo, g - r});
      collect({g + r, range.hi});
      for (int k = 0; k < 64; ++k) {
        const Interval lo_shell{g - std::ldexp(r, -k), g - std::ldexp(r, -k - 1)};
        const Interval hi_shell{g + std::ldexp(r, -k - 1), g + std::ldexp(r, -k)};
        bool inside = false;
        for (const Interval& sh : {lo_shell, hi_shell}) {
          for (double t : curve.vertical_tangents(sh, opts.roots)) {
            out.push_back(t);
            inside = inside || w.x1.contains(curve.point(t).x1);
          }
        }
        if (!inside) return sorted_unique(std::move(out), 0.0);
      }
    }
    throw;
  }
}

}  // namespace

std::vector<BoundaryEvent> boundary_events(const PlanarRegion& region, const EventOptions& opts) {
  std::vector<BoundaryEvent> raw;
  const auto& cs = region.constraints();
  const Box& w = region.window();
  auto add = [&](double h, EventKind kind, Point2 p, int a, int b) {
    raw.push_back({h, kind, {p}, a, b});
  };
  auto end_level = [&](double h, int a) {
    if (!w.x1.contains(h)) return;
    Slice s = slice(region, h);
    if (!s.intervals.empty()) add(h, EventKind::end, {h, s.intervals.front().lo.x2}, a, -1);
  };

  for (std::size_t k = 0; k < cs.size(); ++k) {
    const PlaneCurve& curve = cs[k].curve;
    if (auto h = curve.constant_height()) {
      end_level(*h, static_cast<int>(k));
      continue;
    }
    const Interval range = curve.param_range(w);
    if (!(range.hi > range.lo)) continue;
    for (double t : tangents_in_window(curve, range, w, opts)) {
      const Point2 p = curve.point(t);
      if (region.contains(p, opts.member_tol))
        add(p.x1, EventKind::tangency, p, static_cast<int>(k), -1);
    }
  }

  for (std::size_t a = 0; a < cs.size(); ++a) {
    for (std::size_t b = a + 1; b < cs.size(); ++b) {
      std::size_t ia = a, ib = b;
      if (cs[ia].curve.constant_height()) std::swap(ia, ib);
      if (cs[ia].curve.constant_height()) continue;
      for (double t : meeting_params(cs[ia].curve, cs[ib].curve, w, opts.roots)) {
        const Point2 p = cs[ia].curve.point(t);
        if (region.contains(p, opts.member_tol))
          add(p.x1, EventKind::corner, p, static_cast<int>(ia), static_cast<int>(ib));
      }
    }
  }
  end_level(w.x1.lo, -1);
  end_level(w.x1.hi, -1);

  std::sort(raw.begin(), raw.end(),
            [](const BoundaryEvent& a, const BoundaryEvent& b) { return a.height < b.height; });
  std::vector<BoundaryEvent> out;
  for (auto& e : raw) {
    if (!out.empty() && e.height - out.back().height <= opts.dedup_tol) {
      BoundaryEvent& last = out.back();
      last.witnesses.insert(last.witnesses.end(), e.witnesses.begin(), e.witnesses.end());
      if (priority(e.kind) > priority(last.kind)) {
        last.kind = e.kind;
        last.height = e.height;
        last.curve_a = e.curve_a;
        last.curve_b = e.curve_b;
      }
    } else {
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<double> event_heights(const std::vector<BoundaryEvent>& events) {
  std::vector<double> h;
  for (const auto& e : events) h.push_back(e.height);
  return h;
}

}  // namespace reebscape
