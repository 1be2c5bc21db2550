#include "reebscape/roots.hpp"

#include <algorithm>
#include <cmath>

#include "reebscape/error.hpp"

namespace reebscape {

namespace {

struct Sample {
  double x;
  LogAbs v;
  bool seeded;
};

bool in_unresolved(const std::vector<Interval>& zones, double x) {
  for (const auto& z : zones) {
    if (x > z.lo && x < z.hi) return true;
  }
  return false;
}

}  // namespace

double bisect_sign(const std::function<int(double)>& sign, double lo, double hi,
                   double tol) {
  int slo = sign(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= tol) break;
    const int sm = sign(mid);
    if (sm == 0) return mid;
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RootSet isolate_roots(const ScalarProbe& probe, Interval bracket, const RootOptions& opts) {
  RootSet out;
  for (const auto& z : probe.unresolved) {
    Interval c{std::max(z.lo, bracket.lo), std::min(z.hi, bracket.hi)};
    if (c.hi > c.lo) out.unresolved.push_back(c);
  }

  std::vector<Sample> grid;
  const int n = std::max(opts.density, 2);
  for (int k = 0; k <= n; ++k) {
    const double x = bracket.lo + bracket.length() * k / n;
    if (!in_unresolved(out.unresolved, x)) grid.push_back({x, {}, false});
  }
  for (double s : probe.seeds) {
    if (s >= bracket.lo && s <= bracket.hi) grid.push_back({s, {}, true});
  }
  std::sort(grid.begin(), grid.end(), [](const Sample& a, const Sample& b) { return a.x < b.x; });
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](const Sample& a, const Sample& b) { return a.x == b.x; }),
             grid.end());
  for (auto& s : grid) s.v = probe.value(s.x);

  auto sign = [&](double x) { return probe.value(x).sign; };
  std::vector<double> roots;
  int uniform_changes = 0, uniform_pairs = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].v.sign == 0) roots.push_back(grid[i].x);
    if (i + 1 == grid.size()) continue;
    const Sample& a = grid[i];
    const Sample& b = grid[i + 1];
    if (!a.seeded && !b.seeded) {
      ++uniform_pairs;
      if (a.v.sign * b.v.sign < 0) ++uniform_changes;
    }
    if (a.v.sign * b.v.sign < 0) roots.push_back(bisect_sign(sign, a.x, b.x));
  }
  if (uniform_pairs > 16 && uniform_changes * 4 > uniform_pairs) {
    throw TooOscillatory("sign alternates on most uniform samples", bracket.mid());
  }

  if (opts.tangential && probe.slope) {
    const double log_tol = std::log(opts.tol);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      const Sample& l = grid[i - 1];
      const Sample& m = grid[i];
      const Sample& r = grid[i + 1];
      if (m.v.sign == 0 || l.v.sign != m.v.sign || r.v.sign != m.v.sign) continue;
      if (!(m.v.log_abs <= l.v.log_abs && m.v.log_abs <= r.v.log_abs)) continue;
      // Sign of d|g|/dx.
      auto q = [&](double x) { return m.v.sign * probe.slope(x).sign; };
      double xs = m.x;
      const int qm = q(m.x);
      if (qm < 0 && q(r.x) > 0) {
        xs = bisect_sign(q, m.x, r.x);
      } else if (qm > 0 && q(l.x) < 0) {
        xs = bisect_sign(q, l.x, m.x);
      }
      const LogAbs vs = probe.value(xs);
      const double scale = std::max(l.v.log_abs, r.v.log_abs);
      if (vs.sign == 0 || (vs.log_abs < log_tol && vs.log_abs - scale < log_tol)) {
        roots.push_back(xs);
      }
    }
  }

  out.roots = sorted_unique(std::move(roots), opts.tol);
  return out;
}

RootSet root_set_in_interval(const Fn1D& f, double target, Interval bracket,
                             const RootOptions& opts) {
  ScalarProbe p;
  if (target == 0.0) {
    p.value = [&f](double x) { return f.eval_log(x); };
  } else {
    p.value = [&f, target](double x) { return LogAbs::of(f.eval(x) - target); };
  }
  p.slope = [&f](double x) { return f.slope_log(x); };
  SeedSet seeds = f.oscillation_seeds(bracket.lo, bracket.hi, opts.max_seeds);
  p.seeds = std::move(seeds.points);
  p.unresolved = std::move(seeds.unresolved);
  return isolate_roots(p, bracket, opts);
}

std::vector<double> roots_in_interval(const Fn1D& f, double target, Interval bracket,
                                      const RootOptions& opts) {
  return root_set_in_interval(f, target, bracket, opts).roots;
}

}  // namespace reebscape
