#include "reebscape/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>

#include "reebscape/error.hpp"

namespace reebscape {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int a) {
    while (parent_[static_cast<std::size_t>(a)] != a) {
      auto& p = parent_[static_cast<std::size_t>(a)];
      p = parent_[static_cast<std::size_t>(p)];
      a = p;
    }
    return a;
  }
  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

bool clipped(const SliceInterval& iv) { return iv.lo.truncated() || iv.hi.truncated(); }

/// Each interval of `a` overlaps exactly its counterpart in `b`.
bool matches(const std::vector<SliceInterval>& a, const std::vector<SliceInterval>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i].overlaps(b[j]) != (i == j)) return false;
    }
  }
  return true;
}

std::vector<Slice> slice_all(const PlanarRegion& region, const std::vector<double>& heights,
                             const SweepOptions& opts) {
  std::vector<Slice> out(heights.size());
  std::exception_ptr err;
  const long n = static_cast<long>(heights.size());
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] =
          slice(region, heights[static_cast<std::size_t>(i)], opts.slice);
    } catch (...) {
#pragma omp critical(reebscape_slice_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

struct Strand {
  std::vector<TrackSample> track;
  bool truncated = false;
  bool unbounded = false;
  int bottom = -1;
  int top = -1;
};

struct Sampling {
  std::vector<double> levels;
  // samples[b][j] for band b between levels[b] and levels[b+1]
  std::vector<std::vector<Slice>> samples;
  std::vector<Slice> level_slices;
};

Sampling sample_bands(const PlanarRegion& region, const std::vector<double>& levels,
                      const SweepOptions& opts) {
  const int m = std::max(opts.samples_per_band, 2);
  std::vector<double> heights(levels);
  for (std::size_t b = 0; b + 1 < levels.size(); ++b) {
    const double gap = levels[b + 1] - levels[b];
    const double delta = std::min(gap / 4.0, 1e-3);
    for (int j = 0; j < m; ++j) {
      heights.push_back(levels[b] + delta + (gap - 2.0 * delta) * j / (m - 1));
    }
  }
  std::vector<Slice> all = slice_all(region, heights, opts);
  Sampling s;
  s.levels = levels;
  s.level_slices.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(levels.size()));
  std::size_t at = levels.size();
  for (std::size_t b = 0; b + 1 < levels.size(); ++b) {
    s.samples.emplace_back(all.begin() + static_cast<std::ptrdiff_t>(at),
                           all.begin() + static_cast<std::ptrdiff_t>(at + m));
    at += static_cast<std::size_t>(m);
  }
  return s;
}

/// Height in (lo, hi) where the slice stops matching the one at lo.
double locate_hidden_level(const PlanarRegion& region, double lo, double hi,
                           const SweepOptions& opts) {
  const auto ref = slice(region, lo, opts.slice).proper_intervals();
  for (int it = 0; it < 80 && hi - lo > 1e-13 * std::max(1.0, std::fabs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (matches(slice(region, mid, opts.slice).proper_intervals(), ref)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

const BoundaryEvent* event_at(const std::vector<BoundaryEvent>& events, double h, double tol) {
  for (const auto& e : events) {
    if (std::fabs(e.height - h) <= tol) return &e;
  }
  return nullptr;
}

ReebGraph assemble(const PlanarRegion& region, const Sampling& s,
                   const std::vector<BoundaryEvent>& events, const SweepOptions& opts) {
  const std::size_t nb = s.samples.size();
  std::vector<Strand> strands;
  std::vector<std::vector<int>> band_strands(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t count = s.samples[b].front().proper_count();
    for (std::size_t i = 0; i < count; ++i) {
      Strand st;
      for (const Slice& sl : s.samples[b]) {
        const SliceInterval iv = sl.proper_intervals()[i];
        st.track.push_back({sl.height, {iv.lo.x2, iv.hi.x2}});
        st.truncated = st.truncated || clipped(iv);
        st.unbounded = st.unbounded || (iv.lo.truncated() && iv.hi.truncated());
      }
      band_strands[b].push_back(static_cast<int>(strands.size()));
      strands.push_back(std::move(st));
    }
  }

  ReebGraph g;
  g.window = region.window();
  UnionFind chains(strands.size());
  const double tol = opts.events.dedup_tol;
  for (std::size_t l = 0; l < s.levels.size(); ++l) {
    const double h = s.levels[l];
    std::vector<int> below, above;
    std::vector<SliceInterval> below_iv, above_iv;
    if (l > 0) {
      below = band_strands[l - 1];
      below_iv = s.samples[l - 1].back().proper_intervals();
    }
    if (l < nb) {
      above = band_strands[l];
      above_iv = s.samples[l].front().proper_intervals();
    }
    const auto& level_iv = s.level_slices[l].intervals;
    const std::size_t nbw = below.size(), nab = above.size();
    UnionFind local(nbw + nab + level_iv.size());
    auto all_iv = [&](std::size_t i) -> const SliceInterval& {
      if (i < nbw) return below_iv[i];
      if (i < nbw + nab) return above_iv[i - nbw];
      return level_iv[i - nbw - nab];
    };
    const std::size_t total = nbw + nab + level_iv.size();
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t j = i + 1; j < total; ++j) {
        const bool same_side = (i < nbw && j < nbw) || (i >= nbw && i < nbw + nab && j >= nbw &&
                                                        j < nbw + nab) ||
                               (i >= nbw + nab && j >= nbw + nab);
        if (same_side) continue;
        if (all_iv(i).overlaps(all_iv(j))) local.unite(static_cast<int>(i), static_cast<int>(j));
      }
    }
    std::map<int, std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < total; ++i) comps[local.find(static_cast<int>(i))].push_back(i);

    const BoundaryEvent* ev = event_at(events, h, tol);
    const bool window_edge = l == 0 || l + 1 == s.levels.size();
    for (const auto& [root, members] : comps) {
      (void)root;
      std::vector<int> bs, as;
      double lo = kInf, hi = -kInf;
      bool trunc = false;
      for (std::size_t i : members) {
        if (i < nbw) bs.push_back(below[i]);
        else if (i < nbw + nab) as.push_back(above[i - nbw]);
        lo = std::min(lo, all_iv(i).lo.x2);
        hi = std::max(hi, all_iv(i).hi.x2);
        trunc = trunc || clipped(all_iv(i));
      }
      const std::size_t k = bs.size(), u = as.size();
      if (k == 0 && u == 0) continue;  // isolated points never become nodes
      std::optional<double> wx;
      if (ev && ev->kind != EventKind::end) {
        const double slack = 1e-6 * std::max(1.0, hi - lo);
        for (const Point2& p : ev->witnesses) {
          if (p.x2 >= lo - slack && p.x2 <= hi + slack) {
            wx = p.x2;
            break;
          }
        }
      }
      NodeKind kind;
      if (k == 1 && u == 1) {
        if (!(ev && wx && ev->kind != EventKind::end)) {
          chains.unite(as[0], bs[0]);
          continue;
        }
        kind = NodeKind::corner;
      } else if ((k == 0 || u == 0) && ((ev && ev->kind == EventKind::end) || window_edge)) {
        kind = NodeKind::end;
      } else if (k == 0) {
        kind = NodeKind::birth;
      } else if (u == 0) {
        kind = NodeKind::death;
      } else if (u > k) {
        kind = NodeKind::split;
      } else if (k > u) {
        kind = NodeKind::merge;
      } else {
        kind = NodeKind::tangency_degenerate;
      }
      const int id = g.add_node(h, kind, wx.value_or(0.5 * (lo + hi)), trunc);
      for (int b : bs) strands[static_cast<std::size_t>(b)].top = id;
      for (int a : as) strands[static_cast<std::size_t>(a)].bottom = id;
    }
  }

  std::map<int, std::vector<int>> chain_members;
  for (std::size_t i = 0; i < strands.size(); ++i) {
    chain_members[chains.find(static_cast<int>(i))].push_back(static_cast<int>(i));
  }
  bool any_trunc = false;
  for (auto& [root, members] : chain_members) {
    (void)root;
    // Strand ids increase with band, so members are already in height order.
    int lo = -1, hi = -1;
    std::vector<TrackSample> track;
    bool trunc = false, unb = false;
    for (int m : members) {
      const Strand& st = strands[static_cast<std::size_t>(m)];
      if (st.bottom >= 0) lo = st.bottom;
      if (st.top >= 0) hi = st.top;
      track.insert(track.end(), st.track.begin(), st.track.end());
      trunc = trunc || st.truncated;
      unb = unb || st.unbounded;
    }
    if (lo < 0 || hi < 0) throw Error("sweep: contour chain without end nodes");
    const int e = g.add_edge(lo, hi, std::move(track));
    g.edges[static_cast<std::size_t>(e)].truncated = trunc;
    g.edges[static_cast<std::size_t>(e)].unbounded = unb;
    any_trunc = any_trunc || trunc;
  }
  g.flavor = any_trunc ? Flavor::truncated : Flavor::finite;
  return g;
}

ReebGraph sweep(const PlanarRegion& region, const std::vector<BoundaryEvent>& events,
                const SweepOptions& opts) {
  const Box& w = region.window();
  std::vector<double> levels{w.x1.lo, w.x1.hi};
  for (const auto& e : events) {
    if (e.height > w.x1.lo + opts.events.dedup_tol && e.height < w.x1.hi - opts.events.dedup_tol)
      levels.push_back(e.height);
  }
  std::sort(levels.begin(), levels.end());

  for (int pass = 0; pass <= opts.max_refine; ++pass) {
    Sampling s = sample_bands(region, levels, opts);
    std::vector<double> hidden;
    for (std::size_t b = 0; b < s.samples.size(); ++b) {
      const auto& band = s.samples[b];
      for (std::size_t j = 0; j + 1 < band.size(); ++j) {
        if (!matches(band[j].proper_intervals(), band[j + 1].proper_intervals())) {
          hidden.push_back(locate_hidden_level(region, band[j].height, band[j + 1].height, opts));
          break;
        }
      }
    }
    if (hidden.empty()) return assemble(region, s, events, opts);
    if (pass == opts.max_refine) break;
    levels.insert(levels.end(), hidden.begin(), hidden.end());
    levels = sorted_unique(std::move(levels), 0.0);
  }
  throw RefinementExceeded("sweep: contours change between samples beyond the refinement budget");
}

struct Fold {
  int index;
  double offset;  // position within the base period
};

Fold fold(double x2, double period, double base_lo) {
  const double r = (x2 - base_lo) / period;
  const double k = std::floor(r + 1e-9);
  return {static_cast<int>(k), (r - k) * period};
}

}  // namespace

ReebGraph periodic_quotient(const ReebGraph& full, double period, double center) {
  const double base_lo = center - 0.5 * period;
  ReebGraph q;
  q.flavor = Flavor::periodic;
  q.period = period;
  q.window = full.window;

  std::vector<int> rep_of(full.nodes.size(), -1);
  std::vector<int> index_of(full.nodes.size(), 0);
  std::vector<int> full_of_rep;
  for (const ReebNode& n : full.nodes) {
    const Fold f = fold(n.x2, period, base_lo);
    index_of[static_cast<std::size_t>(n.id)] = f.index;
    if (f.index == 0) {
      rep_of[static_cast<std::size_t>(n.id)] = q.add_node(n.height, n.kind, n.x2, n.truncated);
      full_of_rep.push_back(n.id);
    }
  }
  auto circular = [&](double a, double b) {
    const double d = std::fabs(a - b);
    return std::min(d, period - d);
  };
  for (const ReebNode& n : full.nodes) {
    if (rep_of[static_cast<std::size_t>(n.id)] >= 0) continue;
    const double off = fold(n.x2, period, base_lo).offset;
    for (const ReebNode& r : q.nodes) {
      if (r.kind == n.kind && std::fabs(r.height - n.height) <= 1e-9 &&
          circular(fold(r.x2, period, base_lo).offset, off) <= 1e-6 * period) {
        rep_of[static_cast<std::size_t>(n.id)] = r.id;
        break;
      }
    }
  }
  for (const ReebEdge& e : full.edges) {
    if (index_of[static_cast<std::size_t>(e.lo)] != 0) continue;
    const int hi = rep_of[static_cast<std::size_t>(e.hi)];
    if (hi < 0) {
      if (full.node(e.hi).truncated) continue;
      throw Error("periodic quotient: node without a copy in the base period");
    }
    const int id = q.add_edge(rep_of[static_cast<std::size_t>(e.lo)], hi, e.track,
                              index_of[static_cast<std::size_t>(e.hi)]);
    q.edges[static_cast<std::size_t>(id)].truncated = e.truncated;
    q.edges[static_cast<std::size_t>(id)].unbounded = e.unbounded;
  }
  for (const ReebNode& r : q.nodes) {
    const int orig = full_of_rep[static_cast<std::size_t>(r.id)];
    if (!r.truncated && q.degree(r.id) != full.degree(orig)) {
      throw Error("periodic quotient: window too narrow to close the period");
    }
  }
  return q;
}

std::optional<NotAGraphEvidence> detect_accumulation(const PlanarRegion& region, Point2 focus,
                                                     const AccumulationSchedule& schedule,
                                                     const RootOptions& roots) {
  struct Found {
    LogAbs offset;  // signed height minus limit height
    double x2;
    int level;
    bool maximum;
    bool at_limit;
  };
  std::vector<Found> found;
  const auto& cs = region.constraints();
  const double ftol = 1e-9 * (1.0 + std::hypot(focus.x1, focus.x2));
  bool any_gap = false;
  for (const auto& c : cs) {
    const PlaneCurve& curve = c.curve;
    const Interval range = curve.param_range(region.window());
    for (double g : curve.param_gaps()) {
      const Point2 gp = curve.point(g);
      if (std::hypot(gp.x1 - focus.x1, gp.x2 - focus.x2) > ftol) continue;
      any_gap = true;
      for (int k = 0; k < schedule.levels; ++k) {
        const double a = schedule.delta0 * std::ldexp(1.0, -k - 1);
        const double b = schedule.delta0 * std::ldexp(1.0, -k);
        for (int side : {1, -1}) {
          Interval win = side > 0 ? Interval{g + a * (1 - 1e-6), g + b * (1 + 1e-6)}
                                  : Interval{g - b * (1 + 1e-6), g - a * (1 - 1e-6)};
          win = {std::max(win.lo, range.lo), std::min(win.hi, range.hi)};
          if (!(win.hi > win.lo)) continue;
          for (double t : curve.vertical_tangents(win, roots)) {
            const double d = std::fabs(t - g);
            if (d < a * (1 - 1e-9) || d > b * (1 + 1e-9)) continue;
            const Point2 p = curve.point(t);
            if (!region.contains(p, 1e-9)) continue;
            const double probe = 1e-3 * d * d;
            const int before = curve.dx1_log(t - probe).sign;
            const int after = curve.dx1_log(t + probe).sign;
            const LogAbs off = curve.height_offset_log(t, focus.x1);
            // An extremum whose offset is negligible next to the offsets a hair
            // away on either side sits exactly at the limit height.
            const double nearby = std::min(curve.height_offset_log(t - probe, focus.x1).log_abs,
                                           curve.height_offset_log(t + probe, focus.x1).log_abs);
            const bool at_limit = off.sign == 0 || off.log_abs < nearby + std::log(1e-12);
            found.push_back({off, p.x2, k, before > 0 && after < 0, at_limit});
          }
        }
      }
    }
  }
  if (!any_gap) return std::nullopt;

  auto same_height = [](LogAbs x, LogAbs y) {
    return x.sign == y.sign && std::fabs(x.log_abs - y.log_abs) <= 1e-12 * std::max(1.0, std::fabs(x.log_abs));
  };

  NotAGraphEvidence ev;
  ev.accumulation_height = focus.x1;
  ev.focus = focus;
  std::vector<LogAbs> seen;
  bool seen_limit = false;
  bool all_levels = true;
  for (int k = 0; k < schedule.levels; ++k) {
    NotAGraphEvidence::Level lv;
    lv.k = k;
    lv.offsets = {schedule.delta0 * std::ldexp(1.0, -k - 1), schedule.delta0 * std::ldexp(1.0, -k)};
    for (const Found& f : found) {
      if (f.level != k) continue;
      ++lv.tangencies;
      if (f.at_limit) {
        if (!seen_limit) {
          seen_limit = true;
          ++lv.new_heights;
        }
        continue;
      }
      if (std::none_of(seen.begin(), seen.end(), [&](LogAbs s) { return same_height(s, f.offset); })) {
        seen.push_back(f.offset);
        ++lv.new_heights;
        if (f.maximum) {
          ev.witnesses.push_back({focus.x1 + f.offset.value(), f.offset.log_abs, f.x2, k});
        }
      }
    }
    all_levels = all_levels && lv.new_heights >= schedule.min_count;
    ev.levels.push_back(lv);
  }
  if (!all_levels) return std::nullopt;
  std::sort(ev.witnesses.begin(), ev.witnesses.end(),
            [](const auto& x, const auto& y) { return x.log_height > y.log_height; });

  Slice at_limit = slice(region, focus.x1);
  for (const auto& iv : at_limit.intervals) ev.degenerate_points += iv.degenerate() ? 1 : 0;
  ev.unresolved = at_limit.unresolved;
  for (const auto& w : ev.witnesses) {
    if (!(std::fabs(w.height - focus.x1) > 0.0) || ev.contour_counts.size() >= 8) break;
    ev.contour_counts.push_back(static_cast<int>(slice(region, w.height).proper_count()));
  }
  return ev;
}

ReebResult build_reeb(const PlanarRegion& region, const SweepOptions& opts) {
  std::vector<BoundaryEvent> events;
  try {
    events = boundary_events(region, opts.events);
  } catch (const AccumulationSuspected& acc) {
    auto ev = detect_accumulation(region, {acc.focus_x1(), acc.focus_x2()}, opts.accumulation,
                                  opts.events.roots);
    if (ev) return *ev;
    throw;
  }
  ReebGraph full = sweep(region, events, opts);
  if (!opts.periodic) return full;
  if (!region.period()) throw ConfigError("build_reeb: periodic mode needs a declared period");
  return periodic_quotient(full, *region.period(), region.window().x2.mid());
}

ReebGraph build_reeb_graph(const PlanarRegion& region, const SweepOptions& opts) {
  ReebResult r = build_reeb(region, opts);
  if (auto* g = std::get_if<ReebGraph>(&r)) return std::move(*g);
  throw Error("build_reeb: critical values accumulate, the Reeb space is not a graph");
}

const char* to_string(PropernessReport::Verdict v) {
  switch (v) {
    case PropernessReport::Verdict::proper:
      return "proper";
    case PropernessReport::Verdict::improper:
      return "improper";
    case PropernessReport::Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

PropernessReport properness_check(const ReebGraph& graph) {
  PropernessReport r;
  bool clipped_track = false;
  for (const ReebEdge& e : graph.edges) {
    if (e.unbounded) {
      r.verdict = PropernessReport::Verdict::improper;
      r.edge = e.id;
      r.witness = "contour spans the whole x2 window in both directions";
      return r;
    }
    clipped_track = clipped_track || e.truncated;
    for (const TrackSample& s : e.track) r.bound = std::max(r.bound, s.x2.length());
  }
  if (clipped_track && graph.flavor != Flavor::periodic) {
    r.verdict = PropernessReport::Verdict::inconclusive;
    r.witness = "tracks clipped by the window on a non-periodic region";
  }
  return r;
}

}  // namespace reebscape
