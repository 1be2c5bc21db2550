#include "reebscape/liftcheck.hpp"

#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "reebscape/error.hpp"
#include "reebscape/sweep.hpp"

namespace reebscape {

SuspensionMap SuspensionMap::from_region(const PlanarRegion& region, std::vector<int> first,
                                         std::vector<int> second, int m1, int m2) {
  if (m1 < 1 || m2 < 1) throw ConfigError("fibre dimensions must be positive");
  auto product = [region](std::vector<int> idx) {
    return [region, idx](Point2 p) {
      double v = 1.0;
      for (int k : idx) {
        const Constraint& c = region.constraints().at(static_cast<std::size_t>(k));
        v *= c.side * c.curve.side_value(p);
      }
      return v;
    };
  };
  std::vector<Point2> gaps;
  for (const auto& c : region.constraints()) {
    for (double g : c.curve.param_gaps()) gaps.push_back(c.curve.point(g));
  }
  return SuspensionMap{product(std::move(first)), product(std::move(second)), m1, m2, region,
                       std::move(gaps)};
}

std::array<double, 2> eval_map(const SuspensionMap& map, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != map.dim()) throw Error("eval_map: wrong point dimension");
  const Point2 p{x[0], x[1]};
  double y1 = 0.0, y2 = 0.0;
  for (int j = 0; j < map.m1; ++j) y1 += x[static_cast<std::size_t>(2 + j)] * x[static_cast<std::size_t>(2 + j)];
  for (int j = 0; j < map.m2; ++j) {
    const double v = x[static_cast<std::size_t>(2 + map.m1 + j)];
    y2 += v * v;
  }
  return {map.f1(p) - y1, map.f2(p) - y2};
}

namespace {

void sphere_point(std::mt19937_64& rng, double radius, int m, std::vector<double>& out) {
  std::normal_distribution<double> normal;
  std::vector<double> v(static_cast<std::size_t>(m));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& c : v) {
      c = normal(rng);
      norm += c * c;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double c : v) out.push_back(radius * c / norm);
}

}  // namespace

std::vector<std::vector<double>> sample_zero_set(const SuspensionMap& map, std::size_t n,
                                                 std::uint64_t seed, bool parallel) {
  std::vector<std::vector<double>> pts(n);
  const Box& w = map.region.window();
  std::exception_ptr err;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < count; ++i) {
    try {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(
                                                           static_cast<std::uint64_t>(i) >> 32)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> u1(w.x1.lo, w.x1.hi), u2(w.x2.lo, w.x2.hi);
      Point2 p;
      double a = -1.0, b = -1.0;
      int tries = 0;
      for (;; ++tries) {
        if (tries > 1000000) throw EmptyRegion("sample_zero_set: no region point found");
        p = {u1(rng), u2(rng)};
        if (!map.region.contains(p)) continue;
        a = map.f1(p);
        b = map.f2(p);
        if (a >= 0.0 && b >= 0.0) break;
      }
      std::vector<double> x{p.x1, p.x2};
      sphere_point(rng, std::sqrt(a), map.m1, x);
      sphere_point(rng, std::sqrt(b), map.m2, x);
      pts[static_cast<std::size_t>(i)] = std::move(x);
    } catch (...) {
#pragma omp critical(reebscape_sample_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return pts;
}

namespace {

RankReport rank_of(const Eigen::MatrixXd& J, bool gap_probe) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const Eigen::VectorXd s = svd.singularValues();
  RankReport r;
  r.gap_probe = gap_probe;
  const double smax = s.size() > 0 ? s(0) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    r.singular_values.push_back(s(i));
    if (smax > 0.0 && s(i) >= 1e-6 * smax) ++r.rank;
  }
  return r;
}

}  // namespace

RankReport jacobian_rank(const std::function<std::array<double, 2>(const std::vector<double>&)>& e,
                         const std::vector<double>& point, double h) {
  Eigen::MatrixXd J(2, static_cast<Eigen::Index>(point.size()));
  std::vector<double> x = point;
  for (std::size_t i = 0; i < point.size(); ++i) {
    x[i] = point[i] + h;
    const auto ep = e(x);
    x[i] = point[i] - h;
    const auto em = e(x);
    x[i] = point[i];
    for (int k = 0; k < 2; ++k) J(k, static_cast<Eigen::Index>(i)) = (ep[k] - em[k]) / (2.0 * h);
  }
  return rank_of(J, false);
}

RankReport jacobian_rank(const SuspensionMap& map, const std::vector<double>& point, double h) {
  if (static_cast<int>(point.size()) != map.dim()) throw Error("jacobian_rank: wrong point dimension");
  Eigen::MatrixXd J(2, map.dim());
  std::vector<double> x = point;
  bool gap_probe = false;
  for (int i = 0; i < map.dim(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    double plus = h, minus = h;
    if (i < 2) {
      // Probe away from a gap whose coordinate would fall inside the stencil.
      for (const Point2& g : map.gaps) {
        const double other = i == 0 ? std::fabs(point[1] - g.x2) : std::fabs(point[0] - g.x1);
        const double d = point[ui] - (i == 0 ? g.x1 : g.x2);
        if (other < 2.0 * h && std::fabs(d) < 2.0 * h) {
          gap_probe = true;
          if (d >= 0.0) {
            minus = 0.0;
            plus = 2.0 * h;
          } else {
            plus = 0.0;
            minus = 2.0 * h;
          }
        }
      }
    }
    x[ui] = point[ui] + plus;
    const auto ep = eval_map(map, x);
    x[ui] = point[ui] - minus;
    const auto em = eval_map(map, x);
    x[ui] = point[ui];
    for (int k = 0; k < 2; ++k) J(k, i) = (ep[static_cast<std::size_t>(k)] - em[static_cast<std::size_t>(k)]) / (plus + minus);
  }
  return rank_of(J, gap_probe);
}

ProjectionCount projection_critical_count(const PlanarRegion& region, int axis, bool periodic) {
  if (axis != 0 && axis != 1) throw ConfigError("projection axis must be 0 or 1");
  SweepOptions opts;
  opts.periodic = periodic;
  ReebGraph g;
  if (axis == 0) {
    g = build_reeb_graph(region, opts);
  } else {
    if (periodic) throw ConfigError("periodic projection count needs the sweep axis x1");
    const Box& w = region.window();
    g = build_reeb_graph(region.mapped(Affine2::swap_axes(), Box{w.x2, w.x1}), opts);
  }
  ProjectionCount c;
  for (const ReebNode& n : g.nodes) {
    if (n.kind == NodeKind::end) {
      ++c.ends;
    } else if (is_critical(n.kind)) {
      ++c.count;
      c.heights.push_back(n.height);
    }
  }
  return c;
}

std::string samples_csv(const SuspensionMap& map, const std::vector<std::vector<double>>& pts) {
  std::ostringstream os;
  os.precision(17);
  os << "x1,x2";
  for (int j = 1; j <= map.m1; ++j) os << ",y1_" << j;
  for (int j = 1; j <= map.m2; ++j) os << ",y2_" << j;
  os << "\n";
  for (const auto& p : pts) {
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << p[k];
    os << "\n";
  }
  return os.str();
}

}  // namespace reebscape
