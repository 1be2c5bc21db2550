#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "reebscape/error.hpp"
#include "reebscape/liftcheck.hpp"
#include "reebscape/scenario.hpp"

using namespace reebscape;

namespace {

Construction named(const std::string& name, int m1 = 1, int m2 = 1) {
  Scenario s;
  s.name = name;
  s.params.m1 = m1;
  s.params.m2 = m2;
  return build_construction(s);
}

// The thm1 boundary functions written out from their defining equations.
double c_s1(double x2) {
  const double d = x2 - 4.0 * std::round(x2 / 4.0);
  return d * d - 0.5;
}
double c_s2(double x2) {
  const double d = x2 - 2.0 - 4.0 * std::round((x2 - 2.0) / 4.0);
  return 0.5 - d * d;
}
double dc_s1(double x2) { return 2.0 * (x2 - 4.0 * std::round(x2 / 4.0)); }
double dc_s2(double x2) { return -2.0 * (x2 - 2.0 - 4.0 * std::round((x2 - 2.0) / 4.0)); }

}  // namespace

TEST_CASE("eval_map by direct substitution") {
  const SuspensionMap m = named("thm1").map;
  const auto a = eval_map(m, {0.0, 1.0, 0.5, 1.0});
  CHECK(std::fabs(a[0]) < 1e-15);
  CHECK(std::fabs(a[1]) < 1e-15);
  // f1(0,0) = (c_S1(0) - 0)(0 - c_S2(0)) with the nearest S2 vertex at x2 = +-2.
  const double f1 = (c_s1(0.0) - 0.0) * (0.0 - c_s2(0.0));
  CHECK(f1 == doctest::Approx(-1.75));
  const auto b = eval_map(m, {0.0, 0.0, 0.0, 1.0});
  CHECK(b[0] == doctest::Approx(f1));
  CHECK(b[1] == 0.0);
  CHECK_THROWS(eval_map(m, {0.0, 1.0}));
}

TEST_CASE("zero set samples") {
  for (const char* name : {"thm1", "disk", "thm3-case1", "thm3-case2", "thm3-case3"}) {
    const Construction c = named(name);
    const auto pts = sample_zero_set(c.map, 1000, 42);
    REQUIRE(pts.size() == 1000);
    for (const auto& x : pts) {
      const auto e = eval_map(c.map, x);
      CHECK(std::fabs(e[0]) < 1e-10);
      CHECK(std::fabs(e[1]) < 1e-10);
      CHECK(c.region.contains({x[0], x[1]}, 1e-12));
    }
  }
  const Construction c1 = named("thm3-case1");
  for (const auto& x : sample_zero_set(c1.map, 1000, 1)) CHECK(x[0] >= 0.0);
  CHECK(sample_zero_set(c1.map, 0, 1).empty());

  const SuspensionMap m = named("thm1").map;
  CHECK(sample_zero_set(m, 50, 9, true) == sample_zero_set(m, 50, 9, false));
  CHECK(sample_zero_set(m, 50, 9) != sample_zero_set(m, 50, 10));
}

TEST_CASE("empty region") {
  Construction d = named("disk");
  SuspensionMap m = d.map;
  m.region = d.region.with_window(Box{{5.0, 6.0}, {5.0, 6.0}});
  CHECK_THROWS_AS(sample_zero_set(m, 1, 1), EmptyRegion);
}

TEST_CASE("fibre dimensions do not move the plane projection") {
  const auto a = sample_zero_set(named("thm3-case3", 1, 2).map, 200, 5);
  const auto b = sample_zero_set(named("thm3-case3", 2, 1).map, 200, 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].size() == 5);
    CHECK(a[i][0] == b[i][0]);
    CHECK(a[i][1] == b[i][1]);
  }
}

TEST_CASE("jacobian rank") {
  const SuspensionMap m = named("thm1").map;
  CHECK(jacobian_rank(m, {0.0, 1.0, 0.5, 1.0}).rank == 2);
  // Corner where S1 meets x1 = 1: c_S1(x2) = 1 at x2 = sqrt(3/2).
  const std::vector<double> corner{1.0, std::sqrt(1.5), 0.0, 0.0};
  const auto e = eval_map(m, corner);
  CHECK(std::fabs(e[0]) < 1e-12);
  CHECK(std::fabs(e[1]) < 1e-12);
  CHECK(jacobian_rank(m, corner).rank == 2);

  auto square = [](const std::vector<double>& x) {
    return std::array<double, 2>{x[0] * x[0], x[0] * x[0]};
  };
  CHECK(jacobian_rank(square, {0.0, 0.0}).rank <= 1);

  // Probes next to the flat point of c0 are taken one-sidedly.
  const SuspensionMap c1 = named("thm3-case1").map;
  CHECK(jacobian_rank(c1, {1e-6, 0.0, 0.5, 0.0}).gap_probe);
}

TEST_CASE("finite differences match the analytic Jacobian") {
  const SuspensionMap m = named("thm1").map;
  for (const auto& x : sample_zero_set(m, 100, 3)) {
    const double x1 = x[0], x2 = x[1];
    Eigen::Matrix<double, 2, 4> J;
    J(0, 0) = -(x1 - c_s2(x2)) + (c_s1(x2) - x1);
    J(0, 1) = dc_s1(x2) * (x1 - c_s2(x2)) - (c_s1(x2) - x1) * dc_s2(x2);
    J(0, 2) = -2.0 * x[2];
    J(0, 3) = 0.0;
    J(1, 0) = -2.0 * x1;
    J(1, 1) = 0.0;
    J(1, 2) = 0.0;
    J(1, 3) = -2.0 * x[3];
    const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::MatrixXd>(J).singularValues();
    const RankReport r = jacobian_rank(m, x);
    REQUIRE(r.singular_values.size() == 2);
    for (int k = 0; k < 2; ++k) {
      CHECK(std::fabs(r.singular_values[static_cast<std::size_t>(k)] - sv(k)) <= 1e-5 * sv(0));
    }
  }
}

TEST_CASE("critical contours of coordinate projections") {
  const ProjectionCount c1 = projection_critical_count(named("thm3-case1").region, 1);
  CHECK(c1.count == 2);
  CHECK(projection_critical_count(named("disk").region, 0).count == 2);
  const ProjectionCount t = projection_critical_count(named("thm1").region, 0, true);
  CHECK(t.count == 2);
  CHECK(t.ends == 2);
  REQUIRE(t.heights.size() == 2);
  CHECK(t.heights[0] == doctest::Approx(-0.5));
  CHECK(t.heights[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(projection_critical_count(named("disk").region, 2), ConfigError);
}

TEST_CASE("samples export") {
  const SuspensionMap m = named("thm1", 2, 1).map;
  const std::string csv = samples_csv(m, sample_zero_set(m, 3, 1));
  CHECK(csv.rfind("x1,x2,y1_1,y1_2,y2_1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
