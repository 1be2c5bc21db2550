#include <doctest.h>

#include <cmath>
#include <random>

#include "reebscape/error.hpp"
#include "reebscape/region.hpp"
#include "reebscape/scenario.hpp"

using namespace reebscape;

namespace {

PlanarRegion named(const std::string& name) {
  Scenario s;
  s.name = name;
  return build_construction(s).region;
}

bool covered(const SliceInterval& iv, const Slice& by, double tol) {
  for (const auto& o : by.intervals) {
    if (o.lo.x2 <= iv.lo.x2 + tol && iv.hi.x2 <= o.hi.x2 + tol) return true;
  }
  return false;
}

bool in_slice(const Slice& s, double x2) {
  for (const auto& iv : s.intervals) {
    if (iv.lo.x2 <= x2 && x2 <= iv.hi.x2) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("thm1 slice at x1 = 0 against the quadratic formula") {
  const Slice s = slice(named("thm1"), 0.0);
  const double r = std::sqrt(0.5);  // (x2 - centre)^2 = 1/2
  REQUIRE(s.intervals.size() == 6);
  for (int i = 0; i < 6; ++i) {
    const double m = -6.0 + 2.0 * i;
    const auto& iv = s.intervals[static_cast<std::size_t>(i)];
    CHECK(std::fabs(iv.lo.x2 - (m + r)) < 1e-9);
    CHECK(std::fabs(iv.hi.x2 - (m + 2.0 - r)) < 1e-9);
    CHECK_FALSE(iv.lo.truncated());
    CHECK_FALSE(iv.hi.truncated());
  }
}

TEST_CASE("thm1 slice at x1 = 0.9 sees only the S1 exclusions") {
  const Slice s = slice(named("thm1"), 0.9);
  const double r = std::sqrt(1.4);
  REQUIRE(s.intervals.size() == 4);
  CHECK(s.intervals[0].lo.truncated());
  CHECK(s.intervals[0].lo.x2 == -6.0);
  CHECK(std::fabs(s.intervals[0].hi.x2 - (-4.0 - r)) < 1e-9);
  CHECK(std::fabs(s.intervals[1].lo.x2 - (-4.0 + r)) < 1e-9);
  CHECK(std::fabs(s.intervals[1].hi.x2 - (-r)) < 1e-9);
  CHECK(std::fabs(s.intervals[2].lo.x2 - r) < 1e-9);
  CHECK(std::fabs(s.intervals[2].hi.x2 - (4.0 - r)) < 1e-9);
  CHECK(std::fabs(s.intervals[3].lo.x2 - (4.0 + r)) < 1e-9);
  CHECK(s.intervals[3].hi.truncated());
  for (const auto& iv : s.intervals) {
    if (!iv.lo.truncated()) CHECK(iv.lo.source == 0);
    if (!iv.hi.truncated()) CHECK(iv.hi.source == 0);
  }
}

TEST_CASE("thm1 slice outside the strip is empty") {
  CHECK(slice(named("thm1"), 1.5).intervals.empty());
}

TEST_CASE("case1 slice at x1 = 0 keeps the zeros of c0 as points") {
  const Slice s = slice(named("thm3-case1"), 0.0);
  REQUIRE_FALSE(s.intervals.empty());
  for (const auto& iv : s.intervals) {
    CHECK(iv.degenerate());
    const double x = iv.lo.x2;
    // Oracle: c0(x) <= 0 forces x = 0 or sin(1/x) = 0.
    const double k = x == 0.0 ? 0.0 : 1.0 / (kPi * std::fabs(x));
    CHECK((x == 0.0 || std::fabs(k - std::round(k)) < 1e-6 * k));
  }
  for (int k = 1; k <= 50; ++k) {
    for (double sg : {-1.0, 1.0}) {
      bool found = false;
      for (const auto& iv : s.intervals) found = found || std::fabs(iv.lo.x2 - sg / (k * kPi)) < 1e-9;
      CHECK(found);
    }
  }
}

TEST_CASE("membership") {
  const PlanarRegion r = named("thm1");
  CHECK(r.contains({0.0, 1.0}));
  CHECK_FALSE(r.contains({0.0, 0.0}));
  CHECK_FALSE(r.contains({0.0, 7.0}));  // outside the window
  CHECK_FALSE(named("disk").contains({2.0, 0.0}));
}

TEST_CASE("boundary events") {
  SUBCASE("thm1: two ends and two vertex tangencies") {
    const auto ev = boundary_events(named("thm1"));
    REQUIRE(ev.size() == 4);
    const double h[] = {-1.0, -0.5, 0.5, 1.0};
    const EventKind k[] = {EventKind::end, EventKind::tangency, EventKind::tangency, EventKind::end};
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::fabs(ev[i].height - h[i]) < 1e-9);
      CHECK(ev[i].kind == k[i]);
    }
  }
  SUBCASE("disk: two tangencies at +-sqrt(R0)") {
    const auto ev = boundary_events(named("disk"));
    REQUIRE(ev.size() == 2);
    CHECK(ev[0].height == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev[1].height == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ev[0].kind == EventKind::tangency);
    CHECK(ev[1].kind == EventKind::tangency);
  }
  SUBCASE("case1: accumulation at the origin") {
    try {
      boundary_events(named("thm3-case1"));
      FAIL("expected AccumulationSuspected");
    } catch (const AccumulationSuspected& e) {
      CHECK(std::fabs(e.focus_x1()) < 1e-12);
      CHECK(std::fabs(e.focus_x2()) < 1e-12);
    }
  }
  SUBCASE("case3: finitely many events") {
    const auto ev = boundary_events(named("thm3-case3"));
    CHECK(ev.size() >= 2);
    CHECK(ev.size() < 10);
  }
}

TEST_CASE("slice invariants on random heights") {
  std::mt19937_64 rng(5);
  const PlanarRegion thm1 = named("thm1");
  const PlanarRegion case3 = named("thm3-case3");
  std::uniform_real_distribution<double> h1(-1.2, 1.2), h3(-0.2, 1.1);

  SUBCASE("dropping a constraint never shrinks a slice") {
    for (int i = 0; i < 50; ++i) {
      const double x1 = h1(rng);
      const Slice s = slice(thm1, x1);
      for (std::size_t k = 0; k < thm1.constraints().size(); ++k) {
        const Slice relaxed = slice(thm1.without_constraint(k), x1);
        for (const auto& iv : s.intervals) CHECK(covered(iv, relaxed, 1e-9));
      }
    }
  }
  SUBCASE("period shift") {
    const PlanarRegion wide = thm1.with_window(Box{{-1.5, 1.5}, {-10.0, 10.0}});
    for (int i = 0; i < 20; ++i) {
      const Slice s = slice(wide, h1(rng));
      for (const auto& iv : s.intervals) {
        if (iv.lo.truncated() || iv.hi.truncated() || iv.hi.x2 + 4.0 > 10.0) continue;
        bool match = false;
        for (const auto& o : s.intervals) {
          match = match || (std::fabs(o.lo.x2 - iv.lo.x2 - 4.0) < 1e-9 &&
                            std::fabs(o.hi.x2 - iv.hi.x2 - 4.0) < 1e-9);
        }
        CHECK(match);
      }
    }
  }
  SUBCASE("endpoint residuals") {
    for (const PlanarRegion* r : {&thm1, &case3}) {
      for (int i = 0; i < 20; ++i) {
        const double x1 = r == &thm1 ? h1(rng) : h3(rng);
        for (const auto& iv : slice(*r, x1).intervals) {
          for (const SliceEnd& e : {iv.lo, iv.hi}) {
            if (e.truncated()) continue;
            const auto& c = r->constraints().at(static_cast<std::size_t>(e.source));
            CHECK(std::fabs(c.curve.side_value({x1, e.x2})) < 1e-9);
          }
        }
      }
    }
  }
  SUBCASE("agreement with pointwise membership") {
    for (int i = 0; i < 20; ++i) {
      const double x1 = h1(rng);
      const Slice s = slice(thm1, x1);
      for (int j = 0; j < 10000; ++j) {
        const double x2 = -6.0 + 12.0 * (j + 0.5) / 10000.0;
        bool near_end = false;
        for (const auto& iv : s.intervals) {
          near_end = near_end || std::fabs(x2 - iv.lo.x2) < 1e-7 || std::fabs(x2 - iv.hi.x2) < 1e-7;
        }
        if (!near_end) CHECK(in_slice(s, x2) == thm1.contains({x1, x2}));
      }
    }
  }
}
