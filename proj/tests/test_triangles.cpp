#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "vcp/error.hpp"
#include "vcp/evg.hpp"
#include "vcp/raycast.hpp"
#include "vcp/sweep.hpp"
#include "vcp/triangles.hpp"

using namespace vcp;

namespace {

Rational area2(const Triangle& t) { return cross(t.b - t.a, t.c - t.a); }

int count_containing(const std::vector<Triangle>& ts, const Point& p) {
  int k = 0;
  for (const auto& t : ts) k += contains(t, p);
  return k;
}

}  // namespace

TEST_SUITE("triangle_covers") {
  TEST_CASE("closed triangle membership") {
    Triangle t{Point(0, 0), Point(4, 0), Point(0, 4), TriKind::EndpointFan, 0};
    CHECK(contains(t, Point(1, 1)));
    CHECK(contains(t, Point(2, 2)));
    CHECK(contains(t, Point(0, 0)));
    CHECK_FALSE(contains(t, Point(3, 3)));
    CHECK_FALSE(contains(t, Point(-1, 1)));
  }

  TEST_CASE("fan of an endpoint on a lone segment covers the box") {
    Scene s = fixtures::t1();
    auto fan = endpoint_fan(s, 0);
    Rational total = 0;
    for (const auto& t : fan) {
      CHECK(area2(t) > 0);
      CHECK(t.kind == TriKind::EndpointFan);
      CHECK(t.owner == 0);
      total += area2(t);
    }
    CHECK(total == 200);
    CHECK(count_containing(fan, Point(5, 1)) == 1);
  }

  TEST_CASE("fan membership matches direct sight") {
    Scene s = generate(12, BBox{0, 0, 100, 100}, 4);
    Evg g = build_evg(s);
    std::uint64_t state = 21;
    for (int e = 0; e < s.endpoint_count(); e += 3) {
      auto fan = endpoint_fan(s, e);
      CHECK(static_cast<int>(fan.size()) <= 2 * g.endpoint_degree[e] + 2 * s.n() + 8);
      for (int it = 0; it < 60; ++it) {
        Point q = random_admissible_point(s, state);
        int k = count_containing(fan, q);
        CHECK(k <= 1);
        CHECK((k == 1) == clear_sight(s, q, s.endpoint(e), Scene::segment_of(e)));
      }
    }
  }

  TEST_CASE("cover multiplicities on two stacked segments") {
    Scene s = fixtures::t2();
    Point p(5, 1);
    CHECK(count_containing(segment_cover(s, 0), p) == 2);
    CHECK(count_containing(segment_cover(s, 1), p) == 1);
    CHECK(count_containing(segment_cover(s, kBoxOwner), p) == 1);
    CHECK_THROWS_AS(segment_cover(s, 2), Error);
  }

  TEST_CASE("a hidden segment has no cover at the query") {
    Scene s = fixtures::hidden();
    CHECK(count_containing(segment_cover(s, 1), Point(5, 0)) == 0);
  }

  TEST_CASE("an enclosed point is in no box cover") {
    Scene s = fixtures::pinwheel();
    CHECK(count_containing(segment_cover(s, kBoxOwner), Point(0, 0)) == 0);
  }

  TEST_CASE("censuses equal the sweep on fixtures") {
    struct Case {
      Scene s;
      Point p;
    };
    std::vector<Case> cases{{fixtures::t1(), Point(5, 1)},     {fixtures::t2(), Point(5, 1)},
                            {fixtures::hidden(), Point(5, 0)}, {fixtures::pinwheel(), Point(0, 0)},
                            {fixtures::five_edges(), Point(-5, -2)}, {fixtures::three_components(), Point(9, 2)}};
    for (const auto& c : cases) {
      TriangleSet vt = build_vt_s(c.s);
      VisibilityProfile prof = sweep(c.s, c.p);
      CHECK(fan_census(vt, c.p) == prof.ve_p);
      auto cover = cover_census(vt, c.p);
      for (int i = 0; i < c.s.n(); ++i) CHECK(cover[i] == prof.subseg_counts[i]);
      CHECK(cover[kBoxOwner] == prof.box_parts);
    }
  }

  TEST_CASE("censuses equal the sweep on random scenes") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      Scene s = generate(12, BBox{0, 0, 100, 100}, seed);
      TriangleSet vt = build_vt_s(s);
      std::uint64_t state = seed;
      for (int it = 0; it < 40; ++it) {
        Point p = random_admissible_point(s, state);
        VisibilityProfile prof = sweep(s, p);
        CHECK(fan_census(vt, p) == prof.ve_p);
        auto cover = cover_census(vt, p);
        for (int i = 0; i < s.n(); ++i) CHECK(cover[i] == prof.subseg_counts[i]);
        CHECK(cover[kBoxOwner] == prof.box_parts);
      }
    }
  }

  TEST_CASE("every triangle is non-degenerate and counter-clockwise") {
    TriangleSet vt = build_vt_s(generate(10, BBox{0, 0, 100, 100}, 2));
    for (const auto& t : vt.fans) CHECK(area2(t) > 0);
    for (const auto& t : vt.covers) CHECK(area2(t) > 0);
    CHECK(vt.total() == vt.fans.size() + vt.covers.size());
  }

  TEST_CASE("triangle text round trip") {
    TriangleSet vt = build_vt_s(fixtures::t2());
    std::string text = save_triangles(vt);
    TriangleSet back = load_triangles(text);
    CHECK(save_triangles(back) == text);
    REQUIRE(back.fans.size() == vt.fans.size());
    REQUIRE(back.covers.size() == vt.covers.size());
    CHECK(back.covers[0].owner == vt.covers[0].owner);
    CHECK_THROWS_AS(load_triangles("vcp-tris v1\ntri e0 FAN 0 0 1 0\n"), Error);
    CHECK_THROWS_AS(load_triangles("vcp-tris v1\ntri q0 FAN 0 0 1 0 0 1\n"), Error);
  }
}
