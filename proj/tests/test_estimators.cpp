#include <cmath>
#include <functional>

#include "doctest.h"
#include "fixtures.hpp"
#include "vcp/error.hpp"
#include "vcp/estimators.hpp"
#include "vcp/gp_graph.hpp"
#include "vcp/sweep.hpp"

using namespace vcp;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

ParamsInput input(const char* beta, const char* delta, long budget_override = -1) {
  ParamsInput in;
  in.beta = fixtures::q(beta);
  in.delta = fixtures::q(delta);
  in.budget_override = budget_override;
  return in;
}

}  // namespace

TEST_SUITE("estimators") {
  TEST_CASE("parameters for a tiny graph") {
    Params p = make_params(input("0.5", "0.25"), 1);
    CHECK(p.k == 1);
    CHECK(p.keep_all);
    CHECK(p.sample_prob == 1);
    CHECK(p.budget == 1);
  }

  TEST_CASE("parameters follow the sampling formulas") {
    Params p = make_params(input("0.5", "0.25"), 400);
    CHECK(p.k == 4);  // 400^(1/4) = 4.47
    CHECK_FALSE(p.keep_all);
    CHECK(std::fabs(p.sample_prob.get_d() - 0.05) < 1e-12);
    CHECK(p.multiplier * p.sample_prob == 1);
    CHECK(p.budget == static_cast<long>(std::ceil(2.0 * 64 * std::pow(400.0, 0.25) * std::log2(400.0))));
    CHECK(std::fabs(p.c_threshold.get_d() - 1.25 * 16 * std::pow(400.0, 0.25) * std::log2(400.0)) < 1e-9);
    Params zero = make_params(input("0", "0.25"), 400);
    CHECK(zero.k == 1);
    CHECK(zero.keep_all);
    CHECK(make_params(input("0.5", "0.5", 7), 400).budget == 7);
  }

  TEST_CASE("parameter ranges are enforced") {
    CHECK(code_of([] { make_params(input("0.7", "0.25"), 10); }) == ErrorCode::BadArgument);
    CHECK(code_of([] { make_params(input("-0.1", "0.25"), 10); }) == ErrorCode::BadArgument);
    CHECK(code_of([] { make_params(input("0.5", "0"), 10); }) == ErrorCode::BadArgument);
    CHECK(code_of([] { make_params(input("0.5", "1.5"), 10); }) == ErrorCode::BadArgument);
    CHECK_NOTHROW(make_params(input("2/3", "1"), 10));
  }

  TEST_CASE("kept draws hit the sampling rate") {
    Params p = make_params(input("0.5", "0.25"), 400);
    long hits = 0;
    const long trials = 200000;
    for (long i = 0; i < trials; ++i) hits += kept(p, 9, 0, Stream::Fan, i);
    double rate = static_cast<double>(hits) / trials;
    CHECK(std::fabs(rate - 0.05) < 4 * std::sqrt(0.05 * 0.95 / trials));
    CHECK(kept(p, 9, 1, Stream::Cover, 5) == kept(p, 9, 1, Stream::Cover, 5));
  }

  TEST_CASE("component term arithmetic") {
    CHECK(component_term(1, 3, 1, 0) == 3);   // one owner with three parts, enclosed: 2 + 1
    CHECK(component_term(1, 3, 1, 1) == 3);   // same with the box seen once
    CHECK(component_term(1, 0, 0, 0) == 1);
    CHECK(component_term(4, 2, 2, 1) == 10);  // 4*2 - 2 + 4*1
  }

  TEST_CASE("full sampling reproduces exact counts") {
    struct Case {
      Scene s;
      Point p;
      int components;
    };
    std::vector<Case> cases{{fixtures::t2(), Point(5, 1), 2},
                            {fixtures::hidden(), Point(5, 0), 1},
                            {fixtures::pinwheel(), Point(0, 0), 1},
                            {fixtures::five_edges(), Point(-5, -2), 1},
                            {fixtures::three_components(), Point(9, 2), 3}};
    for (auto& c : cases) {
      Engine e(c.s, input("0", "0.25"));
      VisibilityProfile prof = sweep(c.s, c.p);
      CHECK(estimate_ve(e.indexes(), e.params(), c.p) == prof.ve_p);
      CHECK(estimate_C(e.indexes(), c.p) == c.components);
    }
  }

  TEST_CASE("full sampling matches union-find on random scenes") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      Scene s = generate(10, BBox{0, 0, 100, 100}, seed);
      Engine e(s, input("0", "0.25"));
      std::uint64_t state = seed + 40;
      for (int it = 0; it < 30; ++it) {
        Point p = random_admissible_point(s, state);
        VisibilityProfile prof = sweep(s, p);
        GpGraph g = build_gp_graph(s, p, prof);
        CHECK(estimate_ve(e.indexes(), e.params(), p) == prof.ve_p);
        CHECK(estimate_C(e.indexes(), p) == g.component_count);
      }
    }
  }

  TEST_CASE("preprocessing is deterministic") {
    Scene s = generate(10, BBox{0, 0, 100, 100}, 3);
    Engine a(s, input("0.5", "0.25")), b(s, input("0.5", "0.25"));
    REQUIRE(a.indexes().size() == b.indexes().size());
    for (size_t j = 0; j < a.indexes().size(); ++j) {
      CHECK(a.indexes()[j].fans == b.indexes()[j].fans);
      CHECK(a.indexes()[j].covers == b.indexes()[j].covers);
    }
    std::uint64_t state = 2;
    for (int it = 0; it < 10; ++it) {
      Point p = random_admissible_point(s, state);
      CHECK(estimate_C(a.indexes(), p) == estimate_C(b.indexes(), p));
    }
  }

  TEST_CASE("locator estimates agree with direct evaluation") {
    Scene s = generate(10, BBox{0, 0, 100, 100}, 5);
    Engine e(s, input("0.5", "0.25"));
    std::uint64_t state = 6;
    std::vector<Point> pts;
    std::vector<Census> cs;
    for (int it = 0; it < 10; ++it) {
      pts.push_back(random_admissible_point(s, state));
      cs.push_back(census_at(e.triangles(), pts.back()));
    }
    DrawResult d = evaluate_direct(e.triangles(), e.params(), e.params().seed, cs, false);
    for (size_t i = 0; i < pts.size(); ++i) {
      CHECK(d.ve_prime[i] == estimate_ve(e.indexes(), e.params(), pts[i]));
      CHECK(d.c_prime[i] == estimate_C(e.indexes(), pts[i]));
    }
  }

  TEST_CASE("the endpoint estimator is unbiased") {
    Scene s = generate(10, BBox{0, 0, 100, 100}, 7);
    Engine e(s, input("0.5", "0.25"));
    std::uint64_t state = 11;
    Point p = random_admissible_point(s, state);
    int ve = sweep(s, p).ve_p;
    std::vector<Census> cs{census_at(e.triangles(), p)};
    const int R = 400;
    double sum = 0, sq = 0;
    for (int r = 0; r < R; ++r) {
      double v = evaluate_direct(e.triangles(), e.params(), 1000 + r, cs, false).ve_prime[0].get_d();
      sum += v;
      sq += v * v;
    }
    double mean = sum / R;
    double sd = std::sqrt(std::max(0.0, sq / R - mean * mean));
    CHECK(std::fabs(mean - ve) <= 3 * sd / std::sqrt(R) + 1e-12);
  }

  TEST_CASE("delta star values") {
    CHECK(delta_star(fixtures::q("1/2"), Branch::LargeC) == fixtures::q("14/3"));
    CHECK(delta_star(fixtures::q("1/2"), Branch::SmallC) == fixtures::q("9/2"));
    CHECK(delta_star(fixtures::q("1/4"), Branch::LargeC) == fixtures::q("26/15"));
    CHECK(delta_star(fixtures::q("1/4"), Branch::SmallC) == fixtures::q("11/12"));
    CHECK(delta_star(fixtures::q("1/1000000"), Branch::LargeC) < fixtures::q("1/100000"));
    CHECK(code_of([] { delta_star(1, Branch::SmallC); }) == ErrorCode::DeltaTooLarge);
    CHECK(code_of([] { delta_star(0, Branch::LargeC); }) == ErrorCode::BadArgument);
  }

  TEST_CASE("queries answer exactly within the budget") {
    Engine e(fixtures::t1(), input("0.5", "0.25", 2));
    QueryResult r = e.query(Point(5, 1));
    CHECK(r.mode == Mode::Exact);
    CHECK(r.value == 1);
    Engine t2(fixtures::t2(), input("0", "0.25"));
    CHECK(t2.query(Point(5, 1)).value == 2);
  }

  TEST_CASE("queries past the budget use the estimators") {
    Scene s = fixtures::three_components();
    Point p(9, 2);
    Engine e(s, input("0", "0.25", 0));
    QueryResult r = e.query(p);
    CHECK(r.mode != Mode::Exact);
    CHECK(r.ve_prime == 9);
    CHECK(r.c_prime == 3);
    Rational want = r.mode == Mode::ApproxSmallC ? Rational(12) : Rational(Rational(12) - fixtures::q("12/5"));
    CHECK(r.value == want);
    CHECK(r.budget_spent == 1);
    CHECK(e.query(p).value == r.value);
  }

  TEST_CASE("query errors") {
    Engine e(fixtures::t1(), input("0", "1", 0));
    CHECK(code_of([&] { e.query(Point(5, 1)); }) == ErrorCode::DeltaTooLarge);
    CHECK(code_of([&] { e.query(Point(2, 5)); }) == ErrorCode::InadmissibleQuery);
    Scene bad = fixtures::make("0", "0", "10", "10", {{"1", "1", "5", "5"}, {"1", "5", "5", "1"}});
    CHECK(code_of([&] { Engine x(bad, ParamsInput{}); }) == ErrorCode::InvalidScene);
  }
}
