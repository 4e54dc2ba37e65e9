#include <cmath>

#include "doctest.h"
#include "umbilic/invariants.hpp"
#include "umbilic/sampling.hpp"
#include "umbilic/tracer.hpp"

using namespace umbilic;

TEST_CASE("radial scaling onto the ellipsoid") {
  const Point4 p = scale_to_ellipsoid({{1.0, 0.0}, {}}, {0.5, 0.0});
  CHECK(p.x() == doctest::Approx(0.816496580927726).epsilon(1e-15));
  CHECK(scale_to_ellipsoid({{}, {1.0, 0.0}}, {0.5, 0.0}).u() == 1.0);
  for (const Point4& q : random_ellipsoid_points({0.9, 0.4}, 200, 3)) CHECK(std::fabs(ellipsoid_rho(q, {0.9, 0.4})) <= 1e-14);
  CHECK_THROWS(scale_to_ellipsoid({}, {0.5, 0.2}));
}

TEST_CASE("config validation") {
  TraceConfig c;
  CHECK_NOTHROW(c.validate());
  c.seed_grid = 7;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.step_len = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.newton_tol = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("seeds") {
  const EllipsoidParams e{0.5, 0.2};
  const TraceConfig cfg;
  const auto seeds = seed_points(e, cfg);
  CHECK(seeds.size() >= 1);
  for (const Point4& s : seeds) {
    CHECK(std::fabs(ellipsoid_rho(s, e)) <= cfg.newton_tol);
    CHECK(std::abs(p_functional(s, e)) <= 1e-9);
  }
  CHECK_THROWS_AS(seed_points({0.5, 0.0}, cfg), InvalidParameters);
  CHECK_THROWS_AS(seed_points({0.5, 0.5}, cfg), InvalidParameters);
}

TEST_CASE("traced variety") {
  const EllipsoidParams e{0.5, 0.2};
  const TraceConfig cfg;
  const TracedVariety v = trace_variety(e, cfg);
  REQUIRE_FALSE(v.components.empty());
  for (const TracedComponent& c : v.components) {
    CHECK(c.closed);
    for (const TracedVertex& x : c.vertices) {
      const double n2 = x.p.norm2();
      CHECK(x.rho_residual <= cfg.newton_tol);
      CHECK(std::max(x.re_residual, x.im_residual) <= cfg.newton_tol * (1 + n2 * n2 * n2));
      // independent check: Q11 through the invariants module
      CHECK(std::abs(cartan_q11(ellipsoid_contractions(x.p, e)).Q11) <= 1e-10);
    }
  }
  CHECK(v.min_gamma_distance() > 1e-2);
  CHECK(v.max_rho_residual() <= 1e-8);
}

TEST_CASE("tracing is deterministic") {
  const EllipsoidParams e{0.4, 0.1};
  const TracedVariety v1 = trace_variety(e), v2 = trace_variety(e);
  REQUIRE(v1.components.size() == v2.components.size());
  for (std::size_t k = 0; k < v1.components.size(); ++k) {
    REQUIRE(v1.components[k].vertices.size() == v2.components[k].vertices.size());
    for (std::size_t m = 0; m < v1.components[k].vertices.size(); ++m) {
      const Point4 &p = v1.components[k].vertices[m].p, &q = v2.components[k].vertices[m].p;
      CHECK(p.z == q.z);
      CHECK(p.w == q.w);
    }
  }
}

TEST_CASE("tracing on the unit sphere gives the same curves") {
  // the sextics are cones, so a trace on S^3 scaled radially lands on V as well
  const EllipsoidParams e{0.5, 0.2};
  TraceConfig cfg;
  const TracedVariety direct = trace_variety(e, cfg);
  cfg.on_sphere = true;
  const TracedVariety sphere = trace_variety(e, cfg);
  REQUIRE(sphere.components.size() == direct.components.size());
  std::vector<Point4> pts;
  for (const auto& c : sphere.components)
    for (const auto& x : c.vertices) {
      pts.push_back(x.p);
      CHECK(std::abs(p_functional(x.p, e)) <= 1e-12);
    }
  std::vector<Point4> dpts;
  for (const auto& c : direct.components)
    for (const auto& x : c.vertices) dpts.push_back(x.p);
  // polylines agree up to the chord error of the step
  CHECK(directed_hausdorff(pts, component_polylines(direct), true) <= 1e-3);
  CHECK(directed_hausdorff(dpts, component_polylines(sphere), true) <= 1e-3);
}

TEST_CASE("near b = a the trace approaches the closed-form curves") {
  const double a = 0.5;
  const TracedVariety v = trace_variety({a, a - 1e-3});
  std::vector<std::vector<Point4>> special;
  std::vector<Point4> sp;
  for (const LocusCurve& c : special_locus_ba(a)) {
    if (std::fabs(*c.tau) == 1.0) continue;
    special.push_back(vertices_of(c));
    sp.insert(sp.end(), special.back().begin(), special.back().end());
  }
  std::vector<Point4> tv;
  for (const auto& c : component_polylines(v)) tv.insert(tv.end(), c.begin(), c.end());
  CHECK(directed_hausdorff(tv, special, true) <= 1e-2);
  CHECK(directed_hausdorff(sp, component_polylines(v), true) <= 1e-2);
}

TEST_CASE("generic-only entry points") {
  CHECK_THROWS_AS(trace_variety({0.5, 0.0}), InvalidParameters);
  CHECK_THROWS_AS(trace_variety({0.5, 0.5}), InvalidParameters);
}
