// SPDX-License-Identifier: Apache-2.0
#include "lclab/bodies.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lclab;
using std::numbers::pi;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

// Distance from x to an axis box, clamping coordinate by coordinate.
double box_distance(const Vec& x, const Vec& w) {
  return (x.cwiseAbs() - w).cwiseMax(0.0).norm();
}

}  // namespace

TEST_CASE("closed-form volumes and surface areas") {
  CHECK(exact_volume(ConvexBody::ball(2, 2.0)) == doctest::Approx(4.0 * pi));
  CHECK(exact_surface_area(ConvexBody::ball(3, 1.0)) == doctest::Approx(4.0 * pi));
  CHECK(exact_volume(ConvexBody::cube(4, 0.5)) == doctest::Approx(1.0));
  CHECK(exact_surface_area(ConvexBody::cube(3, 0.5)) == doctest::Approx(6.0));
  // Cross-polytope: 2^n / n!.
  CHECK(exact_volume(ConvexBody::lp_ball(3, 1.0, 1.0)) == doctest::Approx(8.0 / 6.0));
  CHECK(unit_ball_volume(5) == doctest::Approx(8.0 * pi * pi / 15.0));
}

TEST_CASE("polytope decomposition agrees with box formulas") {
  Mat normals(4, 2);
  normals << 1, 0, -1, 0, 0, 1, 0, -1;
  const Vec offsets = (Vec(4) << 1.0, 1.0, 2.0, 2.0).finished();
  const auto rect = ConvexBody::h_polytope(normals, offsets);
  CHECK(exact_volume(rect) == doctest::Approx(8.0));
  CHECK(exact_surface_area(rect) == doctest::Approx(12.0));
  CHECK(rect.facets()->vertices.rows() == 4);

  Mat cube_vertices(8, 3);
  for (int k = 0; k < 8; ++k)
    for (int i = 0; i < 3; ++i) cube_vertices(k, i) = (k >> i & 1) ? 0.5 : -0.5;
  const auto cube = ConvexBody::v_polytope(cube_vertices);
  CHECK(exact_volume(cube) == doctest::Approx(1.0));
  CHECK(exact_surface_area(cube) == doctest::Approx(6.0));
  CHECK(boundary_simplices(cube).size() == 24);
}

TEST_CASE("support, gauge and polar") {
  const Vec w = (Vec(3) << 1.0, 2.0, 3.0).finished();
  const auto box = ConvexBody::box(w);
  const Vec u = (Vec(3) << 0.3, -0.5, 0.2).finished();
  CHECK(support(box, u) == doctest::Approx(0.3 * 1 + 0.5 * 2 + 0.2 * 3));
  CHECK(gauge(box, (Vec(3) << 0.5, 3.0, 0.0).finished()) == doctest::Approx(1.5));
  CHECK(gauge(ConvexBody::lp_ball(2, 1.0, 2.0), v2(1.0, -1.0)) == doctest::Approx(1.0));
  // The polar of the box is the cross-polytope with vertices e_i / w_i.
  const auto p = polar(box);
  CHECK(support(p, u) == doctest::Approx(std::max({0.3 / 1, 0.5 / 2, 0.2 / 3})));
  CHECK(gauge(polar(ConvexBody::ball(2, 4.0)), v2(0.25, 0.0)) == doctest::Approx(1.0));
  // Lowest-index facet on ties.
  const Vec g = gauge_gradient(ConvexBody::cube(2, 1.0), v2(1.0, 1.0));
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(g[1] == doctest::Approx(0.0));
}

TEST_CASE("Minkowski combinations") {
  const auto a = ConvexBody::box(v2(1.0, 2.0));
  const auto b = ConvexBody::box(v2(3.0, 1.0));
  const auto m = minkowski_combo(a, b, 0.25);
  CHECK(m.variant_name() == "box");
  CHECK(support(m, v2(1, 0)) == doctest::Approx(0.25 * 1 + 0.75 * 3));
  CHECK(minkowski_combo(a, b, 1.0).same_representation(a));

  // Box plus ball through the support oracle: x is a member iff its distance
  // to the scaled box is at most the scaled radius.
  const auto ball = ConvexBody::ball(2, 1.5);
  const double lambda = 0.4;
  const auto mix = minkowski_combo(a, ball, lambda);
  CHECK(mix.variant_name() == "minkowski-combination");
  Rng rng(3);
  int agree = 0, outer_ok = 0;
  for (int k = 0; k < 400; ++k) {
    const Vec x = rng.uniform(-3.0, 3.0) * Vec::Unit(2, 0) + rng.uniform(-3.0, 3.0) * Vec::Unit(2, 1);
    const bool exact = box_distance(x, lambda * v2(1.0, 2.0)) <= (1 - lambda) * 1.5;
    agree += contains(mix, x) == exact;
    outer_ok += !exact || contains_direction_net(mix, x, 64, 9);
  }
  CHECK(agree == 400);
  CHECK(outer_ok == 400);
  CHECK(distance(mix, v2(3.0, 0.0)) == doctest::Approx(3.0 - 0.4 - 0.9).epsilon(1e-6));
}

TEST_CASE("Monte Carlo volume carries a standard error") {
  const auto l3 = ConvexBody::lp_ball(6, 3.0, 1.0);
  const auto q = volume(l3, {100000, 5});
  const double exact = std::pow(2.0 * std::tgamma(1.0 + 1.0 / 3.0), 6) / std::tgamma(1.0 + 6.0 / 3.0);
  if (q.exact) {
    CHECK(q.value == doctest::Approx(exact));
  } else {
    CHECK(std::abs(q.value - exact) <= 4.0 * q.std_error);
  }
}

TEST_CASE("isoperimetric sanity on exact bodies") {
  for (const auto& body : {ConvexBody::cube(3, 1.0), ConvexBody::lp_ball(2, 1.0, 1.0), ConvexBody::ball(3, 0.7),
                           ConvexBody::box(v2(0.2, 5.0))}) {
    const int n = body.dimension();
    const double ratio = exact_surface_area(body) / std::pow(exact_volume(body), (n - 1.0) / n);
    CHECK(ratio >= n * std::pow(unit_ball_volume(n), 1.0 / n) * (1 - 1e-9));
  }
}

TEST_CASE("uniform sampling stays inside and projections") {
  Rng rng(11);
  const auto body = ConvexBody::lp_ball(3, 1.5, 2.0);
  for (int k = 0; k < 200; ++k) CHECK(contains(body, sample_uniform(body, rng)));
  // Shadow of the unit cube along a diagonal is a regular hexagon of area sqrt(3).
  CHECK(projection_volume(ConvexBody::cube(3, 0.5), Vec::Constant(3, 1.0 / std::sqrt(3.0))) ==
        doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("convexity witness on the hyperbolic cross") {
  const RegionOracle cross(RegionKind::Custom, 2, "|x||y| <= 1",
                           [](const Vec& x) { return std::abs(x[0] * x[1]) <= 1.0; }, false);
  const auto r = is_convex_region(cross, Box{Vec::Constant(2, 3.0)}, 10000, 4);
  CHECK_FALSE(r.convex_witnessed);
  CHECK_FALSE(cross.contains(r.midpoint));
  const auto ball = is_convex_region(body_region(ConvexBody::ball(2, 1.0)), Box{Vec::Constant(2, 1.0)}, 2000, 4);
  CHECK(ball.convex_witnessed);
}
