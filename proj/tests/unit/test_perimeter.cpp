// SPDX-License-Identifier: Apache-2.0
#include "lclab/perimeter.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lclab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Gaussian measure of a circle") {
  const auto g = LogConcaveDensity::gaussian(2);
  const double r = 1.3;
  const double expected = r * std::exp(-0.5 * r * r);
  const auto body = ConvexBody::ball(2, r);
  const auto b = mu_perimeter(g, body, PerimeterMethod::Boundary);
  CHECK(std::abs(b.estimate.value - expected) <= 4 * b.estimate.std_error + 1e-9);
  const auto e = mu_perimeter(g, body, PerimeterMethod::Epsilon);
  CHECK(std::abs(e.estimate.value - expected) <= 4 * e.estimate.std_error + e.bias + 1e-3);
  CHECK(e.eps.size() == e.quotients.size());
}

TEST_CASE("Gaussian measure of a square boundary") {
  // Four sides at distance a: 4 * phi(a) * (2 Phi(a) - 1).
  const double a = 0.8;
  const double phi = std::exp(-0.5 * a * a) / std::sqrt(2 * kPi);
  const double expected = 4 * phi * std::erf(a / std::sqrt(2.0));
  const auto b = mu_perimeter(LogConcaveDensity::gaussian(2), ConvexBody::cube(2, a), PerimeterMethod::Boundary);
  CHECK(std::abs(b.estimate.value - expected) <= 4 * b.estimate.std_error + 1e-9);
}

TEST_CASE("co-area integral") {
  // For the planar Gaussian, int |grad f| = E|X| = sqrt(pi / 2).
  const auto g = LogConcaveDensity::gaussian(2);
  CHECK(coarea_integral(g) == doctest::Approx(std::sqrt(kPi / 2)).epsilon(1e-6));
  const double grid = coarea_grid([](const Vec& x) { return std::exp(-0.5 * x.squaredNorm()) / (2 * kPi); });
  CHECK(grid == doctest::Approx(std::sqrt(kPi / 2)).epsilon(5e-3));
  // Norm-exponential on a ball of radius R: |grad psi| = 1 / R everywhere.
  CHECK(coarea_integral(LogConcaveDensity::norm_exponential(ConvexBody::ball(3, 2.0))) ==
        doctest::Approx(0.5).epsilon(1e-9));
  const auto pair = truncated_surface_pair(LogConcaveDensity::norm_exponential(ConvexBody::ball(2, 1.0)), kInf);
  CHECK(pair.moment_part == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pair.boundary_part == doctest::Approx(0.0));
}

TEST_CASE("contour length of a circle") {
  const int points = 401;
  const double hw = 2.0;
  std::vector<double> values(static_cast<std::size_t>(points) * points);
  const double h = 2 * hw / (points - 1);
  for (int j = 0; j < points; ++j)
    for (int i = 0; i < points; ++i) {
      const double x = -hw + i * h, y = -hw + j * h;
      values[i + static_cast<std::size_t>(j) * points] = std::exp(-(x * x + y * y));
    }
  const double r = 1.2;
  CHECK(contour_length(values, points, hw, std::exp(-r * r)) == doctest::Approx(2 * kPi * r).epsilon(1e-3));
}

TEST_CASE("Cauchy projection formula") {
  const auto c = cauchy_projection_avg(ConvexBody::cube(3, 0.5), 20000, 5);
  CHECK(std::abs(c.mean_projection.value - 1.5) <= 4 * c.mean_projection.std_error);
  CHECK(std::abs(c.surface.value - 6.0) <= 4 * c.surface.std_error);
}

TEST_CASE("radial identities") {
  // g(r) = r: Psi(p) = 1 for every p.
  const auto g = [](double r) { return r; };
  CHECK(radial_psi_g(g, 0.5) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(radial_psi_g(g, 4.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(psi_g_log_concave([](double r) { return r * r; }, 10.0, 40));
  const auto id = radial_identities(LogConcaveDensity::gaussian(4));
  CHECK(id.mass == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(id.second_moment == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(id.holds);
}

TEST_CASE("moment measure and Sobolev check") {
  SamplerConfig cfg;
  cfg.seed = 8;
  const auto m = moment_measure(LogConcaveDensity::gaussian(2), 50000, cfg, true);
  CHECK(std::abs(m.first_moment.value - std::sqrt(kPi / 2)) <= 4 * m.first_moment.std_error);
  CHECK(m.points.rows() == 50000);
  const auto s = sobolev_lower_check(LogConcaveDensity::gaussian(3), 50000, cfg);
  CHECK(s.holds);
}
