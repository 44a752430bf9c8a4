// SPDX-License-Identifier: Apache-2.0
#include "lclab/calculus.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace lclab;

namespace {

GridFunction quadratic(double a, int points = 401, double hw = 4.0) {
  return GridFunction::sample(1, hw, points, [a](const Vec& x) { return 0.5 * a * x[0] * x[0]; });
}

double max_error_on(const GridFunction& g, double radius, const std::function<double(double)>& exact) {
  double e = 0;
  for (int i = 0; i < g.points; ++i)
    if (std::abs(g.coord(i)) <= radius) e = std::max(e, std::abs(g.at(i) - exact(g.coord(i))));
  return e;
}

}  // namespace

TEST_CASE("Legendre transform of quadratics") {
  const auto phi = quadratic(2.0);
  const auto star = legendre(phi);
  CHECK(max_error_on(star, 3.0, [](double y) { return y * y / 4.0; }) < 2e-4);
  CHECK(convex_on_grid(star));
  // |x| on [-4, 4]: the conjugate is 0 on [-1, 1] and +inf beyond.
  const auto abs = GridFunction::sample(1, 4.0, 401, [](const Vec& x) { return std::abs(x[0]); });
  const auto abs_star = legendre(abs);
  CHECK(abs_star.at(200) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::isinf(abs_star.at(400)));
  auto infinite = abs;
  for (double& v : infinite.values) v = kInf;
  CHECK_THROWS_AS(legendre(infinite), Error);
}

TEST_CASE("inf-convolution and Asplund product") {
  // (a/2)x^2 box (b/2)x^2 = (ab/(a+b))/2 x^2.
  const auto c = inf_convolution(quadratic(1.0), quadratic(3.0));
  CHECK(max_error_on(c, 3.0, [](double x) { return 0.375 * x * x; }) < 1e-3);
  CHECK_THROWS_AS(inf_convolution(quadratic(1.0), quadratic(1.0, 201)), Error);
  // Gaussians: e^{-x^2/2} * e^{-x^2/2} = e^{-x^2/4}.
  const auto f = GridFunction::sample(1, 4.0, 401, [](const Vec& x) { return std::exp(-0.5 * x[0] * x[0]); });
  const auto p = asplund(f, f);
  CHECK(max_error_on(p, 3.0, [](double x) { return std::exp(-0.25 * x * x); }) < 1e-3);
  // t . f(x) = f(x/t)^t.
  const auto d = dilate(f, 2.0);
  CHECK(max_error_on(d, 3.0, [](double x) { return std::exp(-0.25 * x * x); }) < 1e-3);
}

TEST_CASE("grid files round-trip") {
  const auto g = GridFunction::sample(2, 1.5, 11, [](const Vec& x) { return x[0] - 2 * x[1]; });
  const auto stem = (std::filesystem::temp_directory_path() / "lclab_grid_test").string();
  write_grid(g, stem);
  const auto back = read_grid(stem);
  CHECK(back.same_grid(g));
  CHECK(back.values == g.values);
}

TEST_CASE("first variation of a Gaussian along itself") {
  // With g = f standard normal, int f * (t . f) = sqrt(1 + t) (2 pi)^{-t/2},
  // whose derivative at t = 0 is (1 - ln 2 pi) / 2.
  const double ln = 0.5 * std::log(2 * std::numbers::pi);
  auto psi_f = [&](double x) { return 0.5 * x * x + ln; };
  auto psi_g = psi_f;
  const auto v = first_variation(psi_f, psi_g);
  CHECK(v.value == doctest::Approx(0.5 * (1.0 - std::log(2 * std::numbers::pi))).epsilon(1e-4));
  CHECK(v.quotients.size() == v.t.size());
}

TEST_CASE("Moreau envelope") {
  const auto r = moreau([](const Vec& x) { return std::abs(x[0]); }, 1.0, Vec::Constant(1, 3.0));
  CHECK(r.value == doctest::Approx(2.5));
  CHECK(r.argmin[0] == doctest::Approx(2.0));
  // Quadratic in two dimensions: envelope of |x|^2/2 is |x|^2 / (2 (1 + lambda)).
  const Vec x = (Vec(2) << 1.0, -2.0).finished();
  const auto q = moreau([](const Vec& y) { return 0.5 * y.squaredNorm(); }, 0.5, x);
  CHECK(q.value == doctest::Approx(x.squaredNorm() / 3.0).epsilon(1e-6));
}

TEST_CASE("epi-convergence flags a sequence that is not a limit") {
  auto psi = [](const Vec& x) { return x[0] * x[0]; };
  const std::vector<double> lambdas = {1.0, 0.1, 0.01, 0.001};
  const auto good = epi_convergence_check(psi, lambdas, {Vec::Constant(1, 1.0)},
                                          {[](int k) { return Vec::Constant(1, 1.0 + std::pow(0.1, k)); }});
  CHECK(good.clean);
  const auto bad = epi_convergence_check(psi, lambdas, {Vec::Constant(1, 1.0)},
                                         {[](int) { return Vec::Constant(1, 0.0); }});
  CHECK_FALSE(bad.clean);
}

TEST_CASE("entropy of a Gaussian") {
  const double expected = -1.0 * std::log(2 * std::numbers::pi * std::numbers::e);  // n = 2
  const auto q = entropy(LogConcaveDensity::gaussian(2), EntropyMethod::Quadrature);
  CHECK(q.value == doctest::Approx(expected).epsilon(1e-6));
  SamplerConfig cfg;
  cfg.seed = 3;
  const auto mc = entropy(LogConcaveDensity::gaussian(2), EntropyMethod::MonteCarlo, cfg, 100000);
  CHECK(std::abs(mc.value - expected) <= 4 * mc.std_error);
  const auto chain = main_inequality_check(LogConcaveDensity::isotropic_cube_exponential(3), 20000, cfg);
  CHECK(chain.containment);
  CHECK(chain.holds);
}
