// SPDX-License-Identifier: Apache-2.0
#include "lclab/density.hpp"
#include "lclab/level_sets.hpp"
#include "lclab/moments.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lclab;

namespace {

// Midpoint rule on [-a, a]^2, independent of the library's quadrature.
double planar_mass(const LogConcaveDensity& d, double a, int cells) {
  const double h = 2 * a / cells;
  double s = 0;
  Vec x(2);
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j) {
      x << -a + (i + 0.5) * h, -a + (j + 0.5) * h;
      s += std::exp(-d.potential(x));
    }
  return s * h * h;
}

Vec finite_difference(const LogConcaveDensity& d, const Vec& x, double h = 1e-6) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (d.potential(a) - d.potential(b)) / (2 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("families integrate to one in the plane") {
  CHECK(planar_mass(LogConcaveDensity::gaussian(2, 1.3), 12, 600) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(planar_mass(LogConcaveDensity::isotropic_cube_exponential(2), 14, 700) == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(planar_mass(LogConcaveDensity::isotropic_radial_power(2, 3.0), 8, 600) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(planar_mass(LogConcaveDensity::product_pexp(2, 4.0), 5, 500) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(planar_mass(LogConcaveDensity::product_profile(2, CoordinateProfile::hyperbolic()), 40, 800) ==
        doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("gradients match finite differences") {
  Rng rng(2);
  const std::vector<LogConcaveDensity> ds = {
      LogConcaveDensity::gaussian(3), LogConcaveDensity::isotropic_ball_exponential(3),
      LogConcaveDensity::isotropic_radial_power(3, 1.5), LogConcaveDensity::product_pexp(3, 3.0),
      LogConcaveDensity::product_profile(3, CoordinateProfile::hyperbolic()),
      LogConcaveDensity::pushforward(LogConcaveDensity::gaussian(3),
                                     AffineMap::make(Mat::Identity(3, 3) * 2 + Mat::Ones(3, 3) * 0.3,
                                                     Vec::Constant(3, 0.1)))};
  for (const auto& d : ds) {
    const Vec x = rng.normal_vector(3);
    CHECK((d.gradient(x) - finite_difference(d, x)).norm() < 1e-5);
  }
}

TEST_CASE("pexp coordinates have unit variance") {
  for (double p : {1.0, 2.0, 5.0, 16.0}) {
    const double rate = pexp_rate(p);
    // psi = rate |s|^p: Var = Gamma(3/p) / (Gamma(1/p) rate^{2/p}).
    CHECK(std::tgamma(3.0 / p) / std::tgamma(1.0 / p) / std::pow(rate, 2.0 / p) == doctest::Approx(1.0));
  }
  CHECK(pexp_gradient_moment(2.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("isotropic members and sampled covariance") {
  SamplerConfig cfg;
  cfg.seed = 17;
  for (const auto& d : {LogConcaveDensity::isotropic_cube_exponential(3), LogConcaveDensity::isotropic_ball_exponential(3),
                        LogConcaveDensity::isotropic_uniform_cube(3), LogConcaveDensity::isotropic_radial_power(3, 4.0)}) {
    const auto exact = d.exact_covariance();
    REQUIRE(exact);
    CHECK((*exact - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-9);
    const auto est = covariance(d, 60000, cfg);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(est.value(i, j) - (i == j)) <= 4.0 * est.std_error(i, j) + 1e-12);
  }
}

TEST_CASE("isotropize whitens a skewed Gaussian") {
  Mat a(2, 2);
  a << 3.0, 1.0, 0.0, 0.5;
  const auto skew = LogConcaveDensity::pushforward(LogConcaveDensity::gaussian(2), AffineMap::make(a, Vec::Zero(2)));
  SamplerConfig cfg;
  cfg.seed = 5;
  const auto iso = isotropize(skew, cfg, 100000);
  const auto cov = iso.density.exact_covariance();
  REQUIRE(cov);
  CHECK((*cov - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 0.05);
  // The isotropic constant L_f is affine invariant.
  const auto l1 = isotropic_constant(LogConcaveDensity::gaussian(2), cfg);
  const auto l2 = isotropic_constant(skew, cfg);
  CHECK(l1.value == doctest::Approx(l2.value).epsilon(1e-9));
  CHECK(l1.value == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
}

TEST_CASE("Fradelizi ratio") {
  const auto r = fradelizi_check_1d([](double x) { return x >= -1 ? std::exp(-(x + 1)) : 0.0; }, -1.0, 40.0);
  CHECK(r.bound_holds);
  CHECK(r.ratio == doctest::Approx(std::exp(1.0)).epsilon(1e-3));
  CHECK(fradelizi_check(LogConcaveDensity::gaussian(4)).ratio == doctest::Approx(1.0));
}

TEST_CASE("support errors") {
  const auto u = LogConcaveDensity::uniform(ConvexBody::cube(2, 1.0));
  CHECK(std::isinf(u.potential(Vec::Constant(2, 2.0))));
  CHECK_THROWS_AS(u.gradient(Vec::Constant(2, 2.0)), Error);
  CHECK_FALSE(u.essentially_continuous());
  CHECK_THROWS_AS(AffineMap::make(Mat::Zero(2, 2), Vec::Zero(2)), Error);
  const auto t = LogConcaveDensity::truncation(LogConcaveDensity::gaussian(2), level_set(LogConcaveDensity::gaussian(2), 1.0),
                                               1.0 - std::exp(-1.0));
  CHECK_FALSE(t.essentially_continuous());
  try {
    t.gradient(Vec::Constant(2, 5.0));
    FAIL("expected OutsideSupport");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideSupport);
  }
}

TEST_CASE("exponential decay along rays") {
  Rng rng(8);
  for (const auto& d : {LogConcaveDensity::gaussian(3), LogConcaveDensity::isotropic_cube_exponential(3),
                        LogConcaveDensity::product_profile(3, CoordinateProfile::hyperbolic())}) {
    const Vec u = rng.unit_vector(3);
    // psi grows at least linearly far out: psi(20u) - psi(10u) >= psi(10u) - psi(0) > 0.
    const double a = d.potential(Vec::Zero(3)), b = d.potential(10 * u), c = d.potential(20 * u);
    CHECK(b > a);
    CHECK(c - b >= b - a - 1e-9);
  }
}
