// SPDX-License-Identifier: Apache-2.0
#include "lclab/density.hpp"
#include "lclab/level_sets.hpp"
#include "lclab/sampler.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lclab;

TEST_CASE("same seed, same draws, any thread count") {
  const auto d = LogConcaveDensity::isotropic_cube_exponential(3);
  SamplerConfig cfg;
  cfg.seed = 99;
  set_thread_count(1);
  const Mat a = sample(d, 20000, cfg);
  set_thread_count(4);
  const Mat b = sample(d, 20000, cfg);
  set_thread_count(0);
  CHECK(a == b);
  cfg.seed = 100;
  CHECK(a != sample(d, 20000, cfg));
}

TEST_CASE("hit-and-run agrees with exact sampling") {
  const auto d = LogConcaveDensity::product_pexp(2, 3.0);
  SamplerConfig exact, chain;
  exact.seed = chain.seed = 4;
  chain.method = SampleMethod::HitAndRun;
  auto second = [](const Vec& x) { return x.squaredNorm(); };
  const auto e = mc_integral(d, second, 40000, exact);
  const auto h = mc_integral(d, second, 40000, chain);
  CHECK(e.value == doctest::Approx(2.0).epsilon(0.03));
  CHECK(h.value == doctest::Approx(2.0).epsilon(0.06));
  set_thread_count(1);
  const auto h1 = mc_integral(d, second, 4000, chain);
  set_thread_count(3);
  const auto h3 = mc_integral(d, second, 4000, chain);
  set_thread_count(0);
  CHECK(h1.value == h3.value);
}

TEST_CASE("exact samplers match closed-form moments") {
  SamplerConfig cfg;
  cfg.seed = 12;
  // E|x| for the standard Gaussian in R^3 is 2 sqrt(2/pi).
  const auto g = mc_integral(LogConcaveDensity::gaussian(3), [](const Vec& x) { return x.norm(); }, 100000, cfg);
  CHECK(std::abs(g.value - 2.0 * std::sqrt(2.0 / std::numbers::pi)) <= 4.0 * g.std_error);
  // Hyperbolic coordinates: E x^2 from the exact covariance.
  const auto h = LogConcaveDensity::product_profile(1, CoordinateProfile::hyperbolic());
  const auto m2 = mc_integral(h, [](const Vec& x) { return x[0] * x[0]; }, 100000, cfg);
  CHECK(std::abs(m2.value - (*h.exact_covariance())(0, 0)) <= 4.0 * m2.std_error);
}

TEST_CASE("error reporting") {
  const auto d = LogConcaveDensity::gaussian(2);
  SamplerConfig cfg;
  try {
    mc_integral(d, [](const Vec& x) { return x[0] > 0 ? std::log(0.0) : 0.0; }, 100, cfg);
    FAIL("expected NonFiniteObservable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteObservable);
  }
  CHECK_THROWS_AS(grid_integral([](const Vec&) { return 1.0; }, Vec::Zero(4), Vec::Ones(4), 4), Error);
  CHECK(grid_integral([](const Vec& x) { return x[0] * x[1]; }, Vec::Zero(2), Vec::Ones(2), 40) ==
        doctest::Approx(0.25));
  // A tiny truncation stalls the rejection sampler.
  const RegionOracle far(RegionKind::Custom, 2, "far", [](const Vec& x) { return x[0] > 6.0; }, true);
  const auto t = LogConcaveDensity::truncation(d, far, 1e-9);
  cfg.method = SampleMethod::Exact;
  try {
    sample(t, 10, cfg);
    FAIL("expected RejectionStall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RejectionStall);
  }
  const auto u = LogConcaveDensity::radial(2, RadialProfile{"cosh", [](double r) { return std::cosh(r); },
                                                            [](double r) { return std::sinh(r); }, std::nullopt, 1.0});
  CHECK_THROWS_AS(sample(u, 10, cfg), Error);
}

TEST_CASE("truncation sampling matches direct rejection") {
  const auto g = LogConcaveDensity::gaussian(2);
  const auto region = level_set(g, 1.5);
  const auto t = LogConcaveDensity::truncation(g, region, 1.0 - std::exp(-1.5));
  SamplerConfig cfg;
  cfg.seed = 31;
  const RegionOracle half(RegionKind::Custom, 2, "x > 0.5", [](const Vec& x) { return x[0] > 0.5; }, true);
  const auto direct = mc_integral(t, [&](const Vec& x) { return half.contains(x) ? 1.0 : 0.0; }, 40000, cfg);
  const auto joint = mc_integral(g, [&](const Vec& x) { return region.contains(x) && half.contains(x) ? 1.0 : 0.0; },
                                 200000, cfg);
  const double expected = joint.value / (1.0 - std::exp(-1.5));
  CHECK(std::abs(direct.value - expected) <= 3.0 * std::hypot(direct.std_error, joint.std_error / 0.78));
}
