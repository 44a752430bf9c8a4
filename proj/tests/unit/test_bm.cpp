// SPDX-License-Identifier: Apache-2.0
#include "lclab/bm_verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace lclab;

TEST_CASE("margin vanishes exactly on degenerate triples") {
  const auto g = LogConcaveDensity::gaussian(3);
  const auto K = ConvexBody::cube(3, 1.0);
  const auto L = ConvexBody::ball(3, 1.5);
  for (double lambda : {0.0, 1.0}) {
    const auto r = bm_check(g, K, L, lambda, 0.25);
    CHECK(r.margin == 0.0);
    CHECK(r.verdict == Verdict::Inconclusive);
  }
  const auto same = bm_check(g, K, K, 0.3, 0.25);
  CHECK(same.margin == 0.0);
}

TEST_CASE("Gaussian balls satisfy the 1/n concavity") {
  const auto g = LogConcaveDensity::gaussian(2);
  BMOptions o;
  o.samples = 200000;
  const auto r = bm_check(g, ConvexBody::ball(2, 0.3), ConvexBody::ball(2, 2.5), 0.5, 0.5, o);
  CHECK(r.verdict == Verdict::Holds);
  CHECK(to_string(r.verdict) == "holds");
  // The masses of balls have closed forms 1 - e^{-r^2/2}.
  CHECK(std::abs(r.masses.k.value - (1 - std::exp(-0.045))) <= 4 * r.masses.k.std_error);
  CHECK(std::abs(r.masses.m.value - (1 - std::exp(-0.5 * 1.4 * 1.4))) <= 4 * r.masses.m.std_error);
}

TEST_CASE("argument validation") {
  const auto g = LogConcaveDensity::gaussian(2);
  const auto K = ConvexBody::ball(2, 1.0);
  CHECK_THROWS_AS(bm_check(g, K, K, 1.5, 0.5), Error);
  CHECK_THROWS_AS(bm_check(g, K, K, 0.5, 0.0), Error);
  const auto shifted = LogConcaveDensity::pushforward(g, AffineMap::make(Mat::Identity(2, 2), Vec::Ones(2)));
  CHECK_THROWS_AS(bm_check(shifted, K, K, 0.5, 0.5), Error);
  BMOptions tiny;
  tiny.samples = 2000;
  try {
    bm_check(g, ConvexBody::ball(2, 1e-3), K, 0.5, 0.5, tiny);
    FAIL("expected MassTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MassTooSmall);
  }
}

TEST_CASE("default exponent and random triples") {
  CHECK(default_exponent(2) == doctest::Approx(1.0 / (8 * std::log(2.0))));
  CHECK_THROWS_AS(default_exponent(1), Error);
  const auto t = random_triples(4, 10, 1.0, 9);
  REQUIRE(t.size() == 10);
  CHECK(t[0].label == "box+box");
  CHECK(t[4].label == "box+ball");
  for (const auto& tr : t) {
    CHECK(tr.lambda > 0.0);
    CHECK(tr.lambda < 1.0);
    CHECK(tr.K.dimension() == 4);
  }
}

TEST_CASE("exponent scan is monotone") {
  const auto g = LogConcaveDensity::gaussian(2);
  BMOptions o;
  o.samples = 20000;
  const auto report = concavity_exponent_scan(g, random_triples(2, 10, 1.0, 4), {1.0, 0.1, 0.5, 2.0}, o);
  REQUIRE(report.rows.size() == 4);
  CHECK(report.rows.front().exponent == 0.1);
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    CHECK(report.rows[i].violated >= report.rows[i - 1].violated);
  CHECK(report.largest_without_violation >= 0.1);
}
