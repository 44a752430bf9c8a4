// SPDX-License-Identifier: Apache-2.0
#include "lclab/catalog.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace lclab;

TEST_CASE("built-in keys") {
  const auto c = Catalog::builtin();
  for (const auto& k : Catalog::isotropic_keys()) {
    const auto mu = c.measure(k, 3);
    CHECK(mu.dimension() == 3);
    CHECK(mu.is_even());
  }
  CHECK(c.body_keys().size() == 4);
  CHECK(exact_volume(c.body("cross", 3)) == doctest::Approx(8.0 / 6.0));
  CHECK_THROWS_AS(c.measure("nope", 2), Error);
}

TEST_CASE("inline descriptors") {
  const auto c = Catalog::builtin();
  const auto mu = c.measure(R"({"variant": "norm-exp", "body": {"variant": "box", "parameters": {"half_widths": [1, 2]}}})", 2);
  CHECK(mu.dimension() == 2);
  CHECK(mu.density(Vec::Zero(2)) == doctest::Approx(1.0 / (2.0 * 8.0)));
  CHECK_THROWS_AS(c.measure(R"({"variant": "gaussian", "dimension": 3})", 2), Error);
  CHECK(c.measure(R"({"variant": "gaussian", "dimension": 3})", 0).dimension() == 3);
  CHECK_THROWS_AS(c.measure("{not json", 2), Error);
  const auto shifted = c.measure(R"({"variant": "gaussian", "map": {"offset": [1, 0]}})", 2);
  CHECK_FALSE(shifted.is_even());
  CHECK(shifted.density(Vec::Unit(2, 0)) == doctest::Approx(1.0 / (2 * std::numbers::pi)));
  CHECK_THROWS_AS(c.measure(R"({"variant": "gaussian", "map": {"offset": [1]}})", 2), Error);
}

TEST_CASE("catalog files") {
  const auto path = (std::filesystem::temp_directory_path() / "lclab_catalog_test.json").string();
  {
    std::ofstream out(path);
    out << R"({"measures": {"wide": {"variant": "gaussian", "parameters": {"sigma": 2}}},
               "bodies": {"slab": {"variant": "box", "parameters": {"half_widths": [3, 0.5]}}}})";
  }
  ::setenv("LCLAB_CATALOG", path.c_str(), 1);
  const auto c = Catalog::standard();
  ::unsetenv("LCLAB_CATALOG");
  CHECK(c.measure("wide", 1).density(Vec::Zero(1)) == doctest::Approx(1.0 / (2.0 * std::sqrt(2 * std::numbers::pi))));
  CHECK(exact_volume(c.body("slab", 2)) == doctest::Approx(6.0));
  CHECK_THROWS_AS(c.body("slab", 3), Error);
  Catalog bad = Catalog::builtin();
  CHECK_THROWS_AS(bad.load_file("/nonexistent/catalog.json"), Error);
}
