// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/bodies.hpp"
#include "lclab/density.hpp"
#include "lclab/region.hpp"
#include "lclab/sampler.hpp"

#include <optional>

namespace lclab {

/// R_t = {x : psi(x) - psi(0) <= t}. For norm-exponential measures this is
/// the gauge test ||x||_K <= t. Rejects measures that are not even.
RegionOracle level_set(const LogConcaveDensity& density, double t);
/// factor * R_t.
RegionOracle scaled_level_set(const LogConcaveDensity& density, double t, double factor);

/// Distance from 0 to the boundary of R_t along the unit vector u.
double level_set_radius(const LogConcaveDensity& density, double t, const Vec& u);

/// mu(R_t) in closed form where the family allows it.
std::optional<double> exact_level_set_mass(const LogConcaveDensity& density, double t);

struct MassBoundReport {
  MCEstimate mass;
  std::optional<double> exact_mass;
  double headline_bound = 0.0;      // 1 - e^{-t/4}, stated for t >= 3n
  double intermediate_bound = 0.0;  // 1 - 2^n e^{-t/2}
  bool headline_applies = false;
  bool holds = false;  // mass + 3 SE >= the applicable bound
};

MassBoundReport mass_bound_check(const LogConcaveDensity& density, double t, std::int64_t count,
                                 const SamplerConfig& config);

struct BallContainmentReport {
  double min_boundary_radius = 0.0;  // min over sampled u of the radius of R_t
  double max_level = 0.0;            // max over sampled u of psi(u/3) - psi(0)
  bool holds = false;
  bool within_hypothesis = false;    // n >= 10 and t >= 3n
};

BallContainmentReport ball_containment_check(const LogConcaveDensity& density, double t, int directions,
                                             std::uint64_t seed);

struct WindowReport {
  RegionOracle region;  // ((n-1)/n) R_{3n}
  MCEstimate mass;
  double mass_bound = 0.0;  // ((n-1)/n)^n (1 - e^{-3n/4})
  bool mass_ok = false;
  double max_gradient = 0.0;  // over sampled members and boundary ray points
  double gradient_cap = 0.0;  // 9 n^2
  bool gradient_ok = false;
  bool within_hypothesis = false;
};

WindowReport gradient_window(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config,
                             int directions = 2000);

struct WindowIntegralReport {
  MCEstimate estimate;   // int_A |grad psi|^2 dmu
  MCEstimate perimeter;  // int |grad psi| dmu from the same draws
  double chain_bound = 0.0;  // 9 n^2 * perimeter
  double ratio_to_cube = 0.0;  // estimate / n^3
  bool holds = false;  // estimate <= chain_bound * (1 + 3 relative SE of the perimeter)
};

WindowIntegralReport grad_sq_window_integral(const LogConcaveDensity& density, std::int64_t count,
                                             const SamplerConfig& config);

struct MarkovSetReport {
  RegionOracle region;  // {x : |grad psi(x)| <= threshold}
  double threshold = 0.0;
  MCEstimate perimeter;  // empty (n_samples = 0) when the threshold was given
  MCEstimate mass;
  bool mass_ok = false;  // mass + 3 SE >= 1/2
  ConvexityReport convexity;
};

/// Threshold defaults to twice the estimated perimeter; pass a positive
/// `threshold` to override. `box_half_width` <= 0 picks 3 standard deviations.
MarkovSetReport markov_set(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config,
                           double threshold = 0.0, int trials = 10000, double box_half_width = 0.0);

}  // namespace lclab
