// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/density.hpp"
#include "lclab/random.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

namespace lclab {

enum class SampleMethod {
  Auto,       // exact when the family has an exact sampler, else hit-and-run
  Exact,
  HitAndRun,  // coordinate hit-and-run with slice-by-bisection
};

struct SamplerConfig {
  SampleMethod method = SampleMethod::Auto;
  std::int64_t burn_in = -1;   // -1: 1000 * n coordinate steps
  std::int64_t thinning = -1;  // -1: n coordinate steps between kept draws
  std::uint64_t seed = 1;
  int chains = 4;              // hit-and-run only
};

/// Points per independently seeded block for exact samplers.
inline constexpr std::int64_t kSampleBlock = 8192;

/// Draws from one block (exact) or one chain (hit-and-run). Deterministic in
/// (density, config, stream).
class PointStream {
 public:
  PointStream(const LogConcaveDensity& density, const SamplerConfig& config, std::uint64_t stream);
  const Vec& next();
  std::int64_t rejection_attempts() const { return attempts_; }

 private:
  Vec draw_exact(const LogConcaveDensity& d);
  void slice_step(int coordinate);

  const LogConcaveDensity* density_;
  bool exact_;
  std::int64_t thinning_;
  Rng rng_;
  Vec x_;
  double psi_ = 0.0;
  std::int64_t attempts_ = 0;
  std::int64_t accepted_ = 0;
};

bool resolves_to_exact(const LogConcaveDensity& density, const SamplerConfig& config);

/// count x n batch of draws, bit-reproducible given the config.
Mat sample(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config);

/// Evaluates k observables on one shared stream of `count` draws and
/// returns the merged accumulator. `fill` writes k values per point.
using MultiObservable = std::function<void(const Vec& x, std::span<double> out)>;
MomentAccumulator mc_accumulate(const LogConcaveDensity& density, int k, const MultiObservable& fill,
                                std::int64_t count, const SamplerConfig& config);

/// Block-parallel Monte Carlo over a generic generator: draw(rng, out)
/// writes k values per draw. Blocks use derive_seed(seed, block).
MomentAccumulator mc_blocks(int k, std::int64_t count, std::uint64_t seed,
                            const std::function<void(Rng&, std::span<double>)>& draw);

/// Throws NonFiniteObservable (naming the point) on NaN or inf values.
MCEstimate mc_integral(const LogConcaveDensity& density, const std::function<double(const Vec&)>& observable,
                       std::int64_t count, const SamplerConfig& config);

/// Tensor-product trapezoid rule over [lo, hi] with `resolution` cells per
/// axis. n <= 3.
double grid_integral(const std::function<double(const Vec&)>& f, const Vec& lo, const Vec& hi, int resolution);

struct PerimeterEstimate {
  MCEstimate estimate;           // includes boundary_term
  double boundary_term = 0.0;    // f mass on the support boundary (uniform measures)
  double upper_cap = 0.0;        // 12 n
  double linear_scale = 0.0;     // n
  std::optional<bool> isotropic;  // empty when no exact covariance is known
};

/// Monte Carlo estimate of the functional perimeter: the mean of |grad psi|,
/// plus f times the boundary area for uniform measures.
PerimeterEstimate estimate_functional_perimeter(const LogConcaveDensity& density, std::int64_t count,
                                                const SamplerConfig& config);

}  // namespace lclab
