// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/density.hpp"
#include "lclab/sampler.hpp"

#include <functional>

namespace lclab {

struct VectorEstimate {
  Vec value;
  Vec std_error;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

struct MatrixEstimate {
  Mat value;
  Mat std_error;  // per entry
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

VectorEstimate barycenter(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config);

/// Sample covariance with per-entry standard errors. Throws SingularEstimate
/// when the estimate is not positive definite.
MatrixEstimate covariance(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config);

struct Isotropization {
  AffineMap map;  // x -> T (x - m), T = Cov^{-1/2}
  LogConcaveDensity density;
};

/// Whitens `density` from a dedicated sample (default 2e5 draws); the
/// returned map is treated as exact afterwards.
Isotropization isotropize(const LogConcaveDensity& density, const SamplerConfig& config,
                          std::int64_t count = 200000);

/// (||f||_inf)^{1/n} det(Cov)^{1/(2n)}. Exact when the covariance is known in
/// closed form; otherwise std_error comes from 10 batch estimates.
Quantity isotropic_constant(const LogConcaveDensity& density, const SamplerConfig& config,
                            std::int64_t count = 200000);

struct FradeliziReport {
  bool bound_holds = false;
  double ratio = 0.0;  // ||f||_inf / f(0)
  double bound = 0.0;  // e^n
};

/// Requires a centered density.
FradeliziReport fradelizi_check(const LogConcaveDensity& density);

/// One-dimensional version for a log-concave density given pointwise and
/// supported in [lo, hi]: the density is centered by quadrature first.
FradeliziReport fradelizi_check_1d(const std::function<double(double)>& density, double lo, double hi);

/// Mean of |grad psi|^{1 + alpha}.
MCEstimate gradient_moment(const LogConcaveDensity& density, double alpha, std::int64_t count,
                           const SamplerConfig& config);

}  // namespace lclab
