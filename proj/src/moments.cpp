// SPDX-License-Identifier: Apache-2.0
#include "lclab/moments.hpp"

#include "lclab/numerics.hpp"

#include <cmath>

namespace lclab {

VectorEstimate barycenter(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config) {
  const int n = density.dimension();
  auto acc = mc_accumulate(
      density, n, [](const Vec& x, std::span<double> out) { std::copy(x.begin(), x.end(), out.begin()); }, count,
      config);
  VectorEstimate out{Vec(n), Vec(n), acc.count(), config.seed};
  for (int i = 0; i < n; ++i) {
    const auto e = acc.estimate(i, config.seed);
    out.value[i] = e.value;
    out.std_error[i] = e.std_error;
  }
  return out;
}

MatrixEstimate covariance(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config) {
  const int n = density.dimension();
  const Mat xs = sample(density, count, config);
  const Vec mean = xs.colwise().mean().transpose();
  const Mat centered = xs.rowwise() - mean.transpose();
  const double N = static_cast<double>(count);
  MatrixEstimate out{Mat(n, n), Mat(n, n), count, config.seed};
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Vec prod = centered.col(i).cwiseProduct(centered.col(j));
      const double m = prod.sum() / (N - 1.0);
      const double var = (prod.array() - prod.mean()).square().sum() / (N - 1.0);
      out.value(i, j) = out.value(j, i) = m;
      out.std_error(i, j) = out.std_error(j, i) = std::sqrt(var / N);
    }
  }
  Eigen::LLT<Mat> llt(out.value);
  if (llt.info() != Eigen::Success)
    fail(ErrorKind::SingularEstimate, "sample covariance is not positive definite; increase the sample size");
  return out;
}

Isotropization isotropize(const LogConcaveDensity& density, const SamplerConfig& config, std::int64_t count) {
  SamplerConfig own = config;
  own.seed = derive_seed(config.seed, 0x150);
  const auto mean = barycenter(density, count, own);
  const auto cov = covariance(density, count, own);
  Eigen::SelfAdjointEigenSolver<Mat> eig(cov.value);
  const Mat t = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                eig.eigenvectors().transpose();
  auto map = AffineMap::make(t, -t * mean.value);
  return {map, LogConcaveDensity::pushforward(density, map)};
}

Quantity isotropic_constant(const LogConcaveDensity& density, const SamplerConfig& config, std::int64_t count) {
  const int n = density.dimension();
  const double log_sup = std::log(density.sup_norm());
  auto constant = [&](const Mat& cov) {
    return std::exp(log_sup / n + std::log(cov.determinant()) / (2.0 * n));
  };
  if (auto c = density.exact_covariance()) return {constant(*c), 0.0, true};

  const Mat xs = sample(density, count, config);
  const Mat centered = xs.rowwise() - xs.colwise().mean();
  const Quantity full{constant(centered.transpose() * centered / (count - 1.0)), 0.0, false};
  constexpr int kBatches = 10;
  const std::int64_t per = count / kBatches;
  double s = 0.0, s2 = 0.0;
  for (int b = 0; b < kBatches; ++b) {
    const Mat block = xs.middleRows(b * per, per);
    const Mat cb = block.rowwise() - block.colwise().mean();
    const double v = constant(cb.transpose() * cb / (per - 1.0));
    s += v;
    s2 += v * v;
  }
  const double m = s / kBatches;
  const double var = (s2 - kBatches * m * m) / (kBatches - 1);
  return {full.value, std::sqrt(std::max(var, 0.0) / kBatches), false};
}

FradeliziReport fradelizi_check(const LogConcaveDensity& density) {
  if (!density.is_centered()) fail(ErrorKind::InvalidArgument, "fradelizi_check needs a centered density");
  FradeliziReport r;
  r.ratio = density.sup_norm() / density.density_at_origin();
  r.bound = std::exp(static_cast<double>(density.dimension()));
  r.bound_holds = r.ratio <= r.bound * (1.0 + 1e-12);
  return r;
}

FradeliziReport fradelizi_check_1d(const std::function<double(double)>& density, double lo, double hi) {
  const double mass = numerics::integrate(density, lo, hi);
  const double mean = numerics::integrate([&](double x) { return x * density(x); }, lo, hi) / mass;
  const auto peak = numerics::minimize_convex(
      [&](double x) {
        const double v = density(x);
        return v > 0 ? -std::log(v) : kInf;
      },
      lo, hi);
  FradeliziReport r;
  r.ratio = std::exp(-peak.value) / density(mean);
  r.bound = std::exp(1.0);
  r.bound_holds = r.ratio <= r.bound * (1.0 + 1e-9);
  return r;
}

MCEstimate gradient_moment(const LogConcaveDensity& density, double alpha, std::int64_t count,
                           const SamplerConfig& config) {
  if (alpha < 0) fail(ErrorKind::InvalidArgument, "alpha must be nonnegative");
  return mc_integral(
      density, [&](const Vec& x) { return std::pow(density.gradient(x).norm(), 1.0 + alpha); }, count, config);
}

}  // namespace lclab
