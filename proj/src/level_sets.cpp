// SPDX-License-Identifier: Apache-2.0
#include "lclab/level_sets.hpp"

#include "lclab/numerics.hpp"

#include <cmath>
#include <sstream>

namespace lclab {
namespace {

void require_even(const LogConcaveDensity& d) {
  if (!d.is_even()) fail(ErrorKind::InvalidArgument, "level sets need an even measure (mode at the origin)");
}

std::string describe(const char* what, const LogConcaveDensity& d, double t) {
  std::ostringstream os;
  os << what << "(" << d.family_name() << ", t=" << t << ")";
  return os.str();
}

double default_box(const LogConcaveDensity& d) {
  if (auto c = d.exact_covariance()) return 3.0 * std::sqrt(c->diagonal().maxCoeff());
  return 3.0;
}

}  // namespace

RegionOracle level_set(const LogConcaveDensity& density, double t) {
  if (t < 0) fail(ErrorKind::InvalidArgument, "level t must be nonnegative");
  require_even(density);
  const auto shared = std::make_shared<const LogConcaveDensity>(density);
  if (auto* ne = std::get_if<NormExponentialFamily>(&density.family())) {
    const auto body = std::make_shared<const ConvexBody>(ne->body);
    return RegionOracle(RegionKind::LevelSet, density.dimension(), describe("R", density, t),
                        [body, t](const Vec& x) { return gauge(*body, x) <= t; }, true);
  }
  const double psi0 = density.potential_at_origin();
  return RegionOracle(RegionKind::LevelSet, density.dimension(), describe("R", density, t),
                      [shared, psi0, t](const Vec& x) { return shared->potential(x) - psi0 <= t; }, true);
}

RegionOracle scaled_level_set(const LogConcaveDensity& density, double t, double factor) {
  if (!(factor > 0)) fail(ErrorKind::InvalidArgument, "scale factor must be positive");
  const auto inner = std::make_shared<const RegionOracle>(level_set(density, t));
  std::ostringstream os;
  os << factor << "*" << inner->description();
  return RegionOracle(RegionKind::ScaledLevelSet, density.dimension(), os.str(),
                      [inner, factor](const Vec& x) { return inner->contains(x / factor); }, true);
}

double level_set_radius(const LogConcaveDensity& density, double t, const Vec& u) {
  if (auto* ne = std::get_if<NormExponentialFamily>(&density.family())) return t / gauge(ne->body, u);
  const double psi0 = density.potential_at_origin();
  auto inside = [&](double s) { return density.potential(s * u) - psi0 <= t; };
  double lo = 0.0, hi = 1.0;
  while (inside(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) fail(ErrorKind::InvalidArgument, "level set is unbounded");
  }
  return numerics::bisect_boundary(inside, lo, hi);
}

std::optional<double> exact_level_set_mass(const LogConcaveDensity& density, double t) {
  const int n = density.dimension();
  return std::visit(
      [&](const auto& f) -> std::optional<double> {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, GaussianFamily>) {
          return numerics::gamma_p(0.5 * n, t);  // |x|^2 / sigma^2 ~ chi^2_n
        } else if constexpr (std::is_same_v<F, NormExponentialFamily>) {
          return numerics::gamma_p(n, t);
        } else if constexpr (std::is_same_v<F, RadialFamily>) {
          if (!f.profile.power) return std::nullopt;
          return numerics::gamma_p(n / *f.profile.power, t);
        } else if constexpr (std::is_same_v<F, UniformFamily>) {
          return 1.0;
        } else if constexpr (std::is_same_v<F, AffinePushforwardFamily>) {
          if (f.map.offset.norm() != 0.0) return std::nullopt;
          return exact_level_set_mass(*f.base, t);  // R_t moves with the linear map
        } else {
          return std::nullopt;
        }
      },
      density.family());
}

MassBoundReport mass_bound_check(const LogConcaveDensity& density, double t, std::int64_t count,
                                 const SamplerConfig& config) {
  const int n = density.dimension();
  const auto region = level_set(density, t);
  MassBoundReport r;
  r.mass = mc_integral(density, [&](const Vec& x) { return region.contains(x) ? 1.0 : 0.0; }, count, config);
  r.exact_mass = exact_level_set_mass(density, t);
  r.headline_bound = 1.0 - std::exp(-t / 4.0);
  r.intermediate_bound = 1.0 - std::exp(n * std::log(2.0) - t / 2.0);
  r.headline_applies = t >= 3.0 * n;
  const double bound = r.headline_applies ? std::max(r.headline_bound, r.intermediate_bound) : r.intermediate_bound;
  r.holds = r.mass.value + 3.0 * r.mass.std_error >= bound;
  return r;
}

BallContainmentReport ball_containment_check(const LogConcaveDensity& density, double t, int directions,
                                             std::uint64_t seed) {
  require_even(density);
  const int n = density.dimension();
  Rng rng(seed);
  const double psi0 = density.potential_at_origin();
  BallContainmentReport r;
  r.min_boundary_radius = kInf;
  r.holds = true;
  for (int i = 0; i < directions; ++i) {
    const Vec u = rng.unit_vector(n);
    const double level = density.potential(u / 3.0) - psi0;
    r.max_level = std::max(r.max_level, level);
    if (!(level <= t)) r.holds = false;
    r.min_boundary_radius = std::min(r.min_boundary_radius, level_set_radius(density, t, u));
  }
  r.within_hypothesis = n >= 10 && t >= 3.0 * n;
  return r;
}

WindowReport gradient_window(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config,
                             int directions) {
  const int n = density.dimension();
  const double factor = (n - 1.0) / n;
  WindowReport r{scaled_level_set(density, 3.0 * n, factor), {}, 0.0, false, 0.0, 9.0 * n * n, false, n >= 10};
  const auto& region = r.region;

  auto acc = mc_accumulate(
      density, 2,
      [&](const Vec& x, std::span<double> out) {
        const bool in = region.contains(x);
        out[0] = in ? 1.0 : 0.0;
        out[1] = in ? density.gradient(x).norm() : 0.0;
      },
      count, config);
  // The accumulator keeps means only; the sampled maximum replays the head
  // of the same stream.
  double sampled_max = 0.0;
  const Mat xs = sample(density, std::min<std::int64_t>(count, 100000), config);
  for (Eigen::Index i = 0; i < xs.rows(); ++i) {
    const Vec x = xs.row(i).transpose();
    if (region.contains(x)) sampled_max = std::max(sampled_max, density.gradient(x).norm());
  }
  r.mass = acc.estimate(0, config.seed);
  r.mass_bound = std::pow(factor, n) * (1.0 - std::exp(-3.0 * n / 4.0));
  r.mass_ok = r.mass.value + 3.0 * r.mass.std_error >= r.mass_bound;

  Rng rng(derive_seed(config.seed, 0xb0));
  double boundary_max = 0.0;
  for (int i = 0; i < directions; ++i) {
    const Vec u = rng.unit_vector(n);
    const double s = factor * level_set_radius(density, 3.0 * n, u) * (1.0 - 1e-12);
    boundary_max = std::max(boundary_max, density.gradient(s * u).norm());
  }
  r.max_gradient = std::max(sampled_max, boundary_max);
  r.gradient_ok = r.max_gradient <= r.gradient_cap;
  return r;
}

WindowIntegralReport grad_sq_window_integral(const LogConcaveDensity& density, std::int64_t count,
                                             const SamplerConfig& config) {
  const int n = density.dimension();
  const auto region = scaled_level_set(density, 3.0 * n, (n - 1.0) / n);
  auto acc = mc_accumulate(
      density, 2,
      [&](const Vec& x, std::span<double> out) {
        const double g = density.gradient(x).norm();
        out[0] = region.contains(x) ? g * g : 0.0;
        out[1] = g;
      },
      count, config);
  WindowIntegralReport r;
  r.estimate = acc.estimate(0, config.seed);
  r.perimeter = acc.estimate(1, config.seed);
  r.chain_bound = 9.0 * n * n * r.perimeter.value;
  r.ratio_to_cube = r.estimate.value / (static_cast<double>(n) * n * n);
  const double rel = r.perimeter.value > 0 ? r.perimeter.std_error / r.perimeter.value : 0.0;
  r.holds = r.estimate.value <= r.chain_bound * (1.0 + 3.0 * rel);
  return r;
}

MarkovSetReport markov_set(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config,
                           double threshold, int trials, double box_half_width) {
  const int n = density.dimension();
  MarkovSetReport r{RegionOracle(RegionKind::Custom, n, "", [](const Vec&) { return false; }, false), 0.0, {}, {},
                    false, {}};
  if (!(threshold > 0)) {
    SamplerConfig own = config;
    own.seed = derive_seed(config.seed, 0xa0);
    r.perimeter = mc_integral(density, [&](const Vec& x) { return density.gradient(x).norm(); }, count, own);
    threshold = 2.0 * r.perimeter.value;
  }
  r.threshold = threshold;
  const auto shared = std::make_shared<const LogConcaveDensity>(density);
  std::ostringstream os;
  os << "{|grad psi| <= " << threshold << "}";
  r.region = RegionOracle(RegionKind::GradientSublevel, n, os.str(),
                          [shared, threshold](const Vec& x) {
                            const double p = shared->potential(x);
                            return std::isfinite(p) && shared->gradient(x).norm() <= threshold;
                          },
                          false);
  r.mass = mc_integral(density, [&](const Vec& x) { return r.region.contains(x) ? 1.0 : 0.0; }, count, config);
  r.mass_ok = r.mass.value + 3.0 * r.mass.std_error >= 0.5;
  const double a = box_half_width > 0 ? box_half_width : default_box(density);
  r.convexity = is_convex_region(r.region, Box{Vec::Constant(n, a)}, trials, derive_seed(config.seed, 0xa1));
  return r;
}

}  // namespace lclab
