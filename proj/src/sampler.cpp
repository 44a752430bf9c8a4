// SPDX-License-Identifier: Apache-2.0
#include "lclab/sampler.hpp"

#include "lclab/numerics.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace lclab {
namespace {

struct BlockPlan {
  std::vector<std::int64_t> sizes;
};

BlockPlan plan_blocks(std::int64_t count, bool exact, int chains) {
  BlockPlan plan;
  if (count <= 0) return plan;
  if (exact) {
    for (std::int64_t done = 0; done < count; done += kSampleBlock)
      plan.sizes.push_back(std::min(kSampleBlock, count - done));
  } else {
    const std::int64_t c = std::max(1, chains);
    for (std::int64_t i = 0; i < c; ++i) plan.sizes.push_back(count / c + (i < count % c ? 1 : 0));
  }
  return plan;
}

std::string format_point(const Vec& x) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

// Devroye's generator for a log-concave density on [0, inf) with its mode
// at 0, rescaled so that the density at 0 is one.
double draw_half_profile(const CoordinateProfile& profile, double log_norm_1d, Rng& rng) {
  const double c = 2.0 * std::exp(-profile.phi(0.0) - log_norm_1d);  // half-density at 0
  for (;;) {
    const double x = rng.uniform() < 0.5 ? rng.uniform() : 1.0 + rng.exponential();
    const double envelope = x <= 1.0 ? 1.0 : std::exp(1.0 - x);
    const double target = std::exp(-(profile.phi(x / c) - profile.phi(0.0)));
    if (rng.uniform() * envelope <= target) return x / c;
  }
}

}  // namespace

bool resolves_to_exact(const LogConcaveDensity& density, const SamplerConfig& config) {
  switch (config.method) {
    case SampleMethod::Exact:
      if (!density.has_exact_sampler())
        fail(ErrorKind::UnsupportedVariant, "no exact sampler for " + density.family_name());
      return true;
    case SampleMethod::HitAndRun:
      return false;
    case SampleMethod::Auto:
      break;
  }
  return density.has_exact_sampler();
}

PointStream::PointStream(const LogConcaveDensity& density, const SamplerConfig& config, std::uint64_t stream)
    : density_(&density),
      exact_(resolves_to_exact(density, config)),
      thinning_(config.thinning > 0 ? config.thinning : density.dimension()),
      rng_(derive_seed(config.seed, stream)) {
  if (exact_) return;
  const int n = density.dimension();
  x_ = Vec::Zero(n);
  psi_ = density.potential(x_);
  if (!std::isfinite(psi_))
    fail(ErrorKind::InvalidArgument, "hit-and-run needs the origin inside the support");
  const std::int64_t burn = config.burn_in >= 0 ? config.burn_in : 1000LL * n;
  for (std::int64_t s = 0; s < burn; ++s) slice_step(static_cast<int>(rng_.uniform() * n));
}

Vec PointStream::draw_exact(const LogConcaveDensity& d) {
  const int n = d.dimension();
  return std::visit(
      [&](const auto& f) -> Vec {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, GaussianFamily>) {
          return f.sigma * rng_.normal_vector(n);
        } else if constexpr (std::is_same_v<F, NormExponentialFamily>) {
          // Radial part Gamma(n + 1) times a uniform point of K.
          const double s = rng_.gamma(n + 1.0);
          return s * sample_uniform(f.body, rng_);
        } else if constexpr (std::is_same_v<F, RadialFamily>) {
          const double q = *f.profile.power;
          const double r = f.profile.scale * std::pow(rng_.gamma(n / q), 1.0 / q);
          return r * rng_.unit_vector(n);
        } else if constexpr (std::is_same_v<F, ProductPExpFamily>) {
          Vec x(n);
          for (int i = 0; i < n; ++i) {
            const double mag = std::pow(rng_.gamma(1.0 / f.p) / f.rate, 1.0 / f.p);
            x[i] = rng_.uniform() < 0.5 ? -mag : mag;
          }
          return x;
        } else if constexpr (std::is_same_v<F, ProductProfileFamily>) {
          Vec x(n);
          for (int i = 0; i < n; ++i) {
            const double mag = draw_half_profile(f.profile, f.log_normalizer_1d, rng_);
            x[i] = rng_.uniform() < 0.5 ? -mag : mag;
          }
          return x;
        } else if constexpr (std::is_same_v<F, UniformFamily>) {
          return sample_uniform(f.body, rng_);
        } else if constexpr (std::is_same_v<F, AffinePushforwardFamily>) {
          return f.map.apply(draw_exact(*f.base));
        } else {
          static_assert(std::is_same_v<F, TruncationFamily>);
          for (;;) {
            Vec y = draw_exact(*f.base);
            ++attempts_;
            if (f.region.contains(y)) {
              ++accepted_;
              return y;
            }
            if (attempts_ >= 10000 && accepted_ < attempts_ / 1000)
              fail(ErrorKind::RejectionStall, "truncation acceptance below 1e-3 for " + f.region.description());
          }
        }
      },
      d.family());
}

void PointStream::slice_step(int i) {
  const double level = psi_ + rng_.exponential();
  const double xi = x_[i];
  auto inside = [&](double t) {
    x_[i] = xi + t;
    return density_->potential(x_) <= level;
  };
  auto endpoint = [&](double dir) {
    double good = 0.0, step = 1.0;
    while (inside(dir * step)) {
      good = step;
      step *= 2.0;
      if (step > 1e12) fail(ErrorKind::InvalidArgument, "potential slice is unbounded");
    }
    return dir * numerics::bisect_boundary([&](double s) { return inside(dir * s); }, good, step,
                                           1e-12 * (1.0 + step));
  };
  double lo = endpoint(-1.0), hi = endpoint(1.0);
  for (;;) {
    const double t = lo + (hi - lo) * rng_.uniform();
    x_[i] = xi + t;
    const double p = density_->potential(x_);
    if (p <= level) {
      psi_ = p;
      return;
    }
    (t < 0 ? lo : hi) = t;  // shrink after a bisection-tolerance miss
  }
}

const Vec& PointStream::next() {
  if (exact_) {
    x_ = draw_exact(*density_);
    return x_;
  }
  const int n = density_->dimension();
  for (std::int64_t s = 0; s < thinning_; ++s) slice_step(static_cast<int>(rng_.uniform() * n));
  return x_;
}

Mat sample(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config) {
  const int n = density.dimension();
  const auto plan = plan_blocks(count, resolves_to_exact(density, config), config.chains);
  std::vector<std::int64_t> offsets(plan.sizes.size() + 1, 0);
  for (std::size_t b = 0; b < plan.sizes.size(); ++b) offsets[b + 1] = offsets[b] + plan.sizes[b];
  Mat out(count, n);
  parallel_blocks(static_cast<int>(plan.sizes.size()), [&](int b) {
    PointStream stream(density, config, static_cast<std::uint64_t>(b));
    for (std::int64_t r = 0; r < plan.sizes[b]; ++r) out.row(offsets[b] + r) = stream.next().transpose();
  });
  return out;
}

MomentAccumulator mc_accumulate(const LogConcaveDensity& density, int k, const MultiObservable& fill,
                                std::int64_t count, const SamplerConfig& config) {
  const auto plan = plan_blocks(count, resolves_to_exact(density, config), config.chains);
  std::vector<MomentAccumulator> parts(plan.sizes.size(), MomentAccumulator(k));
  parallel_blocks(static_cast<int>(plan.sizes.size()), [&](int b) {
    PointStream stream(density, config, static_cast<std::uint64_t>(b));
    std::vector<double> values(k);
    for (std::int64_t r = 0; r < plan.sizes[b]; ++r) {
      fill(stream.next(), values);
      parts[b].add(values);
    }
  });
  MomentAccumulator total(k);
  for (const auto& p : parts) total.merge(p);
  return total;
}

MomentAccumulator mc_blocks(int k, std::int64_t count, std::uint64_t seed,
                            const std::function<void(Rng&, std::span<double>)>& draw) {
  const auto plan = plan_blocks(count, true, 1);
  std::vector<MomentAccumulator> parts(plan.sizes.size(), MomentAccumulator(k));
  parallel_blocks(static_cast<int>(plan.sizes.size()), [&](int b) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    std::vector<double> values(k);
    for (std::int64_t r = 0; r < plan.sizes[b]; ++r) {
      draw(rng, values);
      parts[b].add(values);
    }
  });
  MomentAccumulator total(k);
  for (const auto& p : parts) total.merge(p);
  return total;
}

MCEstimate mc_integral(const LogConcaveDensity& density, const std::function<double(const Vec&)>& observable,
                       std::int64_t count, const SamplerConfig& config) {
  auto acc = mc_accumulate(
      density, 1,
      [&](const Vec& x, std::span<double> out) {
        const double v = observable(x);
        if (!std::isfinite(v))
          fail(ErrorKind::NonFiniteObservable, "observable is not finite at " + format_point(x));
        out[0] = v;
      },
      count, config);
  return acc.estimate(0, config.seed);
}

double grid_integral(const std::function<double(const Vec&)>& f, const Vec& lo, const Vec& hi, int resolution) {
  const int n = static_cast<int>(lo.size());
  if (n > 3) fail(ErrorKind::DimensionTooLarge, "grid_integral supports n <= 3");
  if (n < 1 || hi.size() != n || resolution < 1) fail(ErrorKind::InvalidArgument, "bad grid");
  const Vec h = (hi - lo) / resolution;
  const int nodes = resolution + 1;
  std::int64_t total = 1;
  for (int d = 0; d < n; ++d) total *= nodes;
  // Sum one hyperplane slab per block and reduce in order.
  std::vector<double> slab(nodes, 0.0);
  parallel_blocks(nodes, [&](int i0) {
    Vec x(n);
    std::vector<int> idx(n, 0);
    idx[0] = i0;
    const std::int64_t inner = total / nodes;
    double s = 0.0;
    for (std::int64_t m = 0; m < inner; ++m) {
      std::int64_t rem = m;
      double w = 1.0;
      for (int d = n - 1; d >= 1; --d) {
        idx[d] = static_cast<int>(rem % nodes);
        rem /= nodes;
      }
      for (int d = 0; d < n; ++d) {
        x[d] = lo[d] + idx[d] * h[d];
        if (idx[d] == 0 || idx[d] == resolution) w *= 0.5;
      }
      s += w * f(x);
    }
    slab[i0] = s;
  });
  double sum = 0.0;
  for (double s : slab) sum += s;
  return sum * h.prod();
}

PerimeterEstimate estimate_functional_perimeter(const LogConcaveDensity& density, std::int64_t count,
                                                const SamplerConfig& config) {
  const int n = density.dimension();
  PerimeterEstimate out;
  out.estimate = mc_integral(density, [&](const Vec& x) { return density.gradient(x).norm(); }, count, config);
  if (const auto* u = std::get_if<UniformFamily>(&density.family())) {
    out.boundary_term = density.density_at_origin() * surface_area(u->body).value;
    out.estimate.value += out.boundary_term;
  } else if (std::holds_alternative<TruncationFamily>(density.family())) {
    fail(ErrorKind::UnsupportedVariant, "functional perimeter of a truncation needs its boundary term");
  }
  out.upper_cap = 12.0 * n;
  out.linear_scale = n;
  if (auto cov = density.exact_covariance()) {
    const bool centered = density.exact_mean() && density.exact_mean()->norm() <= 1e-9;
    out.isotropic = centered && (*cov - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8;
  }
  return out;
}

}  // namespace lclab
