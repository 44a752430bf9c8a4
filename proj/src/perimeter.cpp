// SPDX-License-Identifier: Apache-2.0
#include "lclab/perimeter.hpp"

#include "lclab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lclab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double measure_scale(const LogConcaveDensity& d) {
  if (auto c = d.exact_covariance()) return std::sqrt(c->diagonal().maxCoeff());
  return 1.0;
}

// Uniform sampler on the boundary of a body together with its total area.
struct BoundarySampler {
  double area = 0.0;
  std::function<Vec(Rng&)> draw;
};

std::optional<BoundarySampler> boundary_sampler(const ConvexBody& body) {
  const int n = body.dimension();
  if (auto* b = std::get_if<EuclideanBall>(&body.variant())) {
    const double r = b->radius;
    return BoundarySampler{n * unit_ball_volume(n) * std::pow(r, n - 1),
                           [r, n](Rng& rng) -> Vec { return r * rng.unit_vector(n); }};
  }
  if (auto* b = std::get_if<Box>(&body.variant())) {
    const Vec w = b->half_widths;
    Vec faces(n);
    for (int i = 0; i < n; ++i) {
      double a = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) a *= 2.0 * w[j];
      faces[i] = a;
    }
    const double total = 2.0 * faces.sum();
    Vec cumulative(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) cumulative[i] = (acc += faces[i] / faces.sum());
    return BoundarySampler{total, [w, cumulative, n](Rng& rng) -> Vec {
                             const double pick = rng.uniform();
                             int face = 0;
                             while (face < n - 1 && pick > cumulative[face]) ++face;
                             Vec x(n);
                             for (int j = 0; j < n; ++j) x[j] = rng.uniform(-w[j], w[j]);
                             x[face] = rng.uniform() < 0.5 ? -w[face] : w[face];
                             return x;
                           }};
  }
  if (body.is_polytope() && n >= 2 && n <= 3) {
    auto simplices = std::make_shared<const std::vector<Mat>>(boundary_simplices(body));
    std::vector<double> cumulative;
    double total = 0.0;
    for (const Mat& s : *simplices) {
      double a = 0.0;
      if (n == 2) {
        a = (s.row(1) - s.row(0)).norm();
      } else {
        const Eigen::Vector3d e1 = (s.row(1) - s.row(0)).transpose();
        const Eigen::Vector3d e2 = (s.row(2) - s.row(0)).transpose();
        a = 0.5 * e1.cross(e2).norm();
      }
      total += a;
      cumulative.push_back(total);
    }
    for (double& c : cumulative) c /= total;
    return BoundarySampler{total, [simplices, cumulative, n](Rng& rng) -> Vec {
                             const double pick = rng.uniform();
                             const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), pick);
                             const Mat& s = (*simplices)[std::min<std::size_t>(it - cumulative.begin(),
                                                                                simplices->size() - 1)];
                             if (n == 2) return Vec(s.row(0) + rng.uniform() * (s.row(1) - s.row(0)));
                             double a = rng.uniform(), b = rng.uniform();
                             if (a + b > 1.0) {
                               a = 1.0 - a;
                               b = 1.0 - b;
                             }
                             return Vec(s.row(0) + a * (s.row(1) - s.row(0)) + b * (s.row(2) - s.row(0)));
                           }};
  }
  return std::nullopt;
}

// Integral over r in [0, inf) of r^{n-1} g'(r) e^{-(g(r) - g(0))}.
double radial_gradient_integral(const LogConcaveDensity& d) {
  const int n = d.dimension();
  const Vec e = Vec::Unit(n, 0);
  const double g0 = d.potential_at_origin();
  return numerics::integrate_to_infinity([&](double r) {
    if (r == 0.0) return 0.0;
    const Vec x = r * e;
    return std::pow(r, n - 1) * d.gradient(x).norm() * std::exp(-(d.potential(x) - g0));
  });
}

bool radial_like(const LogConcaveDensity& d) {
  return std::holds_alternative<GaussianFamily>(d.family()) || std::holds_alternative<RadialFamily>(d.family());
}

}  // namespace

PerimeterResult mu_perimeter(const LogConcaveDensity& density, const ConvexBody& body, PerimeterMethod method,
                             const PerimeterOptions& options) {
  const int n = density.dimension();
  if (body.dimension() != n) fail(ErrorKind::InvalidArgument, "body and measure dimensions differ");
  PerimeterResult r;
  r.method = method;
  if (method == PerimeterMethod::Boundary) {
    if (n == 1) {
      const Vec a = Vec::Constant(1, support(body, Vec::Ones(1)));
      r.estimate = {density.density(a) + density.density(-a), 0.0, 0, options.seed};
      return r;
    }
    auto sampler = boundary_sampler(body);
    if (!sampler) fail(ErrorKind::UnsupportedVariant, "boundary method needs a ball, box or polytope with n <= 3");
    auto acc = mc_blocks(1, options.samples, options.seed, [&](Rng& rng, std::span<double> out) {
      out[0] = sampler->area * density.density(sampler->draw(rng));
    });
    r.estimate = acc.estimate(0, options.seed);
    return r;
  }

  double scale = kInf;
  for (int i = 0; i < n; ++i) scale = std::min(scale, support(body, Vec::Unit(n, i)));
  for (int k = options.k_min; k <= options.k_max; ++k) r.eps.push_back(scale * std::ldexp(1.0, -k));
  const int levels = static_cast<int>(r.eps.size());
  if (levels < 2) fail(ErrorKind::InvalidArgument, "epsilon sweep needs at least two levels");
  // Least-squares intercept of quotient against eps, as fixed weights.
  double mean_eps = 0.0;
  for (double e : r.eps) mean_eps += e / levels;
  double sxx = 0.0;
  for (double e : r.eps) sxx += (e - mean_eps) * (e - mean_eps);
  std::vector<double> weight(levels);
  for (int k = 0; k < levels; ++k) weight[k] = 1.0 / levels - mean_eps * (r.eps[k] - mean_eps) / sxx;

  SamplerConfig cfg;
  cfg.seed = options.seed;
  auto acc = mc_accumulate(
      density, levels + 1,
      [&](const Vec& x, std::span<double> out) {
        const double d = distance(body, x);
        double intercept = 0.0;
        for (int k = 0; k < levels; ++k) {
          out[k + 1] = (d > 0.0 && d <= r.eps[k]) ? 1.0 / r.eps[k] : 0.0;
          intercept += weight[k] * out[k + 1];
        }
        out[0] = intercept;
      },
      options.samples, cfg);
  r.estimate = acc.estimate(0, options.seed);
  for (int k = 0; k < levels; ++k) r.quotients.push_back(acc.mean(k + 1));
  r.bias = std::abs(r.quotients.back() - r.estimate.value);
  return r;
}

double coarea_integral(const LogConcaveDensity& density) {
  const int n = density.dimension();
  const double f0 = density.density_at_origin();
  return std::visit(
      overloaded{
          [&](const GaussianFamily& g) {
            return std::exp(std::log(f0) + std::log(static_cast<double>(n)) + log_unit_ball_volume(n) +
                            (n - 1) * std::log(g.sigma) + 0.5 * (n - 1) * std::log(2.0) + std::lgamma(0.5 * (n + 1)));
          },
          [&](const NormExponentialFamily& f) { return f0 * surface_area(f.body).value * std::tgamma(n); },
          [&](const RadialFamily&) { return f0 * n * unit_ball_volume(n) * radial_gradient_integral(density); },
          [&](const UniformFamily& f) { return f0 * surface_area(f.body).value; },
          [&](const auto&) -> double {
            fail(ErrorKind::UnsupportedVariant, "no closed-form co-area integral for " + density.family_name());
          }},
      density.family());
}

double contour_length(const std::vector<double>& v, int points, double half_width, double level) {
  const double h = 2.0 * half_width / (points - 1);
  auto at = [&](int i, int j) { return v[i + static_cast<std::size_t>(j) * points]; };
  double total = 0.0;
  for (int j = 0; j + 1 < points; ++j) {
    for (int i = 0; i + 1 < points; ++i) {
      const double c[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      const bool in[4] = {c[0] >= level, c[1] >= level, c[2] >= level, c[3] >= level};
      const int mask = in[0] | in[1] << 1 | in[2] << 2 | in[3] << 3;
      if (mask == 0 || mask == 15) continue;
      // Crossing on edge e between corners e and e+1 (counterclockwise).
      static constexpr double corner_xy[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      Eigen::Vector2d p[4];
      bool has[4];
      for (int e = 0; e < 4; ++e) {
        const int a = e, b = (e + 1) % 4;
        has[e] = in[a] != in[b];
        if (!has[e]) continue;
        const double t = (level - c[a]) / (c[b] - c[a]);
        p[e] = Eigen::Vector2d(corner_xy[a][0] + t * (corner_xy[b][0] - corner_xy[a][0]),
                               corner_xy[a][1] + t * (corner_xy[b][1] - corner_xy[a][1]));
      }
      if (mask == 5 || mask == 10) {
        const bool centre = 0.25 * (c[0] + c[1] + c[2] + c[3]) >= level;
        if (centre == in[0]) {
          total += (p[0] - p[1]).norm() + (p[2] - p[3]).norm();
        } else {
          total += (p[0] - p[3]).norm() + (p[1] - p[2]).norm();
        }
        continue;
      }
      int e0 = -1, e1 = -1;
      for (int e = 0; e < 4; ++e)
        if (has[e]) (e0 < 0 ? e0 : e1) = e;
      total += (p[e0] - p[e1]).norm();
    }
  }
  return total * h;
}

double coarea_grid(const std::function<double(const Vec&)>& density, const GridCoareaOptions& o) {
  const int p = o.points;
  std::vector<double> values(static_cast<std::size_t>(p) * p);
  const double h = 2.0 * o.half_width / (p - 1);
  double fmax = 0.0;
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i) {
      const Vec x = (Vec(2) << -o.half_width + i * h, -o.half_width + j * h).finished();
      const double f = density(x);
      values[i + static_cast<std::size_t>(j) * p] = f;
      fmax = std::max(fmax, f);
    }
  const double ds = o.s_max / o.levels;
  std::vector<double> slot(o.levels);
  parallel_blocks(o.levels, [&](int k) {
    const double s = (k + 0.5) * ds;
    const double u = fmax * std::exp(-s);
    slot[k] = u * contour_length(values, p, o.half_width, u) * ds;
  });
  double total = 0.0;
  for (double v : slot) total += v;
  return total;
}

SurfaceMeasurePair truncated_surface_pair(const LogConcaveDensity& density, double t) {
  const auto* ne = std::get_if<NormExponentialFamily>(&density.family());
  if (!ne) fail(ErrorKind::UnsupportedVariant, "truncated surface pair needs a norm-exponential measure");
  if (t < 0) fail(ErrorKind::InvalidArgument, "t must be nonnegative");
  const int n = density.dimension();
  const double scale = density.density_at_origin() * surface_area(ne->body).value;
  SurfaceMeasurePair pair;
  if (std::isinf(t)) {
    pair.moment_part = scale * std::tgamma(n);
    return pair;
  }
  pair.moment_part = scale * numerics::lower_gamma(n, t);
  pair.boundary_part = scale * std::pow(t, n - 1) * std::exp(-t);
  return pair;
}

MomentMeasureReport moment_measure(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config,
                                   bool keep_points) {
  const int n = density.dimension();
  auto acc = mc_accumulate(
      density, n + 1,
      [&](const Vec& x, std::span<double> out) {
        const Vec g = density.gradient(x);
        out[0] = g.norm();
        for (int i = 0; i < n; ++i) out[i + 1] = g[i];
      },
      count, config);
  MomentMeasureReport r;
  r.first_moment = acc.estimate(0, config.seed);
  r.barycenter = {Vec(n), Vec(n), acc.count(), config.seed};
  for (int i = 0; i < n; ++i) {
    const auto e = acc.estimate(i + 1, config.seed);
    r.barycenter.value[i] = e.value;
    r.barycenter.std_error[i] = e.std_error;
  }
  if (keep_points) {
    r.points = sample(density, count, config);
    for (Eigen::Index i = 0; i < r.points.rows(); ++i)
      r.points.row(i) = density.gradient(r.points.row(i).transpose()).transpose();
  }
  if (auto cov = density.exact_covariance())
    r.isotropic = (*cov - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8 && density.is_centered();
  return r;
}

MaxPerimeterReport max_perimeter_scan(const LogConcaveDensity& density, const SweepOptions& options) {
  const int n = density.dimension();
  const double sigma = measure_scale(density);
  std::vector<std::pair<std::string, ConvexBody>> bodies;
  auto radii = options.ball_radii;
  if (radii.empty()) radii = {0.1, 0.2, 0.4, 0.6, 0.8, 0.9, 1.0, 1.1, 1.2, 1.5};
  for (double r : radii) {
    std::ostringstream os;
    os << "ball(r=" << r * sigma * std::sqrt(n) << ")";
    bodies.emplace_back(os.str(), ConvexBody::ball(n, r * sigma * std::sqrt(static_cast<double>(n))));
  }
  auto scales = options.cube_scales;
  if (scales.empty()) scales = {0.2, 0.4, 0.6, 0.8, 0.9, 0.95, 0.99, 1.2, 1.6};
  for (double s : scales) {
    std::ostringstream os;
    os << "cube(w=" << s * sigma * std::sqrt(3.0) << ")";
    bodies.emplace_back(os.str(), ConvexBody::cube(n, s * sigma * std::sqrt(3.0)));
  }
  if (n >= 2 && n <= 3) {
    Rng rng(derive_seed(options.perimeter.seed, 0x90));
    for (int i = 0; i < options.random_polytopes; ++i)
      bodies.emplace_back("polytope#" + std::to_string(i),
                          ConvexBody::random_symmetric_polytope(n, n + 3, 0.5 * sigma, 2.0 * sigma, rng));
  }

  MaxPerimeterReport report;
  report.cap = coarea_integral(density);
  report.sup_estimate = -kInf;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    PerimeterOptions po = options.perimeter;
    po.seed = derive_seed(options.perimeter.seed, i);
    SweepRow row{bodies[i].first, mu_perimeter(density, bodies[i].second, PerimeterMethod::Boundary, po)};
    const auto& e = row.perimeter.estimate;
    if (e.value > report.cap + 3.0 * e.std_error) report.all_below_cap = false;
    if (e.value > report.sup_estimate) {
      report.sup_estimate = e.value;
      report.sup_body = row.body;
    }
    report.rows.push_back(std::move(row));
  }
  report.measured_constant = report.sup_estimate / n;
  return report;
}

CauchyReport cauchy_projection_avg(const ConvexBody& body, std::int64_t rotations, std::uint64_t seed) {
  const int n = body.dimension();
  if (n < 2) fail(ErrorKind::InvalidArgument, "Cauchy's formula needs n >= 2");
  auto acc = mc_blocks(1, rotations, seed, [&](Rng& rng, std::span<double> out) {
    const Mat q = haar_rotation(n, rng);
    out[0] = projection_volume(body, q.col(0));
  });
  CauchyReport r;
  r.mean_projection = acc.estimate(0, seed);
  const double factor = n * unit_ball_volume(n) / unit_ball_volume(n - 1);
  r.surface = r.mean_projection;
  r.surface.value *= factor;
  r.surface.std_error *= factor;
  return r;
}

double projection_l1(const LogConcaveDensity& density, const Vec& u) {
  const int n = density.dimension();
  if (n < 2) fail(ErrorKind::InvalidArgument, "projections need n >= 2");
  if (!density.is_even()) fail(ErrorKind::InvalidArgument, "projection averages need an even measure");
  const double f0 = density.density_at_origin();
  const Vec unit = u.normalized();
  return std::visit(
      overloaded{
          [&](const GaussianFamily& g) { return 1.0 / std::sqrt(2.0 * std::numbers::pi * g.sigma * g.sigma); },
          [&](const NormExponentialFamily& f) { return f0 * std::tgamma(n) * projection_volume(f.body, unit); },
          [&](const UniformFamily& f) { return f0 * projection_volume(f.body, unit); },
          [&](const RadialFamily&) {
            return f0 * unit_ball_volume(n - 1) * radial_gradient_integral(density);
          },
          [&](const auto&) -> double {
            if (n != 2) fail(ErrorKind::UnsupportedVariant, "projection norm not available for " + density.family_name());
            const HyperplaneProjection proj(density, unit);
            const Vec b = proj.basis().col(0);
            auto value = [&](double s) { return proj.value(s * b); };
            return numerics::integrate_to_infinity(value, 0.0) +
                   numerics::integrate_to_infinity([&](double s) { return value(-s); }, 0.0);
          }},
      density.family());
}

ProjectionReport projection_l1_avg(const LogConcaveDensity& density, std::int64_t hyperplanes, std::uint64_t seed) {
  const int n = density.dimension();
  auto acc = mc_blocks(1, hyperplanes, seed, [&](Rng& rng, std::span<double> out) {
    out[0] = projection_l1(density, haar_rotation(n, rng).col(0));
  });
  ProjectionReport r;
  r.average = acc.estimate(0, seed);
  r.ratio_to_sqrt_n = r.average.value / std::sqrt(static_cast<double>(n));
  if (std::holds_alternative<NormExponentialFamily>(density.family()) ||
      std::holds_alternative<UniformFamily>(density.family()))
    r.coarea_cross_check = unit_ball_volume(n - 1) / (n * unit_ball_volume(n)) * coarea_integral(density);
  return r;
}

SobolevReport sobolev_lower_check(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config) {
  const int n = density.dimension();
  if (n < 2) fail(ErrorKind::InvalidArgument, "the Sobolev check needs n >= 2");
  if (!density.essentially_continuous())
    fail(ErrorKind::InvalidArgument, "the Sobolev check needs an essentially continuous density");
  auto acc = mc_accumulate(
      density, 2,
      [&](const Vec& x, std::span<double> out) {
        out[0] = density.gradient(x).norm();
        out[1] = std::exp(-density.potential(x) / (n - 1.0));
      },
      count, config);
  SobolevReport r;
  r.lhs = acc.estimate(0, config.seed);
  const auto j = acc.estimate(1, config.seed);
  const double constant = n * std::exp(log_unit_ball_volume(n) / n);
  const double expo = (n - 1.0) / n;
  r.rhs = constant * std::pow(j.value, expo);
  r.rhs_std_error = r.rhs * expo * j.std_error / j.value;
  r.holds = r.lhs.value + 3.0 * r.lhs.std_error >= r.rhs - 3.0 * r.rhs_std_error;
  r.literal_bound = constant;
  r.literal_holds = r.lhs.value + 3.0 * r.lhs.std_error >= constant;
  r.ratio_to_sqrt_n = r.lhs.value / std::sqrt(static_cast<double>(n));
  return r;
}

double radial_psi_g(const std::function<double(double)>& g, double p) {
  if (p < 0) fail(ErrorKind::InvalidArgument, "Psi_g needs p >= 0");
  const double lg = std::lgamma(p + 1.0);
  return numerics::integrate_to_infinity([&](double r) {
    if (r == 0.0) return p == 0.0 ? std::exp(-g(0.0) - lg) : 0.0;
    return std::exp(p * std::log(r) - g(r) - lg);
  });
}

bool psi_g_log_concave(const std::function<double(double)>& g, double p_max, int steps, double slack) {
  std::vector<double> logs(steps + 1);
  for (int k = 0; k <= steps; ++k) logs[k] = std::log(radial_psi_g(g, p_max * k / steps));
  for (int k = 1; k < steps; ++k)
    if (logs[k] < 0.5 * (logs[k - 1] + logs[k + 1]) - slack) return false;
  return true;
}

RadialIdentities radial_identities(const LogConcaveDensity& density) {
  if (!radial_like(density)) fail(ErrorKind::UnsupportedVariant, "radial identities need a rotation-invariant family");
  const int n = density.dimension();
  if (n < 2) fail(ErrorKind::InvalidArgument, "radial identities need n >= 2");
  const Vec e = Vec::Unit(n, 0);
  auto g = [&](double r) { return density.potential(r * e); };
  const double log_surface = std::log(static_cast<double>(n)) + log_unit_ball_volume(n);
  RadialIdentities r;
  r.mass = std::exp(log_surface + std::lgamma(n) + std::log(radial_psi_g(g, n - 1.0)));
  r.second_moment = std::exp(log_surface + std::lgamma(n + 2.0) + std::log(radial_psi_g(g, n + 1.0)));
  r.perimeter = (n - 1.0) * std::exp(log_surface + std::lgamma(n - 1.0) + std::log(radial_psi_g(g, n - 2.0)));
  r.bound = std::sqrt(n + 1.0);
  r.holds = r.perimeter <= r.bound * (1.0 + 1e-9);  // equality for the ball-exponential family
  return r;
}

}  // namespace lclab
