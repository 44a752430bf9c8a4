// SPDX-License-Identifier: Apache-2.0
#include "lclab/density.hpp"

#include "lclab/numerics.hpp"

#include <cmath>
#include <numbers>

namespace lclab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double log_norm_exponential(const ConvexBody& body) {
  return std::lgamma(body.dimension() + 1.0) + std::log(volume(body).value);
}

double radial_log_normalizer(int n, const RadialProfile& profile) {
  const double log_surface = std::log(static_cast<double>(n)) + log_unit_ball_volume(n);
  if (profile.power) {
    const double q = *profile.power;
    return log_surface + n * std::log(profile.scale) + std::lgamma(n / q) - std::log(q);
  }
  const double g0 = profile.g(0.0);
  const double radial_mass = numerics::integrate_to_infinity(
      [&](double r) { return std::pow(r, n - 1) * std::exp(-(profile.g(r) - g0)); });
  return log_surface + std::log(radial_mass) - g0;
}

double profile_log_normalizer(const CoordinateProfile& profile) {
  const double p0 = profile.phi(0.0);
  const double half = numerics::integrate_to_infinity([&](double s) { return std::exp(-(profile.phi(s) - p0)); });
  return std::log(2.0 * half) - p0;
}

}  // namespace

AffineMap AffineMap::make(Mat linear, Vec offset) {
  if (linear.rows() != linear.cols() || linear.rows() != offset.size())
    fail(ErrorKind::InvalidArgument, "affine map shape mismatch");
  Eigen::FullPivLU<Mat> lu(linear);
  if (!lu.isInvertible()) fail(ErrorKind::InvalidArgument, "affine map is not invertible");
  AffineMap m;
  m.inverse = lu.inverse();
  m.log_abs_det = std::log(std::abs(lu.determinant()));
  m.linear = std::move(linear);
  m.offset = std::move(offset);
  return m;
}

AffineMap AffineMap::identity(int n) { return make(Mat::Identity(n, n), Vec::Zero(n)); }

AffineMap AffineMap::compose(const AffineMap& inner) const {
  return make(linear * inner.linear, linear * inner.offset + offset);
}

RadialProfile RadialProfile::power_law(double power, double scale) {
  if (!(power >= 1.0)) fail(ErrorKind::InvalidArgument, "radial power must be >= 1 for convexity");
  RadialProfile p;
  p.name = "power";
  p.power = power;
  p.scale = scale;
  p.g = [power, scale](double r) { return std::pow(r / scale, power); };
  p.dg = [power, scale](double r) {
    if (r <= 0.0) return power == 1.0 ? 1.0 / scale : 0.0;
    return power / scale * std::pow(r / scale, power - 1.0);
  };
  return p;
}

CoordinateProfile CoordinateProfile::hyperbolic() {
  CoordinateProfile p;
  p.name = "hyperbolic";
  p.phi = [](double s) { return std::sqrt(1.0 + s * s); };
  p.dphi = [](double s) { return s / std::sqrt(1.0 + s * s); };
  return p;
}

double pexp_rate(double p) {
  return std::exp(0.5 * p * (std::lgamma(3.0 / p) - std::lgamma(1.0 / p)));
}

double pexp_log_normalizer(double p) {
  // f_p(0) = (p/2) sqrt(Gamma(3/p)) / Gamma(1/p)^{3/2}
  const double log_f0 = std::log(0.5 * p) + 0.5 * std::lgamma(3.0 / p) - 1.5 * std::lgamma(1.0 / p);
  return -log_f0;
}

double pexp_gradient_moment(double p, double alpha) {
  const double a1 = 1.0 + alpha;
  const double log_value = a1 * std::log(p) + 0.5 * a1 * (std::lgamma(3.0 / p) - std::lgamma(1.0 / p)) +
                           std::lgamma(((p - 1.0) * a1 + 1.0) / p) - std::lgamma(1.0 / p);
  return std::exp(log_value);
}

LogConcaveDensity::LogConcaveDensity(int dimension, Family family)
    : dimension_(dimension), family_(std::move(family)) {
  if (dimension_ <= 0) fail(ErrorKind::InvalidArgument, "dimension must be positive");
  psi0_ = potential(Vec::Zero(dimension_));
}

LogConcaveDensity LogConcaveDensity::gaussian(int n, double sigma) {
  if (!(sigma > 0)) fail(ErrorKind::InvalidArgument, "sigma must be positive");
  return LogConcaveDensity(n, GaussianFamily{sigma});
}

LogConcaveDensity LogConcaveDensity::norm_exponential(const ConvexBody& body) {
  return LogConcaveDensity(body.dimension(), NormExponentialFamily{body, log_norm_exponential(body)});
}

LogConcaveDensity LogConcaveDensity::radial(int n, RadialProfile profile) {
  const double log_z = radial_log_normalizer(n, profile);
  return LogConcaveDensity(n, RadialFamily{std::move(profile), log_z});
}

LogConcaveDensity LogConcaveDensity::product_pexp(int n, double p) {
  if (!(p >= 1.0)) fail(ErrorKind::InvalidArgument, "p must be >= 1");
  return LogConcaveDensity(n, ProductPExpFamily{p, pexp_rate(p), pexp_log_normalizer(p)});
}

LogConcaveDensity LogConcaveDensity::product_profile(int n, CoordinateProfile profile) {
  const double log_z = profile_log_normalizer(profile);
  return LogConcaveDensity(n, ProductProfileFamily{std::move(profile), log_z});
}

LogConcaveDensity LogConcaveDensity::uniform(const ConvexBody& body) {
  return LogConcaveDensity(body.dimension(), UniformFamily{body, std::log(volume(body).value)});
}

LogConcaveDensity LogConcaveDensity::pushforward(const LogConcaveDensity& base, const AffineMap& map) {
  if (map.linear.rows() != base.dimension()) fail(ErrorKind::InvalidArgument, "affine map dimension mismatch");
  return LogConcaveDensity(base.dimension(),
                           AffinePushforwardFamily{std::make_shared<const LogConcaveDensity>(base), map});
}

LogConcaveDensity LogConcaveDensity::truncation(const LogConcaveDensity& base, const RegionOracle& region,
                                                double mass) {
  if (!(mass > 0.0 && mass <= 1.0 + 1e-12)) fail(ErrorKind::InvalidArgument, "truncation mass must lie in (0,1]");
  if (region.dimension() != base.dimension()) fail(ErrorKind::InvalidArgument, "region dimension mismatch");
  return LogConcaveDensity(base.dimension(), TruncationFamily{std::make_shared<const LogConcaveDensity>(base),
                                                              region, std::log(mass)});
}

LogConcaveDensity LogConcaveDensity::isotropic_cube_exponential(int n) {
  // Cov = E[S^2] Cov(U) with S ~ Gamma(n+1), U uniform on the cube.
  const double w = std::sqrt(3.0 / ((n + 1.0) * (n + 2.0)));
  return norm_exponential(ConvexBody::cube(n, w));
}

LogConcaveDensity LogConcaveDensity::isotropic_ball_exponential(int n) {
  return norm_exponential(ConvexBody::ball(n, 1.0 / std::sqrt(n + 1.0)));
}

LogConcaveDensity LogConcaveDensity::isotropic_radial_power(int n, double power) {
  // E|x|^2 = scale^2 Gamma((n+2)/q) / Gamma(n/q) must equal n.
  const double log_ratio = std::lgamma((n + 2.0) / power) - std::lgamma(n / power);
  const double scale = std::sqrt(n * std::exp(-log_ratio));
  return radial(n, RadialProfile::power_law(power, scale));
}

LogConcaveDensity LogConcaveDensity::isotropic_uniform_cube(int n) {
  return uniform(ConvexBody::cube(n, std::sqrt(3.0)));
}

std::string LogConcaveDensity::family_name() const {
  return std::visit(overloaded{[](const GaussianFamily&) { return std::string("gaussian"); },
                               [](const NormExponentialFamily& f) {
                                 return "norm-exponential(" + std::string(f.body.variant_name()) + ")";
                               },
                               [](const RadialFamily& f) { return "radial(" + f.profile.name + ")"; },
                               [](const ProductPExpFamily& f) {
                                 return "product-pexp(p=" + std::to_string(f.p) + ")";
                               },
                               [](const ProductProfileFamily& f) { return "product(" + f.profile.name + ")"; },
                               [](const UniformFamily& f) {
                                 return "uniform(" + std::string(f.body.variant_name()) + ")";
                               },
                               [](const AffinePushforwardFamily& f) {
                                 return "pushforward(" + f.base->family_name() + ")";
                               },
                               [](const TruncationFamily& f) {
                                 return "truncation(" + f.base->family_name() + ")";
                               }},
                    family_);
}

double LogConcaveDensity::potential(const Vec& x) const {
  if (x.size() != dimension_) fail(ErrorKind::InvalidArgument, "point dimension mismatch");
  const int n = dimension_;
  return std::visit(
      overloaded{[&](const GaussianFamily& f) {
                   const double s2 = f.sigma * f.sigma;
                   return 0.5 * x.squaredNorm() / s2 + 0.5 * n * std::log(2.0 * std::numbers::pi * s2);
                 },
                 [&](const NormExponentialFamily& f) { return gauge(f.body, x) + f.log_normalizer; },
                 [&](const RadialFamily& f) { return f.profile.g(x.norm()) + f.log_normalizer; },
                 [&](const ProductPExpFamily& f) {
                   double s = n * f.log_normalizer_1d;
                   for (double xi : x) s += f.rate * std::pow(std::abs(xi), f.p);
                   return s;
                 },
                 [&](const ProductProfileFamily& f) {
                   double s = n * f.log_normalizer_1d;
                   for (double xi : x) s += f.profile.phi(xi);
                   return s;
                 },
                 [&](const UniformFamily& f) { return contains(f.body, x) ? f.log_volume : kInf; },
                 [&](const AffinePushforwardFamily& f) {
                   return f.base->potential(f.map.apply_inverse(x)) + f.map.log_abs_det;
                 },
                 [&](const TruncationFamily& f) {
                   return f.region.contains(x) ? f.base->potential(x) + f.log_mass : kInf;
                 }},
      family_);
}

Vec LogConcaveDensity::gradient(const Vec& x) const {
  if (x.size() != dimension_) fail(ErrorKind::InvalidArgument, "point dimension mismatch");
  const int n = dimension_;
  return std::visit(
      overloaded{[&](const GaussianFamily& f) -> Vec { return x / (f.sigma * f.sigma); },
                 [&](const NormExponentialFamily& f) -> Vec { return gauge_gradient(f.body, x); },
                 [&](const RadialFamily& f) -> Vec {
                   const double r = x.norm();
                   if (r == 0.0) return Vec::Zero(n);
                   return (f.profile.dg(r) / r) * x;
                 },
                 [&](const ProductPExpFamily& f) -> Vec {
                   Vec g(n);
                   for (int i = 0; i < n; ++i) {
                     const double a = std::abs(x[i]);
                     const double mag = f.p == 1.0 ? f.rate : f.rate * f.p * std::pow(a, f.p - 1.0);
                     g[i] = x[i] > 0 ? mag : (x[i] < 0 ? -mag : 0.0);
                   }
                   return g;
                 },
                 [&](const ProductProfileFamily& f) -> Vec {
                   Vec g(n);
                   for (int i = 0; i < n; ++i) g[i] = f.profile.dphi(x[i]);
                   return g;
                 },
                 [&](const UniformFamily& f) -> Vec {
                   if (!contains(f.body, x)) fail(ErrorKind::OutsideSupport, "gradient outside the uniform support");
                   return Vec::Zero(n);
                 },
                 [&](const AffinePushforwardFamily& f) -> Vec {
                   return f.map.inverse.transpose() * f.base->gradient(f.map.apply_inverse(x));
                 },
                 [&](const TruncationFamily& f) -> Vec {
                   if (!f.region.contains(x)) fail(ErrorKind::OutsideSupport, "gradient outside the truncation region");
                   return f.base->gradient(x);
                 }},
      family_);
}

double LogConcaveDensity::density(const Vec& x) const { return std::exp(-potential(x)); }

double LogConcaveDensity::density_at_origin() const { return std::exp(-psi0_); }

double LogConcaveDensity::sup_norm() const {
  return std::visit(
      overloaded{[&](const AffinePushforwardFamily& f) {
                   return f.base->sup_norm() * std::exp(-f.map.log_abs_det);
                 },
                 [&](const TruncationFamily& f) {
                   if (!f.base->is_even() || !f.region.contains(Vec::Zero(dimension_)))
                     fail(ErrorKind::UnsupportedVariant, "sup norm of a truncation missing the base mode");
                   return f.base->sup_norm() * std::exp(-f.log_mass);
                 },
                 [&](const auto&) { return density_at_origin(); }},
      family_);
}

bool LogConcaveDensity::is_even() const {
  return std::visit(overloaded{[](const AffinePushforwardFamily& f) {
                                 return f.base->is_even() && f.map.offset.norm() == 0.0;
                               },
                               [](const TruncationFamily&) { return false; },
                               [](const auto&) { return true; }},
                    family_);
}

bool LogConcaveDensity::is_centered() const {
  if (is_even()) return true;
  if (auto m = exact_mean()) return m->norm() <= 1e-12;
  return false;
}

bool LogConcaveDensity::essentially_continuous() const {
  return std::visit(overloaded{[](const UniformFamily&) { return false; },
                               [](const TruncationFamily&) { return false; },
                               [](const AffinePushforwardFamily& f) { return f.base->essentially_continuous(); },
                               [](const auto&) { return true; }},
                    family_);
}

bool LogConcaveDensity::has_exact_sampler() const {
  return std::visit(overloaded{[](const RadialFamily& f) { return f.profile.power.has_value(); },
                               [](const AffinePushforwardFamily& f) { return f.base->has_exact_sampler(); },
                               [](const TruncationFamily& f) { return f.base->has_exact_sampler(); },
                               [](const auto&) { return true; }},
                    family_);
}

std::optional<Vec> LogConcaveDensity::exact_mean() const {
  return std::visit(overloaded{[&](const AffinePushforwardFamily& f) -> std::optional<Vec> {
                                 auto m = f.base->exact_mean();
                                 if (!m) return std::nullopt;
                                 return f.map.apply(*m);
                               },
                               [](const TruncationFamily&) -> std::optional<Vec> { return std::nullopt; },
                               [&](const auto&) -> std::optional<Vec> { return Vec::Zero(dimension_); }},
                    family_);
}

std::optional<Mat> LogConcaveDensity::exact_covariance() const {
  const int n = dimension_;
  const Mat eye = Mat::Identity(n, n);
  return std::visit(
      overloaded{
          [&](const GaussianFamily& f) -> std::optional<Mat> { return f.sigma * f.sigma * eye; },
          [&](const NormExponentialFamily& f) -> std::optional<Mat> {
            const double s2 = (n + 1.0) * (n + 2.0);  // E[S^2], S ~ Gamma(n+1)
            if (auto* b = std::get_if<Box>(&f.body.variant()))
              return Mat(s2 / 3.0 * b->half_widths.cwiseProduct(b->half_widths).asDiagonal());
            if (auto* b = std::get_if<EuclideanBall>(&f.body.variant()))
              return Mat(s2 * b->radius * b->radius / (n + 2.0) * eye);
            return std::nullopt;
          },
          [&](const RadialFamily& f) -> std::optional<Mat> {
            if (f.profile.power) {
              const double q = *f.profile.power;
              const double r2 = f.profile.scale * f.profile.scale *
                                std::exp(std::lgamma((n + 2.0) / q) - std::lgamma(n / q));
              return Mat(r2 / n * eye);
            }
            const double g0 = f.profile.g(0.0);
            auto moment = [&](int k) {
              return numerics::integrate_to_infinity(
                  [&](double r) { return std::pow(r, n - 1 + k) * std::exp(-(f.profile.g(r) - g0)); });
            };
            return Mat(moment(2) / moment(0) / n * eye);
          },
          [&](const ProductPExpFamily&) -> std::optional<Mat> { return eye; },
          [&](const ProductProfileFamily& f) -> std::optional<Mat> {
            const double p0 = f.profile.phi(0.0);
            const double m0 = numerics::integrate_to_infinity([&](double s) { return std::exp(-(f.profile.phi(s) - p0)); });
            const double m2 =
                numerics::integrate_to_infinity([&](double s) { return s * s * std::exp(-(f.profile.phi(s) - p0)); });
            return Mat(m2 / m0 * eye);
          },
          [&](const UniformFamily& f) -> std::optional<Mat> {
            if (auto* b = std::get_if<Box>(&f.body.variant()))
              return Mat((b->half_widths.cwiseProduct(b->half_widths) / 3.0).asDiagonal());
            if (auto* b = std::get_if<EuclideanBall>(&f.body.variant()))
              return Mat(b->radius * b->radius / (n + 2.0) * eye);
            return std::nullopt;
          },
          [&](const AffinePushforwardFamily& f) -> std::optional<Mat> {
            auto c = f.base->exact_covariance();
            if (!c) return std::nullopt;
            return Mat(f.map.linear * *c * f.map.linear.transpose());
          },
          [&](const TruncationFamily&) -> std::optional<Mat> { return std::nullopt; }},
      family_);
}

HyperplaneProjection::HyperplaneProjection(const LogConcaveDensity& density, const Vec& normal)
    : density_(std::make_shared<const LogConcaveDensity>(density)) {
  const int n = density.dimension();
  if (normal.size() != n || normal.norm() == 0.0) fail(ErrorKind::InvalidArgument, "bad hyperplane normal");
  normal_ = normal.normalized();
  Mat frame(n, n);
  frame.col(0) = normal_;
  frame.rightCols(n - 1) = Mat::Identity(n, n).leftCols(n - 1);
  // Pick the identity columns least aligned with the normal.
  Eigen::Index drop;
  normal_.cwiseAbs().maxCoeff(&drop);
  int col = 1;
  for (int i = 0; i < n; ++i)
    if (i != drop) frame.col(col++) = Vec::Unit(n, i);
  Eigen::HouseholderQR<Mat> qr(frame);
  const Mat q = qr.householderQ();
  basis_ = q.rightCols(n - 1);
  double scale = 1.0;
  if (auto c = density.exact_covariance()) scale = std::sqrt(std::max(1.0, c->trace()));
  search_radius_ = 60.0 * scale;
}

double HyperplaneProjection::potential(const Vec& x) const {
  const Vec base = x - normal_ * normal_.dot(x);
  auto along = [&](double t) { return density_->potential(base + t * normal_); };
  const auto best = numerics::minimize_convex_from(along, 0.0, 0.25, search_radius_, 1e-10);
  if (std::isfinite(best.value) && std::abs(best.argmin) >= search_radius_ * (1.0 - 1e-9))
    fail(ErrorKind::LineSearchNoConverge, "projection line search hit the search radius");
  return best.value;
}

}  // namespace lclab
