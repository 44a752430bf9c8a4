// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/bodies.hpp"
#include "lclab/core.hpp"
#include "lclab/region.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace lclab {

/// x -> linear * x + offset.
struct AffineMap {
  Mat linear;
  Vec offset;
  Mat inverse;
  double log_abs_det = 0.0;

  static AffineMap make(Mat linear, Vec offset);
  static AffineMap identity(int n);

  Vec apply(const Vec& x) const { return linear * x + offset; }
  Vec apply_inverse(const Vec& y) const { return inverse * (y - offset); }
  AffineMap compose(const AffineMap& inner) const;  // this o inner
};

/// Radial potential profile g on [0, inf): convex and nondecreasing.
struct RadialProfile {
  std::string name;
  std::function<double(double)> g;
  std::function<double(double)> dg;
  /// Set when g(r) = (r / scale)^power; enables exact sampling.
  std::optional<double> power;
  double scale = 1.0;

  static RadialProfile power_law(double power, double scale);
};

/// Even convex one-dimensional potential with its minimum at 0.
struct CoordinateProfile {
  std::string name;
  std::function<double(double)> phi;
  std::function<double(double)> dphi;

  /// phi(s) = sqrt(1 + s^2).
  static CoordinateProfile hyperbolic();
};

class LogConcaveDensity;
using DensityPtr = std::shared_ptr<const LogConcaveDensity>;

struct GaussianFamily {
  double sigma = 1.0;
};
/// f = exp(-gauge_K(x)) / (n! vol K).
struct NormExponentialFamily {
  ConvexBody body;
  double log_normalizer = 0.0;
};
/// f = exp(-g(|x|) - log_normalizer).
struct RadialFamily {
  RadialProfile profile;
  double log_normalizer = 0.0;
};
/// Product of the isotropic one-dimensional f_p densities.
struct ProductPExpFamily {
  double p = 2.0;
  double rate = 0.5;  // psi_1(s) = rate * |s|^p + log_normalizer_1d
  double log_normalizer_1d = 0.0;
};
struct ProductProfileFamily {
  CoordinateProfile profile;
  double log_normalizer_1d = 0.0;
};
/// Uniform probability on a convex body (psi = log vol inside, +inf outside).
struct UniformFamily {
  ConvexBody body;
  double log_volume = 0.0;
};
struct AffinePushforwardFamily {
  DensityPtr base;
  AffineMap map;
};
/// base restricted to `region` and renormalized by its mass.
struct TruncationFamily {
  DensityPtr base;
  RegionOracle region;
  double log_mass = 0.0;
};

/// Log-concave probability density f = exp(-psi) on R^n.
class LogConcaveDensity {
 public:
  using Family = std::variant<GaussianFamily, NormExponentialFamily, RadialFamily,
                              ProductPExpFamily, ProductProfileFamily, UniformFamily,
                              AffinePushforwardFamily, TruncationFamily>;

  static LogConcaveDensity gaussian(int n, double sigma = 1.0);
  static LogConcaveDensity norm_exponential(const ConvexBody& body);
  static LogConcaveDensity radial(int n, RadialProfile profile);
  static LogConcaveDensity product_pexp(int n, double p);
  static LogConcaveDensity product_profile(int n, CoordinateProfile profile);
  static LogConcaveDensity uniform(const ConvexBody& body);
  static LogConcaveDensity pushforward(const LogConcaveDensity& base, const AffineMap& map);
  /// `mass` is the base measure of the region; pass it when known exactly.
  static LogConcaveDensity truncation(const LogConcaveDensity& base, const RegionOracle& region,
                                      double mass);

  // Isotropic members of the families.
  static LogConcaveDensity isotropic_cube_exponential(int n);
  static LogConcaveDensity isotropic_ball_exponential(int n);
  static LogConcaveDensity isotropic_radial_power(int n, double power);
  static LogConcaveDensity isotropic_uniform_cube(int n);

  int dimension() const { return dimension_; }
  const Family& family() const { return family_; }
  std::string family_name() const;

  double potential(const Vec& x) const;
  /// Gradient of psi; throws OutsideSupport where psi is infinite.
  Vec gradient(const Vec& x) const;
  double density(const Vec& x) const;
  double log_density(const Vec& x) const { return -potential(x); }

  double potential_at_origin() const { return psi0_; }
  double density_at_origin() const;
  /// ||f||_inf. Throws UnsupportedVariant when the maximum is not known.
  double sup_norm() const;

  bool is_even() const;
  bool is_centered() const;
  /// Analytic essential continuity: true for everywhere-positive families.
  bool essentially_continuous() const;
  bool has_exact_sampler() const;

  std::optional<Vec> exact_mean() const;
  std::optional<Mat> exact_covariance() const;

 private:
  LogConcaveDensity(int dimension, Family family);

  int dimension_;
  Family family_;
  double psi0_ = 0.0;
};

/// Closed-form one-dimensional f_p quantities.
double pexp_rate(double p);
double pexp_log_normalizer(double p);
/// int |psi_p'|^{1+alpha} f_p over R.
double pexp_gradient_moment(double p, double alpha);

/// Restriction of f to lines x + t*normal maximized over t: the sup-projection
/// onto the hyperplane orthogonal to `normal`.
class HyperplaneProjection {
 public:
  HyperplaneProjection(const LogConcaveDensity& density, const Vec& normal);

  const Vec& normal() const { return normal_; }
  /// Orthonormal basis of the hyperplane (columns).
  const Mat& basis() const { return basis_; }

  /// -log P_E f at x (x is first projected onto the hyperplane).
  double potential(const Vec& x) const;
  double value(const Vec& x) const { return std::exp(-potential(x)); }
  /// Coordinates in `basis()` to ambient points.
  Vec embed(const Vec& coordinates) const { return basis_ * coordinates; }

 private:
  DensityPtr density_;
  Vec normal_;
  Mat basis_;
  double search_radius_;
};

}  // namespace lclab
