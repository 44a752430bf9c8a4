// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/bodies.hpp"
#include "lclab/density.hpp"
#include "lclab/moments.hpp"
#include "lclab/sampler.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lclab {

enum class PerimeterMethod { Boundary, Epsilon };

struct PerimeterOptions {
  std::int64_t samples = 200000;
  std::uint64_t seed = 11;
  // Epsilon method: eps_k = scale * 2^-k for k in [k_min, k_max], where
  // scale is the smallest coordinate support value of the body.
  int k_min = 3;
  int k_max = 7;
};

struct PerimeterResult {
  MCEstimate estimate;
  PerimeterMethod method = PerimeterMethod::Boundary;
  std::vector<double> eps;        // epsilon sweep (epsilon method only)
  std::vector<double> quotients;  // (mu(A + eps B) - mu(A)) / eps
  double bias = 0.0;              // |finest quotient - extrapolated value|
};

/// mu^+(dA). The boundary method integrates f over dA (balls, boxes,
/// polytopes with n <= 3); the epsilon method fits the outer-parallel-body
/// quotients linearly in eps and reads off the intercept.
PerimeterResult mu_perimeter(const LogConcaveDensity& density, const ConvexBody& body, PerimeterMethod method,
                             const PerimeterOptions& options = {});

/// int_0^inf H^{n-1}(d{f >= u}) du in closed form or by one-dimensional
/// quadrature: norm-exponential, Gaussian, radial and uniform families.
double coarea_integral(const LogConcaveDensity& density);

struct GridCoareaOptions {
  double half_width = 8.0;
  int points = 801;
  double s_max = 30.0;  // levels u = f_max e^{-s}, s in (0, s_max)
  int levels = 600;
};

/// Co-area integral of a planar density given pointwise, from
/// marching-squares contour lengths of {f >= u}.
double coarea_grid(const std::function<double(const Vec&)>& density, const GridCoareaOptions& options = {});

/// Length of the contour {f = level} of a planar grid function.
double contour_length(const std::vector<double>& values, int points, double half_width, double level);

struct SurfaceMeasurePair {
  double moment_part = 0.0;    // int_{tK} |grad psi| dnu_K
  double boundary_part = 0.0;  // mass of the boundary measure
  double total() const { return moment_part + boundary_part; }
};

/// Norm-exponential measure truncated to tK (t = inf allowed).
SurfaceMeasurePair truncated_surface_pair(const LogConcaveDensity& density, double t);

struct MomentMeasureReport {
  MCEstimate first_moment;  // int |y| dmu_f
  VectorEstimate barycenter;
  Mat points;  // y_i = grad psi(x_i); filled only when requested
  std::optional<bool> isotropic;
};

MomentMeasureReport moment_measure(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config,
                                   bool keep_points = false);

struct SweepRow {
  std::string body;
  PerimeterResult perimeter;
};

struct MaxPerimeterReport {
  std::vector<SweepRow> rows;
  double sup_estimate = 0.0;
  std::string sup_body;
  double cap = 0.0;  // coarea_integral
  bool all_below_cap = true;  // every row <= cap + 3 SE
  double measured_constant = 0.0;  // sup / n
};

struct SweepOptions {
  std::vector<double> ball_radii;   // in units of sqrt(n); empty picks a default grid
  std::vector<double> cube_scales;  // half-widths relative to the measure's scale
  int random_polytopes = 4;         // n <= 3 only
  PerimeterOptions perimeter;
};

MaxPerimeterReport max_perimeter_scan(const LogConcaveDensity& density, const SweepOptions& options = {});

struct CauchyReport {
  MCEstimate mean_projection;  // average of vol_{n-1}(P_{u^perp} K)
  MCEstimate surface;          // n omega_n / omega_{n-1} times the mean
};

CauchyReport cauchy_projection_avg(const ConvexBody& body, std::int64_t rotations, std::uint64_t seed);

struct ProjectionReport {
  MCEstimate average;  // mean over hyperplanes of ||P_E f||_1
  double ratio_to_sqrt_n = 0.0;
  std::optional<double> coarea_cross_check;  // omega_{n-1} / (n omega_n) * coarea
};

/// ||P_E f||_1 for a single hyperplane with unit normal u.
double projection_l1(const LogConcaveDensity& density, const Vec& u);

ProjectionReport projection_l1_avg(const LogConcaveDensity& density, std::int64_t hyperplanes, std::uint64_t seed);

struct SobolevReport {
  MCEstimate lhs;         // int |grad f|
  double rhs = 0.0;       // n omega_n^{1/n} (int f^{n/(n-1)})^{(n-1)/n}
  double rhs_std_error = 0.0;
  bool holds = false;     // lhs + 3 SE >= rhs - 3 SE
  double literal_bound = 0.0;  // n omega_n^{1/n}
  bool literal_holds = false;  // lhs + 3 SE >= literal_bound
  double ratio_to_sqrt_n = 0.0;
};

SobolevReport sobolev_lower_check(const LogConcaveDensity& density, std::int64_t count, const SamplerConfig& config);

/// Psi_g(p) = int_0^inf r^p e^{-g(r)} dr / Gamma(p + 1).
double radial_psi_g(const std::function<double(double)>& g, double p);

/// Discrete midpoint log-concavity of p -> Psi_g(p) on an equispaced grid.
bool psi_g_log_concave(const std::function<double(double)>& g, double p_max, int steps, double slack = 1e-8);

struct RadialIdentities {
  double mass = 0.0;           // n omega_n Gamma(n) Psi(n-1)
  double second_moment = 0.0;  // n omega_n Gamma(n+2) Psi(n+1)
  double perimeter = 0.0;      // (n-1) n omega_n Gamma(n-1) Psi(n-2)
  double bound = 0.0;          // sqrt(n + 1)
  bool holds = false;
};

/// For Gaussian and radial families; g is the full potential psi(r).
RadialIdentities radial_identities(const LogConcaveDensity& density);

}  // namespace lclab
