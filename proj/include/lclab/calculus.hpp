// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/density.hpp"
#include "lclab/sampler.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lclab {

/// Values on the uniform grid {-a, -a + h, ..., a}^dim, dim in {1, 2}.
/// Potentials may hold +inf; densities use exact zeros. 2D values are
/// stored with the first coordinate fastest.
struct GridFunction {
  int dim = 1;
  double half_width = 1.0;
  int points = 3;  // per axis, odd so that 0 is a node
  std::vector<double> values;

  static GridFunction sample(int dim, double half_width, int points, const std::function<double(const Vec&)>& f);

  double step() const { return 2.0 * half_width / (points - 1); }
  double coord(int i) const { return -half_width + i * step(); }
  std::size_t size() const { return values.size(); }
  Vec point(std::size_t k) const;
  double& at(int i, int j = 0) { return values[i + static_cast<std::size_t>(j) * points]; }
  double at(int i, int j = 0) const { return values[i + static_cast<std::size_t>(j) * points]; }
  bool same_grid(const GridFunction& other) const;
};

/// Midpoint convexity along grid lines, ignoring triples touching +inf.
bool convex_on_grid(const GridFunction& g, double slack = 1e-9);

/// Flat little-endian float64 values in `<stem>.bin` plus a JSON header in
/// `<stem>.json` holding {dim, box, step, points}.
void write_grid(const GridFunction& g, const std::string& stem);
GridFunction read_grid(const std::string& stem);

/// Discrete Legendre transform on the same grid. Values whose supremum is
/// pushed against the grid edge with outward slope above 1.5 h become +inf.
GridFunction legendre(const GridFunction& phi);

/// (psi box phi)(x) = inf_y psi(y) + phi(x - y), y over grid nodes.
GridFunction inf_convolution(const GridFunction& psi, const GridFunction& phi);
/// (f * g)(x) = sup_y f(y) g(x - y).
GridFunction asplund(const GridFunction& f, const GridFunction& g);
/// (t . f)(x) = f(x / t)^t, by linear interpolation of -log f.
GridFunction dilate(const GridFunction& f, double t);

/// max |(f * (t . f))(z) - exp(-(1 + t) psi(z / (1 + t)))| over the z's, with
/// the sup taken over the nodes of the grid.
double asplund_self_identity_check(const std::function<double(const Vec&)>& psi, int dim, double t,
                                   double half_width, int points, const std::vector<Vec>& z);

struct VariationOptions {
  double x_lo = -40.0, x_hi = 40.0;  // integration range for f * (t . g)
  double u_lo = -40.0, u_hi = 40.0;  // range containing the support of g
  int k_min = 3, k_max = 10;         // t = 2^-k
};

struct VariationResult {
  double value = 0.0;
  double error = 0.0;  // from the last two extrapolated levels
  std::vector<double> t;
  std::vector<double> quotients;  // (int f*(t.g) - int f) / t
};

/// One-dimensional first variation of int f along g (f = e^-psi_f,
/// g = e^-psi_g), first-order Richardson extrapolation in t.
VariationResult first_variation(const std::function<double(double)>& psi_f,
                                const std::function<double(double)>& psi_g, const VariationOptions& options = {});

struct ProxResult {
  double value = 0.0;
  Vec argmin;
};

/// Moreau envelope inf_y psi(y) + |x - y|^2 / (2 lambda) and its minimizer.
ProxResult moreau(const std::function<double(const Vec&)>& psi, double lambda, const Vec& x);

struct EpiReport {
  bool clean = true;
  std::vector<std::string> violations;
};

/// Sampled epi-convergence of psi_lambda to psi along `lambdas` (decreasing):
/// condition (i) along each supplied x_k -> x, condition (ii) along the
/// constant sequence. Values above `divergence` count as +inf.
EpiReport epi_convergence_check(const std::function<double(const Vec&)>& psi, const std::vector<double>& lambdas,
                                const std::vector<Vec>& points,
                                const std::vector<std::function<Vec(int)>>& sequences, double divergence = 1e6);

enum class EntropyMethod { MonteCarlo, Quadrature };

/// int f ln f. Quadrature is available for n <= 2.
Quantity entropy(const LogConcaveDensity& density, EntropyMethod method, const SamplerConfig& config = {},
                 std::int64_t count = 200000);

struct MainChainReport {
  bool containment = false;  // e^{-3n} f(0) 1_{B/3} <= f on sampled directions
  double lhs = 0.0;          // (1/3) int |grad f| + ln(e^{-3n} f(0))
  double rhs = 0.0;          // n + int f ln f
  double std_error = 0.0;
  bool holds = false;
};

MainChainReport main_inequality_check(const LogConcaveDensity& density, std::int64_t count,
                                      const SamplerConfig& config, int directions = 1000);

}  // namespace lclab
