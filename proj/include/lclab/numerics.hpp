// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/core.hpp"

#include <functional>

namespace lclab::numerics {

using Fn1 = std::function<double(double)>;

struct LineMinimum {
  double argmin = 0.0;
  double value = kInf;
};

/// Minimizes a convex, possibly extended-valued function on [lo, hi]:
/// a uniform scan locates the basin, golden-section refines it to `tol`.
LineMinimum minimize_convex(const Fn1& f, double lo, double hi, double tol = 1e-12,
                            int scan_points = 65);

/// Same, but first grows a bracket around `start` until f rises on both
/// sides (or `max_radius` is reached).
LineMinimum minimize_convex_from(const Fn1& f, double start, double step, double max_radius,
                                 double tol = 1e-12);

/// Boundary of a sublevel-type predicate along [inside, outside]:
/// pred(inside) is true, pred(outside) false.
double bisect_boundary(const std::function<bool(double)>& pred, double inside, double outside,
                       double tol = 1e-13);

/// Root of an increasing function on [lo, hi] by bisection.
double bisect_root(const Fn1& f, double lo, double hi, double tol = 1e-14);

/// Adaptive Gauss-Kronrod on [a, b]. Throws QuadratureNoConverge when the
/// error estimate exceeds `tol` relative to the result magnitude.
double integrate(const Fn1& f, double a, double b, double tol = 1e-11);

/// exp-sinh quadrature on [a, +inf).
double integrate_to_infinity(const Fn1& f, double a = 0.0, double tol = 1e-11);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Lower incomplete gamma gamma(a, x) (not regularized).
double lower_gamma(double a, double x);
double normal_cdf(double x);
double normal_pdf(double x);

}  // namespace lclab::numerics
