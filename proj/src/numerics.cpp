// SPDX-License-Identifier: Apache-2.0
#include "lclab/numerics.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace lclab::numerics {

LineMinimum minimize_convex(const Fn1& f, double lo, double hi, double tol, int scan_points) {
  if (!(hi > lo)) return {lo, f(lo)};
  scan_points = std::max(scan_points, 3);
  const double step = (hi - lo) / (scan_points - 1);
  int best = -1;
  double best_value = kInf;
  for (int i = 0; i < scan_points; ++i) {
    const double v = f(lo + step * i);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best < 0) {
    // No finite value on the scan: the domain is empty or thinner than a cell.
    return {0.5 * (lo + hi), kInf};
  }
  double a = lo + step * std::max(best - 1, 0);
  double b = lo + step * std::min(best + 1, scan_points - 1);
  double best_x = lo + step * best;

  constexpr double kRatio = 0.6180339887498949;
  double c = b - kRatio * (b - a);
  double d = a + kRatio * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 400 && (b - a) > tol; ++iter) {
    if (fc < best_value) { best_value = fc; best_x = c; }
    if (fd < best_value) { best_value = fd; best_x = d; }
    bool keep_left;
    if (std::isinf(fc) && std::isinf(fd)) {
      if (best_x < c) keep_left = true;
      else if (best_x > d) keep_left = false;
      else { a = c; b = d; c = b - kRatio * (b - a); d = a + kRatio * (b - a); fc = f(c); fd = f(d); continue; }
    } else {
      keep_left = fc <= fd;
    }
    if (keep_left) {
      b = d; d = c; fd = fc;
      c = b - kRatio * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + kRatio * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = f(mid);
  if (fm <= best_value) return {mid, fm};
  return {best_x, best_value};
}

LineMinimum minimize_convex_from(const Fn1& f, double start, double step, double max_radius,
                                 double tol) {
  const double f0 = f(start);
  double left = step;
  double right = step;
  if (std::isfinite(f0)) {
    while (left < max_radius && f(start - left) <= f0) left *= 2.0;
    while (right < max_radius && f(start + right) <= f0) right *= 2.0;
  } else {
    left = right = max_radius;
  }
  left = std::min(left, max_radius);
  right = std::min(right, max_radius);
  auto result = minimize_convex(f, start - left, start + right, tol, 129);
  if (!std::isfinite(result.value)) {
    result = minimize_convex(f, start - max_radius, start + max_radius, tol, 4097);
  }
  return result;
}

double bisect_boundary(const std::function<bool(double)>& pred, double inside, double outside,
                       double tol) {
  for (int i = 0; i < 200 && std::abs(outside - inside) > tol; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (pred(mid)) inside = mid;
    else outside = mid;
  }
  return 0.5 * (inside + outside);
}

double bisect_root(const Fn1& f, double lo, double hi, double tol) {
  for (int i = 0; i < 300 && (hi - lo) > tol * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double integrate(const Fn1& f, double a, double b, double tol) {
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol, &error, &l1);
  if (!std::isfinite(value) || error > 1e3 * tol * std::max(1.0, l1)) {
    fail(ErrorKind::QuadratureNoConverge, "Gauss-Kronrod error estimate " + std::to_string(error));
  }
  return value;
}

double integrate_to_infinity(const Fn1& f, double a, double tol) {
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  auto shifted = [&](double s) { return f(a + s); };
  const double value = integrator.integrate(shifted, tol, &error, &l1);
  if (!std::isfinite(value) || error > 1e3 * tol * std::max(1.0, l1)) {
    fail(ErrorKind::QuadratureNoConverge, "exp-sinh error estimate " + std::to_string(error));
  }
  return value;
}

double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

double lower_gamma(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(a);
  return boost::math::tgamma_lower(a, x);
}

double normal_cdf(double x) { return 0.5 * boost::math::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace lclab::numerics
