// SPDX-License-Identifier: Apache-2.0
#include "lclab/calculus.hpp"

#include "lclab/numerics.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace lclab {
namespace {

using numerics::Fn1;

int center(const GridFunction& g) { return (g.points - 1) / 2; }

void require_same(const GridFunction& a, const GridFunction& b) {
  if (!a.same_grid(b)) fail(ErrorKind::GridMismatch, "grid functions live on different grids");
}

// Support [a, b] of a 1D extended-valued convex function within [lo, hi].
std::pair<double, double> support_interval(const Fn1& psi, double lo, double hi) {
  const auto best = numerics::minimize_convex(psi, lo, hi, 1e-12, 1025);
  if (!std::isfinite(best.value)) fail(ErrorKind::ImproperInput, "potential is +inf on the whole range");
  auto finite = [&](double x) { return std::isfinite(psi(x)); };
  const double a = finite(lo) ? lo : numerics::bisect_boundary(finite, best.argmin, lo);
  const double b = finite(hi) ? hi : numerics::bisect_boundary(finite, best.argmin, hi);
  return {a, b};
}

// Linear interpolation of a potential grid; +inf when any corner with
// positive weight is +inf or the point is off the grid.
double interpolate_potential(const GridFunction& g, const Vec& x) {
  const double h = g.step();
  int base[2] = {0, 0};
  double frac[2] = {0.0, 0.0};
  for (int d = 0; d < g.dim; ++d) {
    const double s = (x[d] + g.half_width) / h;
    if (s < -1e-9 || s > g.points - 1 + 1e-9) return kInf;
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, g.points - 2);
    base[d] = i;
    frac[d] = std::clamp(s - i, 0.0, 1.0);
    if (frac[d] < 1e-9) frac[d] = 0.0;
    if (frac[d] > 1.0 - 1e-9) frac[d] = 1.0;
  }
  double v = 0.0;
  const int corners = g.dim == 1 ? 2 : 4;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    int idx[2] = {base[0], base[1]};
    for (int d = 0; d < g.dim; ++d) {
      const bool up = (c >> d) & 1;
      w *= up ? frac[d] : 1.0 - frac[d];
      idx[d] += up;
    }
    if (w == 0.0) continue;
    const double p = g.at(idx[0], idx[1]);
    if (!std::isfinite(p)) return kInf;
    v += w * p;
  }
  return v;
}

}  // namespace

GridFunction GridFunction::sample(int dim, double half_width, int points, const std::function<double(const Vec&)>& f) {
  if (dim < 1 || dim > 2) fail(ErrorKind::DimensionTooLarge, "grid functions support dimension 1 or 2");
  if (points < 3 || points % 2 == 0) fail(ErrorKind::InvalidArgument, "grid needs an odd number (>= 3) of points");
  GridFunction g;
  g.dim = dim;
  g.half_width = half_width;
  g.points = points;
  g.values.resize(dim == 1 ? points : static_cast<std::size_t>(points) * points);
  for (std::size_t k = 0; k < g.values.size(); ++k) g.values[k] = f(g.point(k));
  return g;
}

Vec GridFunction::point(std::size_t k) const {
  Vec x(dim);
  x[0] = coord(static_cast<int>(k % points));
  if (dim == 2) x[1] = coord(static_cast<int>(k / points));
  return x;
}

bool GridFunction::same_grid(const GridFunction& o) const {
  return dim == o.dim && points == o.points && half_width == o.half_width;
}

bool convex_on_grid(const GridFunction& g, double slack) {
  double scale = 1.0;
  for (double v : g.values)
    if (std::isfinite(v)) scale = std::max(scale, std::abs(v));
  const int rows = g.dim == 1 ? 1 : g.points;
  for (int axis = 0; axis < g.dim; ++axis) {
    for (int line = 0; line < rows; ++line) {
      for (int i = 1; i + 1 < g.points; ++i) {
        auto v = [&](int k) { return axis == 0 ? g.at(k, line) : g.at(line, k); };
        const double a = v(i - 1), m = v(i), b = v(i + 1);
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        if (m > 0.5 * (a + b) + slack * scale) return false;
      }
    }
  }
  return true;
}

void write_grid(const GridFunction& g, const std::string& stem) {
  static_assert(std::endian::native == std::endian::little, "sample dumps assume a little-endian host");
  std::ofstream bin(stem + ".bin", std::ios::binary);
  if (!bin) fail(ErrorKind::InvalidArgument, "cannot write " + stem + ".bin");
  bin.write(reinterpret_cast<const char*>(g.values.data()), static_cast<std::streamsize>(g.values.size() * 8));
  nlohmann::json header = {{"dim", g.dim},
                           {"box", {-g.half_width, g.half_width}},
                           {"step", g.step()},
                           {"points", g.points}};
  std::ofstream(stem + ".json") << header.dump(2) << "\n";
}

GridFunction read_grid(const std::string& stem) {
  std::ifstream js(stem + ".json");
  if (!js) fail(ErrorKind::InvalidArgument, "cannot read " + stem + ".json");
  const auto header = nlohmann::json::parse(js);
  GridFunction g;
  g.dim = header.at("dim").get<int>();
  g.half_width = header.at("box").at(1).get<double>();
  g.points = header.at("points").get<int>();
  g.values.resize(g.dim == 1 ? g.points : static_cast<std::size_t>(g.points) * g.points);
  std::ifstream bin(stem + ".bin", std::ios::binary);
  bin.read(reinterpret_cast<char*>(g.values.data()), static_cast<std::streamsize>(g.values.size() * 8));
  if (!bin) fail(ErrorKind::InvalidArgument, "truncated grid payload " + stem + ".bin");
  return g;
}

GridFunction legendre(const GridFunction& phi) {
  bool proper = false;
  for (double v : phi.values) proper = proper || std::isfinite(v);
  if (!proper) fail(ErrorKind::ImproperInput, "legendre of an identically +inf function");
  GridFunction out = phi;
  const double h = phi.step();
  const std::size_t m = phi.size();
  std::vector<Vec> nodes(m);
  for (std::size_t k = 0; k < m; ++k) nodes[k] = phi.point(k);

  parallel_blocks(static_cast<int>(m), [&](int kx) {
    const Vec& x = nodes[kx];
    double best = -kInf;
    std::size_t arg = 0;
    for (std::size_t ky = 0; ky < m; ++ky) {
      if (!std::isfinite(phi.values[ky])) continue;
      const double v = x.dot(nodes[ky]) - phi.values[ky];
      if (v > best) {
        best = v;
        arg = ky;
      }
    }
    const int idx[2] = {static_cast<int>(arg % phi.points), static_cast<int>(arg / phi.points)};
    for (int d = 0; d < phi.dim; ++d) {
      if (idx[d] != 0 && idx[d] != phi.points - 1) continue;
      const int inward = idx[d] == 0 ? 1 : -1;
      int j[2] = {idx[0], idx[1]};
      j[d] += inward;
      const double neighbour = phi.at(j[0], phi.dim == 2 ? j[1] : 0);
      const double vn = std::isfinite(neighbour) ? x.dot(phi.point(j[0] + static_cast<std::size_t>(j[1]) * phi.points)) - neighbour
                                                 : -kInf;
      if ((best - vn) / h > 1.5 * h) best = kInf;
    }
    out.values[kx] = best;
  });
  return out;
}

GridFunction inf_convolution(const GridFunction& psi, const GridFunction& phi) {
  require_same(psi, phi);
  GridFunction out = psi;
  const int c = center(psi), p = psi.points;
  const int rows = psi.dim == 1 ? 1 : p;
  parallel_blocks(static_cast<int>(psi.size()), [&](int k) {
    const int xi = k % p, xj = k / p;
    double best = kInf;
    for (int yj = 0; yj < rows; ++yj) {
      const int dj = psi.dim == 1 ? 0 : xj - yj + c;
      if (dj < 0 || dj >= p) continue;
      for (int yi = 0; yi < p; ++yi) {
        const int di = xi - yi + c;
        if (di < 0 || di >= p) continue;
        const double v = psi.at(yi, yj) + phi.at(di, dj);
        if (v < best) best = v;
      }
    }
    out.values[k] = best;
  });
  return out;
}

GridFunction asplund(const GridFunction& f, const GridFunction& g) {
  require_same(f, g);
  GridFunction out = f;
  const int c = center(f), p = f.points;
  const int rows = f.dim == 1 ? 1 : p;
  parallel_blocks(static_cast<int>(f.size()), [&](int k) {
    const int xi = k % p, xj = k / p;
    double best = 0.0;
    for (int yj = 0; yj < rows; ++yj) {
      const int dj = f.dim == 1 ? 0 : xj - yj + c;
      if (dj < 0 || dj >= p) continue;
      for (int yi = 0; yi < p; ++yi) {
        const int di = xi - yi + c;
        if (di < 0 || di >= p) continue;
        best = std::max(best, f.at(yi, yj) * g.at(di, dj));
      }
    }
    out.values[k] = best;
  });
  return out;
}

GridFunction dilate(const GridFunction& f, double t) {
  if (!(t > 0)) fail(ErrorKind::InvalidArgument, "dilation factor must be positive");
  GridFunction pot = f;
  for (double& v : pot.values) v = v > 0 ? -std::log(v) : kInf;
  GridFunction out = f;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double p = interpolate_potential(pot, f.point(k) / t);
    out.values[k] = std::isfinite(p) ? std::exp(-t * p) : 0.0;
  }
  return out;
}

double asplund_self_identity_check(const std::function<double(const Vec&)>& psi, int dim, double t,
                                   double half_width, int points, const std::vector<Vec>& z) {
  const auto nodes = GridFunction::sample(dim, half_width, points, [](const Vec&) { return 0.0; });
  double worst = 0.0;
  for (const Vec& zz : z) {
    double best = kInf;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Vec y = nodes.point(k);
      const double v = psi(y) + t * psi((zz - y) / t);
      best = std::min(best, v);
    }
    const double lhs = std::exp(-best);
    const double rhs = std::exp(-(1.0 + t) * psi(zz / (1.0 + t)));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

VariationResult first_variation(const Fn1& psi_f, const Fn1& psi_g, const VariationOptions& options) {
  const auto [af, bf] = support_interval(psi_f, options.x_lo, options.x_hi);
  const auto [ag, bg] = support_interval(psi_g, options.u_lo, options.u_hi);
  auto f = [&](double x) { return std::exp(-psi_f(x)); };
  auto integral = [&](const Fn1& h, double a, double b) {
    const double mid = std::clamp(0.0, a, b);
    double s = 0.0;
    if (mid > a) s += numerics::integrate(h, a, mid, 1e-12);
    if (b > mid) s += numerics::integrate(h, mid, b, 1e-12);
    return s;
  };
  const double base = integral(f, af, bf);

  VariationResult r;
  for (int k = options.k_min; k <= options.k_max; ++k) {
    const double t = std::ldexp(1.0, -k);
    auto sup_conv = [&](double x) {
      // u ranges over supp g intersected with {u : x - t u in supp f}.
      const double lo = std::max(ag, (x - bf) / t), hi = std::min(bg, (x - af) / t);
      if (lo > hi) return 0.0;
      const auto m = numerics::minimize_convex([&](double u) { return psi_f(x - t * u) + t * psi_g(u); }, lo, hi,
                                               1e-13, 129);
      return std::exp(-m.value);
    };
    const double total = integral(sup_conv, af + t * ag, bf + t * bg);
    r.t.push_back(t);
    r.quotients.push_back((total - base) / t);
  }
  // First-order Richardson: the quotient is linear in t to leading order.
  std::vector<double> ext;
  for (std::size_t i = 1; i < r.quotients.size(); ++i) ext.push_back(2.0 * r.quotients[i] - r.quotients[i - 1]);
  r.value = ext.back();
  r.error = ext.size() >= 2 ? std::abs(ext.back() - ext[ext.size() - 2]) : 0.0;
  if (ext.size() >= 3) {
    const double prev = std::abs(ext[ext.size() - 2] - ext[ext.size() - 3]);
    if (r.error > prev && r.error > 1e-3 * (1.0 + std::abs(r.value)))
      fail(ErrorKind::NoConvergence, "first variation quotients do not settle");
  }
  return r;
}

ProxResult moreau(const std::function<double(const Vec&)>& psi, double lambda, const Vec& x) {
  if (!(lambda > 0)) fail(ErrorKind::InvalidArgument, "lambda must be positive");
  const int n = static_cast<int>(x.size());
  auto objective = [&](const Vec& y) { return psi(y) + (x - y).squaredNorm() / (2.0 * lambda); };

  Vec y = x;
  if (!std::isfinite(psi(y))) {
    const Vec origin = Vec::Zero(n);
    if (!std::isfinite(psi(origin))) fail(ErrorKind::ProxNoConverge, "no feasible starting point");
    const double s = numerics::bisect_boundary([&](double s) { return std::isfinite(psi(s * x)); }, 0.0, 1.0);
    y = s * x;
  }
  const double reach = 10.0 * (1.0 + x.norm() + std::sqrt(lambda));
  auto line = [&](const Vec& d) {
    const auto m = numerics::minimize_convex([&](double s) { return objective(y + s * d); }, -reach, reach, 1e-14, 257);
    if (std::isfinite(m.value) && m.value < objective(y)) y += m.argmin * d;
  };

  if (n == 1) {
    line(Vec::Ones(1));
    line(Vec::Ones(1));
    return {objective(y), y};
  }
  Rng rng(0x9e3779b97f4a7c15ULL);
  double current = objective(y);
  for (int sweep = 0; sweep < 2000; ++sweep) {
    for (int i = 0; i < n; ++i) line(Vec::Unit(n, i));
    for (int i = 0; i < 2 * n; ++i) line(rng.unit_vector(n));
    const double next = objective(y);
    if (current - next <= 1e-15 * (1.0 + std::abs(next))) return {next, y};
    current = next;
  }
  fail(ErrorKind::ProxNoConverge, "Moreau envelope line searches did not stagnate");
}

EpiReport epi_convergence_check(const std::function<double(const Vec&)>& psi, const std::vector<double>& lambdas,
                                const std::vector<Vec>& points, const std::vector<std::function<Vec(int)>>& sequences,
                                double divergence) {
  EpiReport report;
  auto note = [&](const std::string& s) {
    report.clean = false;
    report.violations.push_back(s);
  };
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Vec& x = points[p];
    const double target = psi(x);
    const std::string where = "point " + std::to_string(p);

    // (ii) along the constant sequence; also monotone as lambda decreases.
    double previous = -kInf;
    double last = 0.0;
    for (double lam : lambdas) {
      const double v = moreau(psi, lam, x).value;
      if (std::isfinite(target) && v > target + 1e-9 * (1.0 + std::abs(target))) note(where + ": envelope above psi");
      if (v < previous - 1e-9 * (1.0 + std::abs(previous))) note(where + ": envelope not monotone in lambda");
      previous = v;
      last = v;
    }
    if (std::isfinite(target)) {
      if (std::abs(last - target) > 1e-3 * (1.0 + std::abs(target))) note(where + ": constant sequence misses psi(x)");
    } else if (last < divergence) {
      note(where + ": no divergence along the constant sequence");
    }

    // (i) along the supplied sequence: the tail must not undershoot psi(x).
    if (p < sequences.size() && sequences[p]) {
      double tail = kInf;
      const std::size_t m = lambdas.size();
      for (std::size_t k = m >= 3 ? m - 3 : 0; k < m; ++k)
        tail = std::min(tail, moreau(psi, lambdas[k], sequences[p](static_cast<int>(k))).value);
      if (std::isfinite(target)) {
        if (tail < target - 1e-2 * (1.0 + std::abs(target))) note(where + ": liminf below psi(x)");
      } else if (tail < divergence) {
        note(where + ": liminf not certified infinite");
      }
    }
  }
  return report;
}

Quantity entropy(const LogConcaveDensity& density, EntropyMethod method, const SamplerConfig& config,
                 std::int64_t count) {
  const int n = density.dimension();
  if (method == EntropyMethod::MonteCarlo) {
    const auto e = mc_integral(density, [&](const Vec& x) { return -density.potential(x); }, count, config);
    return {e.value, e.std_error, false};
  }
  if (n > 2) fail(ErrorKind::DimensionTooLarge, "quadrature entropy supports n <= 2");
  double sd = 1.0;
  if (auto c = density.exact_covariance()) sd = std::sqrt(c->diagonal().maxCoeff());
  const double reach = 40.0 * sd;
  auto integrand = [&](const Vec& x) {
    const double p = density.potential(x);
    return std::isfinite(p) ? -p * std::exp(-p) : 0.0;
  };
  if (n == 1) {
    Vec x(1);
    const auto [a, b] = support_interval(
        [&](double s) {
          x[0] = s;
          return density.potential(x);
        },
        -reach, reach);
    const double v = numerics::integrate(
        [&](double s) {
          Vec y(1);
          y[0] = s;
          return integrand(y);
        },
        a, b, 1e-12);
    return {v, 0.0, true};
  }
  return {grid_integral(integrand, Vec::Constant(2, -reach), Vec::Constant(2, reach), 1600), 0.0, true};
}

MainChainReport main_inequality_check(const LogConcaveDensity& density, std::int64_t count,
                                      const SamplerConfig& config, int directions) {
  const int n = density.dimension();
  MainChainReport r;
  Rng rng(derive_seed(config.seed, 0xc0));
  const double psi0 = density.potential_at_origin();
  r.containment = true;
  for (int i = 0; i < directions; ++i) {
    if (density.potential(rng.unit_vector(n) / 3.0) - psi0 > 3.0 * n) r.containment = false;
  }
  auto acc = mc_accumulate(
      density, 2,
      [&](const Vec& x, std::span<double> out) {
        out[0] = density.gradient(x).norm();
        out[1] = -density.potential(x);
      },
      count, config);
  // lhs - rhs = mean of (|grad psi| / 3 - (-psi)) plus constants.
  const double N = static_cast<double>(acc.count());
  const double var = acc.variance(0) / 9.0 + acc.variance(1) - 2.0 * acc.covariance(0, 1) / 3.0;
  r.lhs = acc.mean(0) / 3.0 - 3.0 * n - psi0;
  r.rhs = n + acc.mean(1);
  r.std_error = std::sqrt(std::max(var, 0.0) / N);
  r.holds = r.containment && r.lhs <= r.rhs + 3.0 * r.std_error;
  return r;
}

}  // namespace lclab
