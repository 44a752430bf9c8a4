// SPDX-License-Identifier: Apache-2.0
#include "lclab/bm_verify.hpp"

#include <cmath>

namespace lclab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::Violated:
      return "violated";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

BMMasses bm_masses(const LogConcaveDensity& density, const ConvexBody& K, const ConvexBody& L, double lambda,
                   const BMOptions& options) {
  const ConvexBody M = minkowski_combo(K, L, lambda);
  const bool net = options.membership == Membership::DirectionNet &&
                   std::holds_alternative<MinkowskiCombination>(M.variant());
  const std::uint64_t net_seed = derive_seed(options.seed, 0x4e);
  SamplerConfig cfg;
  cfg.seed = options.seed;
  auto acc = mc_accumulate(
      density, 3,
      [&](const Vec& x, std::span<double> out) {
        out[0] = contains(K, x) ? 1.0 : 0.0;
        out[1] = contains(L, x) ? 1.0 : 0.0;
        const bool in_m = net ? contains_direction_net(M, x, options.net_size, net_seed) : contains(M, x);
        out[2] = in_m ? 1.0 : 0.0;
      },
      options.samples, cfg);
  BMMasses m;
  m.k = acc.estimate(0, options.seed);
  m.l = acc.estimate(1, options.seed);
  m.m = acc.estimate(2, options.seed);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.covariance(i, j) = acc.covariance(i, j);
  m.count = acc.count();
  return m;
}

BMCheckResult bm_evaluate(const BMMasses& masses, double lambda, double exponent) {
  for (const MCEstimate* e : {&masses.k, &masses.l, &masses.m})
    if (!(e->value > 0.0) || e->value < 10.0 * e->std_error)
      fail(ErrorKind::MassTooSmall, "a body mass is below ten standard errors");
  BMCheckResult r;
  r.masses = masses;
  r.lambda = lambda;
  r.exponent = exponent;
  const double c = exponent;
  const double pk = std::pow(masses.k.value, c), pl = std::pow(masses.l.value, c), pm = std::pow(masses.m.value, c);
  // Grouped so that K = L, lambda = 0 and lambda = 1 give exactly zero.
  r.margin = (pm - pl) - lambda * (pk - pl);
  const Eigen::Vector3d grad(-lambda * c * pk / masses.k.value, -(1.0 - lambda) * c * pl / masses.l.value,
                             c * pm / masses.m.value);
  const double var = grad.dot(masses.covariance * grad) / static_cast<double>(masses.count);
  r.error = std::sqrt(std::max(var, 0.0));
  r.verdict = r.margin > 3.0 * r.error ? Verdict::Holds
              : r.margin < -3.0 * r.error ? Verdict::Violated
                                          : Verdict::Inconclusive;
  r.first_verdict = r.verdict;
  return r;
}

BMCheckResult bm_check(const LogConcaveDensity& density, const ConvexBody& K, const ConvexBody& L, double lambda,
                       double exponent, const BMOptions& options) {
  if (!density.is_even()) fail(ErrorKind::InvalidArgument, "bm_check needs an even measure");
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail(ErrorKind::InvalidArgument, "lambda must lie in [0,1]");
  if (!(exponent > 0)) fail(ErrorKind::InvalidArgument, "exponent must be positive");
  auto r = bm_evaluate(bm_masses(density, K, L, lambda, options), lambda, exponent);
  if (r.verdict == Verdict::Violated && options.confirm_violations) {
    BMOptions again = options;
    again.seed = derive_seed(options.seed, 0xc0f);
    again.samples *= 4;
    again.net_size *= 4;
    auto second = bm_evaluate(bm_masses(density, K, L, lambda, again), lambda, exponent);
    second.first_verdict = r.verdict;
    second.confirmed = true;
    return second;
  }
  return r;
}

double default_exponent(int n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "default exponent needs n >= 2");
  return 1.0 / (static_cast<double>(n) * n * n * std::log(static_cast<double>(n)));
}

std::vector<BodyTriple> random_triples(int n, int count, double scale, std::uint64_t seed) {
  Rng rng(seed);
  const double root_n = std::sqrt(static_cast<double>(n));
  auto width = [&] { return scale * rng.uniform(0.5, 2.0); };
  auto ball_radius = [&] { return scale * root_n * rng.uniform(0.5, 1.5); };
  auto box = [&] {
    Vec w(n);
    for (int i = 0; i < n; ++i) w[i] = width();
    return ConvexBody::box(w);
  };
  auto polytope = [&] {
    return ConvexBody::random_symmetric_polytope(n, 2 * n, 0.6 * scale * root_n, 1.8 * scale * root_n, rng);
  };
  std::vector<BodyTriple> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double lambda = rng.uniform(0.05, 0.95);
    switch (i % 5) {
      case 0:
        out.push_back({box(), box(), lambda, "box+box"});
        break;
      case 1:
        out.push_back({ConvexBody::ball(n, ball_radius()), ConvexBody::ball(n, ball_radius()), lambda, "ball+ball"});
        break;
      case 2: {
        const double p = rng.uniform(1.0, 4.0);
        const double typical = scale * std::pow(static_cast<double>(n), 1.0 / p);
        out.push_back({ConvexBody::lp_ball(n, p, typical * rng.uniform(0.6, 1.8)),
                       ConvexBody::lp_ball(n, p, typical * rng.uniform(0.6, 1.8)), lambda, "lp+lp"});
        break;
      }
      case 3:
        out.push_back({polytope(), polytope(), lambda, "polytope+polytope"});
        break;
      default:
        out.push_back({box(), ConvexBody::ball(n, ball_radius()), lambda, "box+ball"});
        break;
    }
  }
  return out;
}

ScanReport concavity_exponent_scan(const LogConcaveDensity& density, const std::vector<BodyTriple>& triples,
                                   const std::vector<double>& exponents, const BMOptions& options) {
  std::vector<double> grid = exponents;
  std::sort(grid.begin(), grid.end());
  std::vector<BMMasses> masses;
  masses.reserve(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i) {
    BMOptions o = options;
    o.seed = derive_seed(options.seed, i);
    masses.push_back(bm_masses(density, triples[i].K, triples[i].L, triples[i].lambda, o));
  }
  ScanReport report;
  bool clean = true, strict = true;
  for (double c : grid) {
    ScanRow row{c};
    for (std::size_t i = 0; i < triples.size(); ++i) {
      switch (bm_evaluate(masses[i], triples[i].lambda, c).verdict) {
        case Verdict::Holds:
          ++row.holds;
          break;
        case Verdict::Violated:
          ++row.violated;
          break;
        case Verdict::Inconclusive:
          ++row.inconclusive;
          break;
      }
    }
    clean = clean && row.violated == 0;
    strict = strict && row.holds == static_cast<int>(triples.size());
    if (clean) report.largest_without_violation = c;
    if (strict) report.largest_all_hold = c;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace lclab
