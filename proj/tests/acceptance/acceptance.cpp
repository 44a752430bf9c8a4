// SPDX-License-Identifier: Apache-2.0
// Acceptance battery. One PASS/FAIL line per criterion, details indented.
#include "lclab/bm_verify.hpp"
#include "lclab/calculus.hpp"
#include "lclab/catalog.hpp"
#include "lclab/level_sets.hpp"
#include "lclab/moments.hpp"
#include "lclab/perimeter.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>

using namespace lclab;

namespace {

// Pinned tolerances.
constexpr double kSigmas = 3.0;
constexpr double kIdentityRelTol = 0.01;
constexpr double kZeroSeFloor = 1e-12;  // relative, used when every draw is identical
constexpr double kUpperTrendReported = 4.0;
constexpr double kUpperTrendHard = 12.0;
constexpr double kPsiSlack = 1e-8;
constexpr double kAsplundSteps = 5.0;
constexpr double kVariationTol = 1e-3;
constexpr double kHuberTol = 1e-6;
constexpr double kCoareaSteps = 5.0;
constexpr double kSweepFraction = 0.5;
constexpr double kProjectionConstant = 4.0;
constexpr double kScanTarget = 0.5;
constexpr double kScanStep = 0.05;

void detail(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

bool within_se(double estimate, double se, double target) {
  return std::abs(estimate - target) <= kSigmas * se + kZeroSeFloor * std::abs(target);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criterion 1: identity for the isotropic cube-exponential measure.
bool criterion_1(std::int64_t samples) {
  bool ok = true;
  for (int n = 2; n <= 8; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto mu = LogConcaveDensity::isotropic_cube_exponential(n);
    const auto& body = std::get<NormExponentialFamily>(mu.family()).body;
    const double target = exact_surface_area(body) / (n * exact_volume(body));
    SamplerConfig cfg;
    cfg.seed = 100 + n;
    const auto est = estimate_functional_perimeter(mu, samples, cfg).estimate;
    const double rel = std::abs(est.value - target) / target;
    bool row = within_se(est.value, est.std_error, target) && rel <= kIdentityRelTol;
    std::string truncated;
    for (double t : {1.0, 3.0, kInf}) {
      // Average of |grad psi| over tK under the restricted measure.
      const double mass = std::isinf(t) ? 1.0 : *exact_level_set_mass(mu, t);
      const double closed = truncated_surface_pair(mu, t).moment_part / mass;
      double mc = est.value;
      if (!std::isinf(t)) {
        const auto restricted = LogConcaveDensity::truncation(mu, level_set(mu, t), mass);
        SamplerConfig chain = cfg;
        chain.method = SampleMethod::HitAndRun;
        mc = mc_integral(restricted, [&](const Vec& x) { return restricted.gradient(x).norm(); }, samples / 10, chain)
                 .value;
      }
      const bool agree = std::abs(closed - target) <= kIdentityRelTol * target &&
                         std::abs(mc - target) <= kIdentityRelTol * target;
      row = row && agree;
      char buf[80];
      std::snprintf(buf, sizeof buf, " t=%g:%.6f/%.6f", t, closed, mc);
      truncated += buf;
    }
    const double secs = seconds_since(t0);
    row = row && secs < 60.0;
    ok = ok && row;
    detail("n=%d estimate=%.6f se=%.2e target=%.6f rel=%.2e%s time=%.1fs %s", n, est.value, est.std_error, target,
           rel, truncated.c_str(), secs, row ? "ok" : "FAIL");
  }
  return ok;
}

// Criterion 2: radial families against sqrt(n + 1), and Borell's Psi_g.
bool criterion_2(std::int64_t samples) {
  bool ok = true;
  const std::vector<std::pair<std::string, std::function<LogConcaveDensity(int)>>> families = {
      {"gaussian", [](int n) { return LogConcaveDensity::gaussian(n); }},
      {"radial-q1", [](int n) { return LogConcaveDensity::isotropic_radial_power(n, 1.0); }},
      {"radial-q4", [](int n) { return LogConcaveDensity::isotropic_radial_power(n, 4.0); }},
  };
  for (const auto& [name, make] : families) {
    double worst = -kInf;
    bool fam_ok = true;
    for (int n = 2; n <= 12; ++n) {
      const auto mu = make(n);
      SamplerConfig cfg;
      cfg.seed = 200 + n;
      const auto est = estimate_functional_perimeter(mu, samples, cfg).estimate;
      const auto id = radial_identities(mu);
      const double bound = std::sqrt(n + 1.0);
      const bool row = est.value <= bound + kSigmas * est.std_error + kZeroSeFloor * bound && id.holds;
      worst = std::max(worst, est.value - bound);
      fam_ok = fam_ok && row;
      if (!row) detail("%s n=%d estimate=%.5f identity=%.5f bound=%.5f FAIL", name.c_str(), n, est.value,
                       id.perimeter, bound);
    }
    const auto mu = make(4);
    const Vec u = Vec::Unit(4, 0);
    const double psi0 = mu.potential(Vec::Zero(4));
    const bool borell = psi_g_log_concave([&](double r) { return mu.potential(r * u) - psi0; }, 20.0, 200, kPsiSlack);
    fam_ok = fam_ok && borell;
    ok = ok && fam_ok;
    detail("%s n=2..12 max(estimate - sqrt(n+1))=%.4f Psi_g midpoint log-concave=%s %s", name.c_str(), worst,
           borell ? "yes" : "no", fam_ok ? "ok" : "FAIL");
  }
  return ok;
}

// Criterion 3: estimate / n across catalog isotropic families.
bool criterion_3(std::int64_t samples) {
  const auto catalog = Catalog::builtin();
  bool hard_ok = true, strict_ok = true;
  for (const auto& key : Catalog::isotropic_keys()) {
    double worst = 0.0;
    int worst_n = 0;
    for (int n = 2; n <= 10; ++n) {
      const auto mu = catalog.measure(key, n);
      SamplerConfig cfg;
      cfg.seed = 300 + n;
      const auto est = estimate_functional_perimeter(mu, samples, cfg).estimate;
      const double ratio = est.value / n;
      if (ratio > worst) {
        worst = ratio;
        worst_n = n;
      }
      if (est.value - kSigmas * est.std_error > kUpperTrendHard * n) hard_ok = false;
      if (est.value - kSigmas * est.std_error > kUpperTrendReported * n) strict_ok = false;
    }
    detail("%-13s max estimate/n=%.4f (n=%d)", key.c_str(), worst, worst_n);
  }
  detail("estimate/n <= %g everywhere: %s; hard cap %g: %s", kUpperTrendReported, strict_ok ? "yes" : "no",
         kUpperTrendHard, hard_ok ? "yes" : "no");
  return hard_ok;
}

// Criterion 4: the literal lower bound n omega_n^{1/n} (and, for reference,
// the full Sobolev right-hand side, which carries the L^{n/(n-1)} norm).
bool criterion_4(std::int64_t samples) {
  const auto catalog = Catalog::builtin();
  bool literal_ok = true, sobolev_ok = true;
  for (const auto& key : Catalog::isotropic_keys()) {
    if (!catalog.measure(key, 2).essentially_continuous()) continue;
    int literal_fail = 0;
    double min_gap = kInf;
    for (int n = 2; n <= 10; ++n) {
      SamplerConfig cfg;
      cfg.seed = 400 + n;
      const auto r = sobolev_lower_check(catalog.measure(key, n), samples, cfg);
      if (!r.literal_holds) ++literal_fail;
      sobolev_ok = sobolev_ok && r.holds;
      min_gap = std::min(min_gap, r.lhs.value - r.literal_bound);
    }
    literal_ok = literal_ok && literal_fail == 0;
    detail("%-13s literal bound fails at %d of 9 dimensions, min(estimate - n omega_n^{1/n})=%.4f", key.c_str(),
           literal_fail, min_gap);
  }
  detail("full Sobolev inequality (with the L^{n/(n-1)} norm) holds everywhere: %s", sobolev_ok ? "yes" : "no");
  return literal_ok;
}

// Criterion 5: one-dimensional f_p gradient moments.
bool criterion_5(std::int64_t samples) {
  bool match = true, increasing = true;
  double previous = -kInf;
  for (double alpha : {0.0, 1.0}) {
    for (double p : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      const auto mu = LogConcaveDensity::product_pexp(1, p);
      SamplerConfig cfg;
      cfg.seed = 500 + static_cast<std::uint64_t>(p) + 100 * static_cast<std::uint64_t>(alpha);
      const auto est = gradient_moment(mu, alpha, samples, cfg);
      const double exact = pexp_gradient_moment(p, alpha);
      const bool row = within_se(est.value, est.std_error, exact);
      match = match && row;
      if (alpha == 1.0) {
        if (!(est.value > previous)) increasing = false;
        previous = est.value;
      }
      detail("alpha=%g p=%-2g estimate=%.5f se=%.1e closed form=%.5f %s", alpha, p, est.value, est.std_error, exact,
             row ? "ok" : "FAIL");
    }
  }
  detail("closed form matched: %s; alpha=1 sequence increasing in p: %s", match ? "yes" : "no",
         increasing ? "yes" : "no");
  return match && increasing;
}

// Criterion 6: level-set suite.
bool criterion_6(std::int64_t samples) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int n : {10, 12}) {
    for (const std::string key : {"gaussian", "cube-exp"}) {
      const auto mu = Catalog::builtin().measure(key, n);
      SamplerConfig cfg;
      cfg.seed = 600 + n;
      const auto mass = mass_bound_check(mu, 3.0 * n, samples, cfg);
      const auto window = gradient_window(mu, samples, cfg);
      const auto integral = grad_sq_window_integral(mu, samples, cfg);
      bool row = mass.holds && window.gradient_ok && integral.holds;
      std::string ball = "-";
      if (n == 10) {
        const auto bc = ball_containment_check(mu, 3.0 * n, 2000, cfg.seed);
        row = row && bc.holds;
        ball = bc.holds ? "yes" : "no";
      }
      ok = ok && row;
      detail("%-8s n=%d mass(R_3n)=%.6f>=%.6f  (1/3)B in R_3n:%s  sup|grad psi| on A=%.2f<=%.0f  "
             "int_A|grad psi|^2=%.2f<=%.1f %s",
             key.c_str(), n, mass.mass.value, mass.headline_bound, ball.c_str(), window.max_gradient,
             window.gradient_cap, integral.estimate.value, integral.chain_bound, row ? "ok" : "FAIL");
    }
  }
  const double secs = seconds_since(t0);
  detail("time %.1fs (limit 120s)", secs);
  return ok && secs < 120.0;
}

// Criterion 7: calculus identities.
bool criterion_7() {
  bool ok = true;
  // f * (t . f) = (1 + t) . f on a grid, 1D and 2D.
  for (int dim : {1, 2}) {
    const int points = dim == 1 ? 401 : 81;
    const double hw = 4.0;
    const double h = 2.0 * hw / (points - 1);
    std::vector<Vec> z;
    Rng rng(700 + dim);
    for (int i = 0; i < 20; ++i) z.push_back(rng.normal_vector(dim));
    const double dev = asplund_self_identity_check([](const Vec& x) { return 0.5 * x.squaredNorm(); }, dim, 0.5, hw,
                                                   points, z);
    const bool row = dev < kAsplundSteps * h;
    ok = ok && row;
    detail("asplund self-identity dim=%d max deviation=%.3e  5h=%.3e %s", dim, dev, kAsplundSteps * h,
           row ? "ok" : "FAIL");
  }
  {
    const double log_norm = 0.5 * std::log(2.0 * std::numbers::pi);
    auto psi = [&](double x) { return 0.5 * x * x + log_norm; };
    const auto v = first_variation(psi, psi);
    const double target = 1.0 - 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
    const bool row = std::abs(v.value - target) <= kVariationTol;
    ok = ok && row;
    detail("first variation (gaussian, gaussian)=%.6f  1+int f ln f=%.6f %s", v.value, target, row ? "ok" : "FAIL");
  }
  {
    double errs[2];
    int idx = 0;
    for (int points : {201, 401}) {
      auto phi = GridFunction::sample(1, 3.0, points,
                                       [](const Vec& x) { return std::log(std::cosh(x[0])) + 0.25 * x[0] * x[0]; });
      const auto back = legendre(legendre(phi));
      double err = 0.0;
      for (int i = 0; i < points; ++i)
        if (std::abs(phi.coord(i)) <= 1.5) err = std::max(err, std::abs(back.at(i) - phi.at(i)));
      errs[idx++] = err / phi.step();
    }
    const bool row = errs[0] <= 1.0 && errs[1] <= 1.0;
    ok = ok && row;
    detail("legendre involution error / h: %.3f (h=0.03), %.3f (h=0.015) %s", errs[0], errs[1], row ? "ok" : "FAIL");
  }
  {
    double worst = 0.0;
    const double lambda = 0.7;
    for (double x : {-3.0, -0.9, -0.3, 0.0, 0.2, 0.69, 1.5, 4.0}) {
      const auto prox = moreau([](const Vec& y) { return std::abs(y[0]); }, lambda, Vec::Constant(1, x));
      const double huber = std::abs(x) <= lambda ? x * x / (2 * lambda) : std::abs(x) - lambda / 2;
      worst = std::max(worst, std::abs(prox.value - huber));
    }
    const bool row = worst <= kHuberTol;
    ok = ok && row;
    detail("moreau envelope of |x| vs Huber: max error=%.2e %s", worst, row ? "ok" : "FAIL");
  }
  {
    auto psi = [](const Vec& x) { return std::sqrt(1.0 + x.squaredNorm()); };
    std::vector<Vec> points = {Vec::Zero(2), Vec::Constant(2, 1.0), (Vec(2) << -2.0, 0.5).finished()};
    std::vector<std::function<Vec(int)>> seqs = {
        [](int k) { return Vec::Constant(2, std::pow(0.5, k)); },
        [](int k) { return Vec::Constant(2, 1.0 + std::pow(0.5, k)); },
        [](int k) { return (Vec(2) << -2.0 + std::pow(0.5, k), 0.5).finished(); },
    };
    std::vector<double> lambdas;
    for (int k = 0; k <= 14; ++k) lambdas.push_back(std::pow(0.5, k));
    const auto rep = epi_convergence_check(psi, lambdas, points, seqs);
    for (const auto& v : rep.violations) detail("epi-convergence: %s", v.c_str());
    ok = ok && rep.clean;
    detail("epi-convergence report clean: %s (%zu violations)", rep.clean ? "yes" : "no", rep.violations.size());
  }
  return ok;
}

// Criterion 8: co-area identity and maximal perimeter sweeps.
bool criterion_8(std::int64_t samples) {
  bool ok = true;
  const auto catalog = Catalog::builtin();
  for (const std::string key : {"gaussian", "cube-exp"}) {
    const auto mu = catalog.measure(key, 2);
    GridCoareaOptions opt;
    const double h = 2.0 * opt.half_width / (opt.points - 1);
    const double grid = coarea_grid([&](const Vec& x) { return std::exp(-mu.potential(x)); }, opt);
    const double exact = coarea_integral(mu);
    const bool row = std::abs(grid - exact) <= kCoareaSteps * h * exact;
    ok = ok && row;
    detail("co-area %s 2D grid=%.6f closed form=%.6f  tol=%.2e %s", key.c_str(), grid, exact,
           kCoareaSteps * h * exact, row ? "ok" : "FAIL");
  }
  for (const std::string key : {"gaussian", "cube-exp"}) {
    for (int n = 2; n <= 4; ++n) {
      SweepOptions so;
      so.perimeter.samples = samples;
      so.perimeter.seed = 800 + n;
      const auto rep = max_perimeter_scan(catalog.measure(key, n), so);
      ok = ok && rep.all_below_cap;
      detail("%-8s n=%d sup mu+(dA)=%.4f (%s) cap=%.4f all below cap: %s", key.c_str(), n, rep.sup_estimate,
             rep.sup_body.c_str(), rep.cap, rep.all_below_cap ? "yes" : "no");
    }
  }
  for (int n = 3; n <= 8; ++n) {
    SweepOptions so;
    so.perimeter.samples = samples;
    so.perimeter.seed = 850 + n;
    so.ball_radii = {0.5, 0.8, 1.0};
    so.cube_scales = {0.5, 0.8, 0.9, 0.95, 0.99};
    const auto rep = max_perimeter_scan(catalog.measure("cube-uniform", n), so);
    const bool row = rep.sup_estimate >= kSweepFraction * n;
    ok = ok && row;
    detail("isotropic cube n=%d sup mu+(dA)=%.4f (%s) measured constant=%.4f %s", n, rep.sup_estimate,
           rep.sup_body.c_str(), rep.measured_constant, row ? "ok" : "FAIL");
  }
  return ok;
}

// Criterion 9: Cauchy's formula and averaged projections.
bool criterion_9() {
  bool ok = true;
  const auto cauchy = cauchy_projection_avg(ConvexBody::cube(3, 0.5), 10000, 900);
  const bool c_ok = within_se(cauchy.mean_projection.value, cauchy.mean_projection.std_error, 1.5);
  ok = ok && c_ok;
  detail("unit cube R^3 mean projection=%.5f se=%.1e target=1.5 %s", cauchy.mean_projection.value,
         cauchy.mean_projection.std_error, c_ok ? "ok" : "FAIL");
  const auto catalog = Catalog::builtin();
  for (const std::string key : {"cube-exp", "gaussian"}) {
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
      const auto rep = projection_l1_avg(catalog.measure(key, n), 2000, 910 + n);
      worst = std::max(worst, rep.ratio_to_sqrt_n);
    }
    const bool row = worst <= kProjectionConstant;
    ok = ok && row;
    detail("%-8s max over n=2..8 of average ||P_E f||_1 / sqrt(n)=%.4f %s", key.c_str(), worst, row ? "ok" : "FAIL");
  }
  return ok;
}

// Criterion 10: dimensional Brunn-Minkowski.
bool criterion_10(std::int64_t samples, int triples) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  const auto catalog = Catalog::builtin();
  for (const auto& key : Catalog::isotropic_keys()) {
    for (int n = 2; n <= 4; ++n) {
      const auto mu = catalog.measure(key, n);
      const double c = default_exponent(n);
      BMOptions opt;
      opt.samples = samples;
      int holds = 0, violated = 0, inconclusive = 0, too_small = 0;
      const auto list = random_triples(n, triples, 1.0, 1000 + n);
      for (std::size_t i = 0; i < list.size(); ++i) {
        opt.seed = derive_seed(1010 + n, i);
        try {
          const auto r = bm_check(mu, list[i].K, list[i].L, list[i].lambda, c, opt);
          (r.verdict == Verdict::Holds ? holds : r.verdict == Verdict::Violated ? violated : inconclusive)++;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::MassTooSmall) throw;
          ++too_small;
        }
      }
      ok = ok && violated == 0;
      detail("%-13s n=%d c=%.5f holds=%d inconclusive=%d violated=%d mass-too-small=%d", key.c_str(), n, c, holds,
             inconclusive, violated, too_small);
    }
  }
  std::vector<double> grid;
  for (int k = 1; k <= 20; ++k) grid.push_back(kScanStep * k);
  BMOptions opt;
  opt.samples = samples;
  const auto scan = concavity_exponent_scan(catalog.measure("gaussian", 2), random_triples(2, 50, 1.0, 1099), grid,
                                            opt);
  const bool scan_ok = scan.largest_without_violation >= kScanTarget - kScanStep - 1e-12;
  ok = ok && scan_ok;
  detail("gaussian n=2 scan: largest c without violation=%.2f, largest c with all holding=%.2f %s",
         scan.largest_without_violation, scan.largest_all_hold, scan_ok ? "ok" : "FAIL");
  const double secs = seconds_since(t0);
  detail("time %.1fs (limit 600s)", secs);
  return ok && secs < 600.0;
}

// Criterion 11: non-convex Markov set, convex level sets.
bool criterion_11() {
  const auto mu = LogConcaveDensity::product_profile(2, CoordinateProfile::hyperbolic());
  SamplerConfig cfg;
  cfg.seed = 1100;
  const auto rep = markov_set(mu, 100000, cfg, 1.0, 10000, 3.0);
  const bool found = !rep.convexity.convex_witnessed;
  if (found)
    detail("{|grad psi| <= 1}: non-convex witness x=(%.3f, %.3f) y=(%.3f, %.3f) after %d pairs", rep.convexity.x[0],
           rep.convexity.x[1], rep.convexity.y[0], rep.convexity.y[1], rep.convexity.pairs_tested);
  else
    detail("{|grad psi| <= 1}: no witness in %d pairs", rep.convexity.pairs_tested);
  const auto deflt = markov_set(mu, 100000, cfg);
  detail("default threshold 2*perimeter=%.4f, mass=%.4f, convex witnessed: %s", deflt.threshold, deflt.mass.value,
         deflt.convexity.convex_witnessed ? "yes" : "no");
  bool level_ok = true;
  const auto catalog = Catalog::builtin();
  std::vector<std::pair<std::string, LogConcaveDensity>> measures = {{"markov example", mu}};
  for (const auto& key : Catalog::isotropic_keys()) measures.emplace_back(key, catalog.measure(key, 2));
  for (const auto& [name, m] : measures) {
    for (double t : {0.5, 2.0, 6.0}) {
      const auto region = level_set(m, t);
      const double r = 1.2 * std::max(level_set_radius(m, t, Vec::Unit(2, 0)),
                                      level_set_radius(m, t, Vec::Constant(2, std::sqrt(0.5))));
      const auto c = is_convex_region(region, Box{Vec::Constant(2, r)}, 2000, 1110);
      level_ok = level_ok && c.convex_witnessed;
      if (!c.convex_witnessed) detail("level set %s t=%g reported non-convex", name.c_str(), t);
    }
  }
  detail("all level sets convex-witnessed: %s", level_ok ? "yes" : "no");
  return found && level_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lclab acceptance battery"};
  std::vector<int> only;
  int threads = 0;
  bool quick = false;
  app.add_option("--criterion", only, "Run only these criteria (1-11)")->check(CLI::Range(1, 11));
  app.add_option("--threads", threads, "Worker threads (0 = hardware)");
  app.add_flag("--quick", quick, "Reduced sample sizes for smoke runs");
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_thread_count(threads);

  const std::set<int> chosen(only.begin(), only.end());
  const auto scale = [&](std::int64_t full) { return quick ? std::max<std::int64_t>(full / 20, 2000) : full; };
  const std::vector<std::pair<std::string, std::function<bool()>>> criteria = {
      {"exact identity S(K)/(n vol K), cube-exponential", [&] { return criterion_1(scale(1000000)); }},
      {"radial bound sqrt(n+1) and Psi_g log-concavity", [&] { return criterion_2(scale(200000)); }},
      {"linear upper trend estimate/n", [&] { return criterion_3(scale(100000)); }},
      {"lower trend n omega_n^{1/n}", [&] { return criterion_4(scale(100000)); }},
      {"f_p gradient moments", [&] { return criterion_5(scale(400000)); }},
      {"level-set suite", [&] { return criterion_6(scale(100000)); }},
      {"calculus identities", [&] { return criterion_7(); }},
      {"co-area and maximal perimeter", [&] { return criterion_8(scale(50000)); }},
      {"projections and Cauchy formula", [&] { return criterion_9(); }},
      {"Brunn-Minkowski at c = 1/(n^3 ln n)", [&] { return criterion_10(scale(20000), quick ? 20 : 200); }},
      {"non-convex Markov set", [&] { return criterion_11(); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    if (!chosen.empty() && !chosen.count(k)) continue;
    bool pass = false;
    std::string err;
    try {
      pass = criteria[i].second();
    } catch (const Error& e) {
      err = std::string(" [") + e.what() + "]";
    }
    if (!pass) ++failures;
    std::printf("CRITERION %d %s: %s%s\n", k, pass ? "PASS" : "FAIL", criteria[i].first.c_str(), err.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
