// SPDX-License-Identifier: Apache-2.0
// lclab: command-line front end for the log-concave measure toolkit.
#include "lclab/bm_verify.hpp"
#include "lclab/calculus.hpp"
#include "lclab/catalog.hpp"
#include "lclab/level_sets.hpp"
#include "lclab/moments.hpp"
#include "lclab/perimeter.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lclab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"perimeter", "Functional perimeter (or boundary measure of --body) against its bound"},
    {"coarea", "Co-area integral, closed form and planar grid"},
    {"moment-measure", "First moment and barycenter of the moment measure"},
    {"projections", "Average hyperplane projection norm; Cauchy formula for --body"},
    {"radial", "Radial identities and the sqrt(n+1) perimeter bound"},
    {"levelset", "Level-set mass, ball containment and gradient window"},
    {"calculus", "Entropy, main inequality chain and first variation"},
    {"bm-check", "Dimensional Brunn-Minkowski margins"},
    {"max-perimeter", "Sweep of boundary measures against the co-area cap"},
    {"suite", "Battery of the commands above"},
};

struct Config {
  std::string command;
  std::string measure = "gaussian";
  std::string body;
  std::vector<std::string> bodies;
  std::vector<int> n = {2};
  double t = -1.0;  // < 0: command default
  double lambda = 0.5;
  std::string exponent = "paper";
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out = "lclab-out";
  int chains = 4;
  std::int64_t burnin = -1;
  std::string method = "auto";
  int triples = 20;
  bool dump_samples = false;
};

// Everything except `threads` and `out`, which never change numeric output.
json snapshot(const Config& c) {
  return {{"command", c.command}, {"measure", c.measure},   {"body", c.body},         {"bodies", c.bodies},
          {"n", c.n},             {"t", c.t},               {"lambda", c.lambda},     {"exponent", c.exponent},
          {"samples", c.samples}, {"seed", c.seed},         {"chains", c.chains},     {"burnin", c.burnin},
          {"method", c.method},   {"triples", c.triples},   {"dump_samples", c.dump_samples}};
}

Config from_snapshot(const json& j) {
  Config c;
  c.command = j.at("command").get<std::string>();
  c.measure = j.value("measure", c.measure);
  c.body = j.value("body", c.body);
  c.bodies = j.value("bodies", c.bodies);
  c.n = j.value("n", c.n);
  c.t = j.value("t", c.t);
  c.lambda = j.value("lambda", c.lambda);
  c.exponent = j.value("exponent", c.exponent);
  c.samples = j.value("samples", c.samples);
  c.seed = j.value("seed", c.seed);
  c.chains = j.value("chains", c.chains);
  c.burnin = j.value("burnin", c.burnin);
  c.method = j.value("method", c.method);
  c.triples = j.value("triples", c.triples);
  c.dump_samples = j.value("dump_samples", c.dump_samples);
  return c;
}

struct Row {
  int n;
  std::string quantity;
  double estimate;
  double std_error;
  double paper_bound;  // NaN when the quantity has no bound
};

struct Report {
  json body = json::object();
  std::vector<Row> rows;
  std::vector<std::string> violations;  // names of the inequalities that failed
  std::vector<std::string> extra_outputs;
};

SamplerConfig sampler_config(const Config& c, std::uint64_t stream = 0) {
  SamplerConfig s;
  if (c.method == "exact") s.method = SampleMethod::Exact;
  else if (c.method == "hit-and-run") s.method = SampleMethod::HitAndRun;
  else if (c.method == "auto") s.method = SampleMethod::Auto;
  else fail(ErrorKind::InvalidArgument, "unknown --method '" + c.method + "'");
  s.seed = stream ? derive_seed(c.seed, stream) : c.seed;
  s.chains = c.chains;
  s.burn_in = c.burnin;
  return s;
}

json estimate_json(const MCEstimate& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"samples", e.n_samples}, {"seed", e.seed}};
}

void add_row(Report& r, int n, const std::string& q, double est, double se, double bound = std::nan("")) {
  r.rows.push_back({n, q, est, se, bound});
}

void check(Report& r, bool ok, const std::string& name) {
  if (!ok) r.violations.push_back(name);
}

const Catalog& catalog() {
  static const Catalog c = Catalog::standard();
  return c;
}

// --- subcommands -----------------------------------------------------------

Report cmd_perimeter(const Config& c) {
  Report r;
  for (int n : c.n) {
    const auto mu = catalog().measure(c.measure, n);
    json entry{{"n", n}};
    if (!c.body.empty()) {
      const auto K = catalog().body(c.body, n);
      PerimeterOptions po;
      po.samples = c.samples;
      po.seed = c.seed;
      const auto p = mu_perimeter(mu, K, PerimeterMethod::Boundary, po);
      const double cap = coarea_integral(mu);
      entry["boundary_measure"] = estimate_json(p.estimate);
      entry["coarea_cap"] = cap;
      add_row(r, n, "boundary_measure", p.estimate.value, p.estimate.std_error, cap);
      check(r, p.estimate.value <= cap + 3.0 * p.estimate.std_error, "boundary measure below the co-area cap");
    } else {
      const auto p = estimate_functional_perimeter(mu, c.samples, sampler_config(c));
      entry["functional_perimeter"] = estimate_json(p.estimate);
      entry["upper_cap"] = p.upper_cap;
      if (p.isotropic) entry["isotropic"] = *p.isotropic;
      if (const auto* ne = std::get_if<NormExponentialFamily>(&mu.family())) {
        const double target = surface_area(ne->body).value / (n * volume(ne->body).value);
        entry["identity_target"] = target;
        add_row(r, n, "functional_perimeter", p.estimate.value, p.estimate.std_error, target);
        check(r,
              std::abs(p.estimate.value - target) <= 3.0 * p.estimate.std_error + 1e-12 * target,
              "functional perimeter identity S(K)/(n vol K)");
      } else {
        add_row(r, n, "functional_perimeter", p.estimate.value, p.estimate.std_error, p.upper_cap);
        check(r, p.estimate.value - 3.0 * p.estimate.std_error <= p.upper_cap, "functional perimeter <= 12n");
      }
    }
    r.body["results"].push_back(entry);
  }
  return r;
}

Report cmd_coarea(const Config& c) {
  Report r;
  for (int n : c.n) {
    const auto mu = catalog().measure(c.measure, n);
    const double exact = coarea_integral(mu);
    json entry{{"n", n}, {"coarea", exact}};
    add_row(r, n, "coarea_integral", exact, 0.0);
    if (n == 2) {
      GridCoareaOptions opt;
      const double grid = coarea_grid([&](const Vec& x) { return std::exp(-mu.potential(x)); }, opt);
      const double h = 2.0 * opt.half_width / (opt.points - 1);
      entry["grid"] = grid;
      entry["grid_step"] = h;
      add_row(r, n, "coarea_grid", grid, 0.0, exact);
      check(r, std::abs(grid - exact) <= 5.0 * h * exact, "co-area grid agreement");
    }
    r.body["results"].push_back(entry);
  }
  return r;
}

void dump_samples(const Mat& points, const Config& c, const std::string& stem, Report& r) {
  const fs::path bin = fs::path(c.out) / (stem + ".f64");
  std::ofstream out(bin, std::ios::binary);
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(points(i, j));
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  const json sidecar{{"rows", points.rows()},  {"cols", points.cols()}, {"dtype", "float64"},
                     {"byte_order", "little"}, {"layout", "row-major"}, {"seed", c.seed}};
  std::ofstream(fs::path(c.out) / (stem + ".json")) << sidecar.dump(2) << "\n";
  r.extra_outputs.push_back(bin.string());
  r.extra_outputs.push_back((fs::path(c.out) / (stem + ".json")).string());
}

Report cmd_moment_measure(const Config& c) {
  Report r;
  for (int n : c.n) {
    const auto mu = catalog().measure(c.measure, n);
    const auto m = moment_measure(mu, c.samples, sampler_config(c), c.dump_samples);
    json entry{{"n", n}, {"first_moment", estimate_json(m.first_moment)}};
    std::vector<double> bary(m.barycenter.value.data(), m.barycenter.value.data() + n);
    std::vector<double> bary_se(m.barycenter.std_error.data(), m.barycenter.std_error.data() + n);
    entry["barycenter"] = bary;
    entry["barycenter_std_error"] = bary_se;
    add_row(r, n, "moment_first_moment", m.first_moment.value, m.first_moment.std_error);
    bool centered = true;
    for (int i = 0; i < n; ++i) {
      add_row(r, n, "moment_barycenter_" + std::to_string(i), bary[i], bary_se[i], 0.0);
      centered = centered && std::abs(bary[i]) <= 3.0 * bary_se[i] + 1e-12;
    }
    check(r, centered, "moment measure is centered");
    if (c.dump_samples) dump_samples(m.points, c, "moment_points_n" + std::to_string(n), r);
    r.body["results"].push_back(entry);
  }
  return r;
}

Report cmd_projections(const Config& c) {
  Report r;
  for (int n : c.n) {
    json entry{{"n", n}};
    const auto mu = catalog().measure(c.measure, n);
    const auto p = projection_l1_avg(mu, std::max<std::int64_t>(c.samples / 100, 100), c.seed);
    entry["average_projection_l1"] = estimate_json(p.average);
    entry["ratio_to_sqrt_n"] = p.ratio_to_sqrt_n;
    if (p.coarea_cross_check) entry["coarea_cross_check"] = *p.coarea_cross_check;
    const double bound = 4.0 * std::sqrt(static_cast<double>(n));
    add_row(r, n, "projection_l1_average", p.average.value, p.average.std_error, bound);
    check(r, p.average.value - 3.0 * p.average.std_error <= bound, "average projection <= 4 sqrt(n)");
    if (!c.body.empty()) {
      const auto K = catalog().body(c.body, n);
      const auto cp = cauchy_projection_avg(K, std::max<std::int64_t>(c.samples / 10, 100), c.seed);
      const double s = surface_area(K).value;
      entry["cauchy_surface"] = estimate_json(cp.surface);
      entry["surface_area"] = s;
      add_row(r, n, "cauchy_surface", cp.surface.value, cp.surface.std_error, s);
      check(r, std::abs(cp.surface.value - s) <= 3.0 * cp.surface.std_error + 1e-9 * s, "Cauchy surface formula");
    }
    r.body["results"].push_back(entry);
  }
  return r;
}

Report cmd_radial(const Config& c) {
  Report r;
  for (int n : c.n) {
    const auto mu = catalog().measure(c.measure, n);
    const auto id = radial_identities(mu);
    const auto p = estimate_functional_perimeter(mu, c.samples, sampler_config(c));
    r.body["results"].push_back({{"n", n},
                                 {"mass", id.mass},
                                 {"second_moment", id.second_moment},
                                 {"perimeter_identity", id.perimeter},
                                 {"perimeter_mc", estimate_json(p.estimate)},
                                 {"bound", id.bound}});
    add_row(r, n, "radial_mass", id.mass, 0.0, 1.0);
    add_row(r, n, "radial_perimeter", id.perimeter, 0.0, id.bound);
    add_row(r, n, "functional_perimeter", p.estimate.value, p.estimate.std_error, id.bound);
    check(r, id.holds && p.estimate.value <= id.bound + 3.0 * p.estimate.std_error + 1e-12 * id.bound,
          "radial perimeter <= sqrt(n+1)");
  }
  return r;
}

Report cmd_levelset(const Config& c) {
  Report r;
  for (int n : c.n) {
    const auto mu = catalog().measure(c.measure, n);
    const double t = c.t > 0 ? c.t : 3.0 * n;
    const auto cfg = sampler_config(c);
    const auto mass = mass_bound_check(mu, t, c.samples, cfg);
    const auto ball = ball_containment_check(mu, t, 2000, c.seed);
    const auto window = gradient_window(mu, c.samples, cfg);
    const auto integral = grad_sq_window_integral(mu, c.samples, cfg);
    json entry{{"n", n},
               {"t", t},
               {"mass", estimate_json(mass.mass)},
               {"headline_bound", mass.headline_bound},
               {"headline_applies", mass.headline_applies},
               {"intermediate_bound", mass.intermediate_bound},
               {"ball_min_radius", ball.min_boundary_radius},
               {"ball_within_hypothesis", ball.within_hypothesis},
               {"window_mass", estimate_json(window.mass)},
               {"window_max_gradient", window.max_gradient},
               {"window_gradient_cap", window.gradient_cap},
               {"window_integral", estimate_json(integral.estimate)},
               {"window_integral_bound", integral.chain_bound},
               {"ratio_to_n_cubed", integral.ratio_to_cube}};
    if (auto e = mass.exact_mass) entry["exact_mass"] = *e;
    r.body["results"].push_back(entry);
    add_row(r, n, "levelset_mass", mass.mass.value, mass.mass.std_error,
            mass.headline_applies ? mass.headline_bound : mass.intermediate_bound);
    add_row(r, n, "window_max_gradient", window.max_gradient, 0.0, window.gradient_cap);
    add_row(r, n, "window_grad_sq_integral", integral.estimate.value, integral.estimate.std_error,
            integral.chain_bound);
    check(r, mass.holds, "level-set mass bound");
    if (ball.within_hypothesis) check(r, ball.holds, "level set contains B/3");
    if (window.within_hypothesis) check(r, window.gradient_ok && window.mass_ok, "gradient window bound 9n^2");
    check(r, integral.holds, "window integral of |grad psi|^2");
  }
  return r;
}

Report cmd_calculus(const Config& c) {
  Report r;
  for (int n : c.n) {
    const auto mu = catalog().measure(c.measure, n);
    const auto cfg = sampler_config(c);
    const auto method = n <= 2 ? EntropyMethod::Quadrature : EntropyMethod::MonteCarlo;
    const auto h = entropy(mu, method, cfg, c.samples);
    const auto chain = main_inequality_check(mu, c.samples, cfg);
    r.body["results"].push_back({{"n", n},
                                 {"int_f_log_f", {{"value", h.value}, {"std_error", h.std_error}}},
                                 {"chain_lhs", chain.lhs},
                                 {"chain_rhs", chain.rhs},
                                 {"chain_std_error", chain.std_error},
                                 {"containment", chain.containment}});
    add_row(r, n, "int_f_log_f", h.value, h.std_error);
    add_row(r, n, "main_chain_lhs", chain.lhs, chain.std_error, chain.rhs);
    check(r, chain.holds, "main inequality chain");
  }
  // The one-dimensional first-variation identity rides along.
  const double log_norm = 0.5 * std::log(2.0 * std::numbers::pi);
  auto psi = [&](double x) { return 0.5 * x * x + log_norm; };
  const auto v = first_variation(psi, psi);
  const double target = 1.0 - 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e);
  r.body["first_variation_gaussian"] = {{"value", v.value}, {"error", v.error}, {"target", target}};
  add_row(r, 1, "first_variation_gaussian", v.value, v.error, target);
  check(r, std::abs(v.value - target) <= 1e-3, "first variation identity");
  return r;
}

double resolve_exponent(const std::string& spec, int n) {
  if (spec == "paper") return default_exponent(n);
  if (spec == "conjecture") return 1.0 / n;
  try {
    std::size_t used = 0;
    const double v = std::stod(spec, &used);
    if (used == spec.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::InvalidArgument, "--exponent must be a positive number, 'paper' or 'conjecture'");
}

Report cmd_bm_check(const Config& c) {
  Report r;
  for (int n : c.n) {
    const auto mu = catalog().measure(c.measure, n);
    const double e = resolve_exponent(c.exponent, n);
    std::vector<BodyTriple> triples;
    if (!c.bodies.empty()) {
      if (c.bodies.size() != 2) fail(ErrorKind::InvalidArgument, "--bodies takes exactly two bodies");
      triples.push_back({catalog().body(c.bodies[0], n), catalog().body(c.bodies[1], n), c.lambda,
                         c.bodies[0] + "|" + c.bodies[1]});
    } else {
      triples = random_triples(n, c.triples, 1.0, derive_seed(c.seed, 0xb0));
    }
    int counts[3] = {0, 0, 0};
    for (std::size_t i = 0; i < triples.size(); ++i) {
      BMOptions opt;
      opt.samples = c.samples;
      opt.seed = derive_seed(c.seed, i);
      const auto res = bm_check(mu, triples[i].K, triples[i].L, triples[i].lambda, e, opt);
      ++counts[static_cast<int>(res.verdict)];
      r.body["results"].push_back({{"n", n},
                                   {"pair", triples[i].label},
                                   {"lambda", triples[i].lambda},
                                   {"exponent", e},
                                   {"mass_K", res.masses.k.value},
                                   {"mass_L", res.masses.l.value},
                                   {"mass_M", res.masses.m.value},
                                   {"margin", res.margin},
                                   {"std_error", res.error},
                                   {"verdict", std::string(to_string(res.verdict))},
                                   {"confirmed", res.confirmed}});
      add_row(r, n, "bm_margin[" + std::to_string(i) + ":" + triples[i].label + "]", res.margin, res.error, 0.0);
    }
    r.body["summary"].push_back(
        {{"n", n}, {"exponent", e}, {"holds", counts[0]}, {"violated", counts[1]}, {"inconclusive", counts[2]}});
    check(r, counts[1] == 0, "dimensional Brunn-Minkowski inequality");
  }
  return r;
}

Report cmd_max_perimeter(const Config& c) {
  Report r;
  for (int n : c.n) {
    const auto mu = catalog().measure(c.measure, n);
    SweepOptions so;
    so.perimeter.samples = c.samples;
    so.perimeter.seed = c.seed;
    const auto rep = max_perimeter_scan(mu, so);
    json rows = json::array();
    for (const auto& row : rep.rows) {
      rows.push_back({{"body", row.body}, {"estimate", estimate_json(row.perimeter.estimate)}});
      add_row(r, n, "boundary_measure[" + row.body + "]", row.perimeter.estimate.value,
              row.perimeter.estimate.std_error, rep.cap);
    }
    r.body["results"].push_back({{"n", n},
                                 {"bodies", rows},
                                 {"sup", rep.sup_estimate},
                                 {"sup_body", rep.sup_body},
                                 {"cap", rep.cap},
                                 {"measured_constant", rep.measured_constant}});
    check(r, rep.all_below_cap, "boundary measure below the co-area cap");
  }
  return r;
}

Report run_command(const Config& c);

Report cmd_suite(const Config& c) {
  Report r;
  auto merge = [&](const std::string& name, Config sub) {
    sub.command = name;
    const Report part = run_command(sub);
    r.rows.insert(r.rows.end(), part.rows.begin(), part.rows.end());
    for (const auto& v : part.violations) r.violations.push_back(name + ": " + v);
    r.body[name] = part.body;
    r.body[name]["violations"] = part.violations;
  };
  Config base = c;
  base.body.clear();
  base.bodies.clear();
  base.measure = "cube-exp";
  merge("perimeter", base);
  base.measure = "gaussian";
  merge("radial", base);
  merge("coarea", base);
  merge("projections", base);
  merge("levelset", base);
  Config bm = base;
  bm.samples = std::min<std::int64_t>(c.samples, 20000);
  bm.triples = std::min(c.triples, 10);
  bm.exponent = "paper";
  merge("bm-check", bm);
  Config mp = base;
  mp.samples = std::min<std::int64_t>(c.samples, 20000);
  merge("max-perimeter", mp);
  return r;
}

Report run_command(const Config& c) {
  if (c.command == "perimeter") return cmd_perimeter(c);
  if (c.command == "coarea") return cmd_coarea(c);
  if (c.command == "moment-measure") return cmd_moment_measure(c);
  if (c.command == "projections") return cmd_projections(c);
  if (c.command == "radial") return cmd_radial(c);
  if (c.command == "levelset") return cmd_levelset(c);
  if (c.command == "calculus") return cmd_calculus(c);
  if (c.command == "bm-check") return cmd_bm_check(c);
  if (c.command == "max-perimeter") return cmd_max_perimeter(c);
  if (c.command == "suite") return cmd_suite(c);
  fail(ErrorKind::InvalidArgument, "unknown command '" + c.command + "'");
}

// --- output ----------------------------------------------------------------

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string to_csv(const std::vector<Row>& rows) {
  std::ostringstream os;
  os << "n,quantity,estimate,std_error,paper_bound,ratio\n";
  for (const auto& r : rows) {
    const double ratio = std::isnan(r.paper_bound) || r.paper_bound == 0.0 ? std::nan("") : r.estimate / r.paper_bound;
    os << r.n << "," << csv_field(r.quantity) << "," << format_double(r.estimate) << ","
       << format_double(r.std_error) << "," << format_double(r.paper_bound) << "," << format_double(ratio) << "\n";
  }
  return os.str();
}

int execute(Config c, bool quiet) {
  const auto t0 = std::chrono::steady_clock::now();
  if (c.threads > 0) set_thread_count(c.threads);
  fs::create_directories(c.out);
  const Report rep = run_command(c);

  json report = rep.body;
  report["command"] = c.command;
  report["config"] = snapshot(c);
  report["tool_version"] = LCLAB_VERSION;
  report["violations"] = rep.violations;
  report["status"] = rep.violations.empty() ? "ok" : "violated";

  const fs::path report_path = fs::path(c.out) / "report.json";
  const fs::path csv_path = fs::path(c.out) / "rows.csv";
  std::ofstream(report_path) << report.dump(2) << "\n";
  const std::string csv = to_csv(rep.rows);
  std::ofstream(csv_path) << csv;

  std::vector<std::string> outputs = {report_path.string(), csv_path.string()};
  outputs.insert(outputs.end(), rep.extra_outputs.begin(), rep.extra_outputs.end());
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const json manifest{{"command", c.command},          {"config", snapshot(c)},
                      {"seed", c.seed},                {"tool_version", LCLAB_VERSION},
                      {"wall_time_seconds", wall},     {"threads", thread_count()},
                      {"outputs", outputs}};
  std::ofstream(fs::path(c.out) / "manifest.json") << manifest.dump(2) << "\n";

  if (!quiet) std::cout << csv;
  for (const auto& v : rep.violations) std::cerr << "violated: " << v << "\n";
  return rep.violations.empty() ? kExitOk : kExitViolation;
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--measure", c.measure, "Measure catalog key or inline JSON descriptor");
  sub->add_option("--body", c.body, "Body catalog key or inline JSON descriptor");
  sub->add_option("--bodies", c.bodies, "Two bodies K L (bm-check)")->expected(2);
  sub->add_option("--n", c.n, "Dimension(s)")->check(CLI::Range(1, 64));
  sub->add_option("--t", c.t, "Level parameter (levelset; default 3n)");
  sub->add_option("--lambda", c.lambda, "Combination weight in [0,1]")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--exponent", c.exponent, "Concavity exponent: a value, 'paper' or 'conjecture'");
  sub->add_option("--samples", c.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "Master seed");
  sub->add_option("--threads", c.threads, "Worker threads (0 = hardware)");
  sub->add_option("--out", c.out, "Output directory");
  sub->add_option("--chains", c.chains, "Hit-and-run chains")->check(CLI::PositiveNumber);
  sub->add_option("--burnin", c.burnin, "Hit-and-run burn-in steps (-1 = 1000 n)");
  sub->add_option("--method", c.method, "Sampler: auto, exact or hit-and-run")
      ->check(CLI::IsMember({"auto", "exact", "hit-and-run"}));
  sub->add_option("--triples", c.triples, "Random (K, L, lambda) triples for bm-check")->check(CLI::PositiveNumber);
  sub->add_flag("--dump-samples", c.dump_samples, "Write moment-measure points as little-endian float64");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lclab: functional perimeter, level sets and Brunn-Minkowski checks for log-concave measures"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", std::string(LCLAB_VERSION));
  std::string manifest_path, manifest_out;
  bool quiet = false;
  app.add_option("--from-manifest", manifest_path, "Re-run the command recorded in a manifest.json");
  app.add_option("--manifest-out", manifest_out, "Output directory for --from-manifest (default: recorded)");
  app.add_flag("--quiet", quiet, "Do not echo the CSV rows");

  Config config;
  app.fallthrough();
  for (const auto& [name, description] : kCommands) {
    auto* sub = app.add_subcommand(name, description);
    add_common(sub, config);
    sub->callback([&config, name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (!manifest_path.empty()) {
      std::ifstream in(manifest_path);
      if (!in) {
        std::cerr << "error: cannot read manifest " << manifest_path << "\n";
        return kExitUsage;
      }
      const json m = json::parse(in);
      Config replay = from_snapshot(m.at("config"));
      replay.out = manifest_out.empty() ? fs::path(manifest_path).parent_path().string() : manifest_out;
      if (replay.out.empty()) replay.out = ".";
      replay.threads = config.threads;
      return execute(replay, quiet);
    }
    if (config.command.empty()) {
      std::cerr << app.help();
      return kExitUsage;
    }
    return execute(config, quiet);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: manifest: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
