// SPDX-License-Identifier: Apache-2.0
#include "lclab/catalog.hpp"

#include <cstdlib>
#include <fstream>

namespace lclab {
namespace {

using nlohmann::json;

json parse_lookup(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\n");
  if (first == std::string::npos || s[first] != '{') return nullptr;
  try {
    return json::parse(s);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, std::string("inline descriptor: ") + e.what());
  }
}

int resolve_dimension(const json& d, int n) {
  if (d.contains("dimension")) {
    const int fixed = d.at("dimension").get<int>();
    if (n > 0 && n != fixed)
      fail(ErrorKind::InvalidArgument,
           "descriptor fixes dimension " + std::to_string(fixed) + " but n = " + std::to_string(n));
    return fixed;
  }
  if (n < 1) fail(ErrorKind::InvalidArgument, "dimension required");
  return n;
}

double param(const json& d, const char* name, double fallback) {
  if (d.contains("parameters") && d["parameters"].contains(name)) return d["parameters"][name].get<double>();
  return fallback;
}

Mat matrix_from_json(const json& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows[0].size()) : 0;
  Mat m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != c) fail(ErrorKind::InvalidArgument, "ragged matrix");
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

Vec vector_from_json(const json& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  return out;
}

LogConcaveDensity isotropic_hyperbolic(int n) {
  const auto base = LogConcaveDensity::product_profile(n, CoordinateProfile::hyperbolic());
  const double sd = std::sqrt((*base.exact_covariance())(0, 0));
  return LogConcaveDensity::pushforward(base, AffineMap::make(Mat::Identity(n, n) / sd, Vec::Zero(n)));
}

json builtin_measures() {
  return json::parse(R"({
    "gaussian":     {"variant": "gaussian", "parameters": {"sigma": 1.0}},
    "cube-exp":     {"variant": "cube-exp"},
    "ball-exp":     {"variant": "ball-exp"},
    "radial-q1":    {"variant": "radial", "parameters": {"power": 1.0}},
    "radial-q4":    {"variant": "radial", "parameters": {"power": 4.0}},
    "pexp-1":       {"variant": "pexp", "parameters": {"p": 1.0}},
    "pexp-4":       {"variant": "pexp", "parameters": {"p": 4.0}},
    "cube-uniform": {"variant": "cube-uniform"},
    "hyperbolic":   {"variant": "hyperbolic"}
  })");
}

json builtin_bodies() {
  return json::parse(R"({
    "ball":  {"variant": "ball", "parameters": {"radius": 1.0}},
    "cube":  {"variant": "cube", "parameters": {"half_width": 1.0}},
    "cross": {"variant": "lp", "parameters": {"p": 1.0, "radius": 1.0}},
    "l4":    {"variant": "lp", "parameters": {"p": 4.0, "radius": 1.0}}
  })");
}

}  // namespace

ConvexBody body_from_json(const json& d, int n) {
  const std::string v = d.at("variant").get<std::string>();
  if (v == "ball") return ConvexBody::ball(resolve_dimension(d, n), param(d, "radius", 1.0));
  if (v == "cube") return ConvexBody::cube(resolve_dimension(d, n), param(d, "half_width", 1.0));
  if (v == "lp") return ConvexBody::lp_ball(resolve_dimension(d, n), param(d, "p", 2.0), param(d, "radius", 1.0));
  if (v == "box") {
    Vec w = vector_from_json(d.at("parameters").at("half_widths"));
    if (n > 0 && w.size() != n) fail(ErrorKind::InvalidArgument, "box half_widths do not match n");
    return ConvexBody::box(std::move(w));
  }
  if (v == "h-polytope") {
    const auto& p = d.at("parameters");
    return ConvexBody::h_polytope(matrix_from_json(p.at("normals")), vector_from_json(p.at("offsets")));
  }
  if (v == "v-polytope") return ConvexBody::v_polytope(matrix_from_json(d.at("parameters").at("vertices")));
  fail(ErrorKind::UnsupportedVariant, "unknown body variant '" + v + "'");
}

LogConcaveDensity measure_from_json(const json& d, int n_in) {
  const std::string v = d.at("variant").get<std::string>();
  const int n = resolve_dimension(d, n_in);
  auto base = [&]() -> LogConcaveDensity {
    if (v == "gaussian") return LogConcaveDensity::gaussian(n, param(d, "sigma", 1.0));
    if (v == "cube-exp") return LogConcaveDensity::isotropic_cube_exponential(n);
    if (v == "ball-exp") return LogConcaveDensity::isotropic_ball_exponential(n);
    if (v == "radial") return LogConcaveDensity::isotropic_radial_power(n, param(d, "power", 2.0));
    if (v == "pexp") return LogConcaveDensity::product_pexp(n, param(d, "p", 2.0));
    if (v == "cube-uniform") return LogConcaveDensity::isotropic_uniform_cube(n);
    if (v == "hyperbolic") return isotropic_hyperbolic(n);
    if (v == "norm-exp") return LogConcaveDensity::norm_exponential(body_from_json(d.at("body"), n));
    if (v == "uniform") return LogConcaveDensity::uniform(body_from_json(d.at("body"), n));
    fail(ErrorKind::UnsupportedVariant, "unknown measure variant '" + v + "'");
  }();
  if (!d.contains("map")) return base;
  const auto& m = d.at("map");
  Mat A = m.contains("linear") ? matrix_from_json(m["linear"]) : Mat::Identity(n, n);
  Vec b = m.contains("offset") ? vector_from_json(m["offset"]) : Vec::Zero(n);
  if (A.rows() != n || A.cols() != n || b.size() != n)
    fail(ErrorKind::InvalidArgument, "affine map does not match dimension " + std::to_string(n));
  return LogConcaveDensity::pushforward(base, AffineMap::make(std::move(A), std::move(b)));
}

Catalog Catalog::builtin() {
  Catalog c;
  c.merge(json{{"measures", builtin_measures()}, {"bodies", builtin_bodies()}});
  return c;
}

Catalog Catalog::standard() {
  Catalog c = builtin();
  if (const char* path = std::getenv("LCLAB_CATALOG"); path && *path) c.load_file(path);
  return c;
}

void Catalog::merge(const json& doc) {
  if (doc.contains("measures"))
    for (const auto& [k, v] : doc["measures"].items()) measures_[k] = v;
  if (doc.contains("bodies"))
    for (const auto& [k, v] : doc["bodies"].items()) bodies_[k] = v;
}

void Catalog::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open catalog " + path);
  try {
    merge(json::parse(in));
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, "catalog " + path + ": " + e.what());
  }
}

json Catalog::measure_descriptor(const std::string& s) const {
  if (auto inline_d = parse_lookup(s); !inline_d.is_null()) return inline_d;
  auto it = measures_.find(s);
  if (it == measures_.end()) fail(ErrorKind::InvalidArgument, "unknown measure '" + s + "'");
  return it->second;
}

json Catalog::body_descriptor(const std::string& s) const {
  if (auto inline_d = parse_lookup(s); !inline_d.is_null()) return inline_d;
  auto it = bodies_.find(s);
  if (it == bodies_.end()) fail(ErrorKind::InvalidArgument, "unknown body '" + s + "'");
  return it->second;
}

LogConcaveDensity Catalog::measure(const std::string& s, int n) const {
  return measure_from_json(measure_descriptor(s), n);
}

ConvexBody Catalog::body(const std::string& s, int n) const { return body_from_json(body_descriptor(s), n); }

std::vector<std::string> Catalog::measure_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : measures_) out.push_back(k);
  return out;
}

std::vector<std::string> Catalog::body_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : bodies_) out.push_back(k);
  return out;
}

std::vector<std::string> Catalog::isotropic_keys() {
  return {"gaussian", "cube-exp", "ball-exp", "radial-q1", "radial-q4", "pexp-1", "pexp-4", "cube-uniform", "hyperbolic"};
}

}  // namespace lclab
