// SPDX-License-Identifier: Apache-2.0
#include "lclab/bodies.hpp"

#include "lclab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

namespace lclab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double dual_exponent(double p) { return p / (p - 1.0); }

double lp_norm(const Vec& x, double p) {
  if (p == 1.0) return x.lpNorm<1>();
  if (p == 2.0) return x.norm();
  const double m = x.lpNorm<Eigen::Infinity>();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double xi : x) s += std::pow(std::abs(xi) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double binomial(int m, int k) {
  if (k < 0 || k > m) return 0.0;
  return std::exp(std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0));
}

// Calls visit(indices) for every k-subset of {0..m-1} in lexicographic order.
template <class F>
void for_each_subset(int m, int k, F&& visit) {
  if (k > m || k <= 0) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

constexpr double kSubsetLimit = 5e6;

double point_scale(const Mat& pts) {
  double s = 0.0;
  for (int i = 0; i < pts.rows(); ++i) s = std::max(s, pts.row(i).norm());
  return std::max(s, 1e-300);
}

void attach_incidence(PolytopeFacets& f) {
  const double tol = 1e-9 * std::max(1.0, point_scale(f.vertices));
  f.facet_vertices.assign(f.normals.rows(), {});
  for (int i = 0; i < f.normals.rows(); ++i)
    for (int v = 0; v < f.vertices.rows(); ++v)
      if (std::abs(f.normals.row(i).dot(f.vertices.row(v)) - f.offsets[i]) <= tol)
        f.facet_vertices[i].push_back(v);
}

// Facets of conv(points) for a body containing the origin in its interior.
PolytopeFacets facets_from_points(const Mat& pts) {
  const int n = static_cast<int>(pts.cols());
  const int m = static_cast<int>(pts.rows());
  if (binomial(m, n) > kSubsetLimit)
    fail(ErrorKind::DimensionTooLarge, "facet enumeration too large for this polytope");
  const double scale = point_scale(pts);
  const double tol = 1e-9 * std::max(1.0, scale);
  std::vector<Vec> normals;
  std::vector<double> offsets;
  if (n == 1) {
    const double hi = pts.col(0).maxCoeff();
    const double lo = -pts.col(0).minCoeff();
    normals = {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
    offsets = {hi, lo};
  } else {
    for_each_subset(m, n, [&](const std::vector<int>& s) {
      Mat d(n - 1, n);
      for (int r = 1; r < n; ++r) d.row(r - 1) = pts.row(s[r]) - pts.row(s[0]);
      Eigen::FullPivLU<Mat> lu(d);
      lu.setThreshold(1e-10);
      if (lu.rank() != n - 1) return;
      Vec a = lu.kernel().col(0);
      a.normalize();
      double b = a.dot(pts.row(s[0]).transpose());
      if (std::abs(b) <= tol) return;
      if (b < 0) {
        a = -a;
        b = -b;
      }
      for (int v = 0; v < m; ++v)
        if (a.dot(pts.row(v).transpose()) > b + tol) return;
      for (std::size_t f = 0; f < normals.size(); ++f)
        if ((normals[f] - a).norm() < 1e-7 && std::abs(offsets[f] - b) < 1e-7 * scale) return;
      normals.push_back(a);
      offsets.push_back(b);
    });
  }
  PolytopeFacets out;
  out.normals.resize(static_cast<int>(normals.size()), n);
  out.offsets.resize(static_cast<int>(normals.size()));
  for (std::size_t f = 0; f < normals.size(); ++f) {
    out.normals.row(static_cast<int>(f)) = normals[f].transpose();
    out.offsets[static_cast<int>(f)] = offsets[f];
  }
  // Keep only extreme points: those on at least n facets.
  std::vector<int> keep;
  for (int v = 0; v < m; ++v) {
    int hits = 0;
    for (std::size_t f = 0; f < normals.size(); ++f)
      if (std::abs(normals[f].dot(pts.row(v).transpose()) - offsets[f]) <= tol) ++hits;
    if (hits < n) continue;
    bool dup = false;
    for (int k : keep) dup = dup || (pts.row(k) - pts.row(v)).norm() <= tol;
    if (!dup) keep.push_back(v);
  }
  out.vertices.resize(static_cast<int>(keep.size()), n);
  for (std::size_t k = 0; k < keep.size(); ++k) out.vertices.row(static_cast<int>(k)) = pts.row(keep[k]);
  attach_incidence(out);
  return out;
}

PolytopeFacets vertices_from_halfspaces(const Mat& normals, const Vec& offsets) {
  const int n = static_cast<int>(normals.cols());
  const int m = static_cast<int>(normals.rows());
  if (binomial(m, n) > kSubsetLimit)
    fail(ErrorKind::DimensionTooLarge, "vertex enumeration too large for this polytope");
  const double scale = std::max(1.0, offsets.cwiseAbs().maxCoeff());
  const double tol = 1e-9 * scale;
  std::vector<Vec> verts;
  for_each_subset(m, n, [&](const std::vector<int>& s) {
    Mat a(n, n);
    Vec b(n);
    for (int r = 0; r < n; ++r) {
      a.row(r) = normals.row(s[r]);
      b[r] = offsets[s[r]];
    }
    Eigen::FullPivLU<Mat> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() != n) return;
    const Vec x = lu.solve(b);
    if (((normals * x) - offsets).maxCoeff() > tol) return;
    for (const auto& v : verts)
      if ((v - x).norm() <= tol) return;
    verts.push_back(x);
  });
  if (verts.empty()) fail(ErrorKind::InvalidArgument, "H-polytope has no vertices (unbounded?)");
  PolytopeFacets out;
  out.normals = normals;
  out.offsets = offsets;
  out.vertices.resize(static_cast<int>(verts.size()), n);
  for (std::size_t k = 0; k < verts.size(); ++k) out.vertices.row(static_cast<int>(k)) = verts[k].transpose();
  attach_incidence(out);
  return out;
}

// (n-1)-volume of a facet given its vertices, n <= 3.
double facet_area(const PolytopeFacets& f, int facet) {
  const int n = static_cast<int>(f.normals.cols());
  const auto& ids = f.facet_vertices[facet];
  if (n == 1) return 1.0;
  if (n == 2) {
    if (ids.size() < 2) return 0.0;
    double best = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j)
        best = std::max(best, (f.vertices.row(ids[i]) - f.vertices.row(ids[j])).norm());
    return best;
  }
  if (n == 3) {
    if (ids.size() < 3) return 0.0;
    const Eigen::Vector3d normal = f.normals.row(facet).transpose();
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (int id : ids) centroid += f.vertices.row(id).transpose();
    centroid /= static_cast<double>(ids.size());
    const Eigen::Vector3d e1 = (Eigen::Vector3d(f.vertices.row(ids[0]).transpose()) - centroid).normalized();
    const Eigen::Vector3d e2 = normal.cross(e1);
    std::vector<std::pair<double, int>> order;
    for (int id : ids) {
      const Eigen::Vector3d d = Eigen::Vector3d(f.vertices.row(id).transpose()) - centroid;
      order.emplace_back(std::atan2(d.dot(e2), d.dot(e1)), id);
    }
    std::sort(order.begin(), order.end());
    double area = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Eigen::Vector3d a = f.vertices.row(order[k].second).transpose();
      const Eigen::Vector3d b = f.vertices.row(order[(k + 1) % order.size()].second).transpose();
      area += (a - centroid).cross(b - centroid).dot(normal);
    }
    return 0.5 * std::abs(area);
  }
  fail(ErrorKind::DimensionTooLarge, "exact facet areas only for n <= 3");
}

void require_dimension(const ConvexBody& body, const Vec& x) {
  if (x.size() != body.dimension())
    fail(ErrorKind::InvalidArgument, "vector dimension does not match body dimension");
}

// Minimum-norm point of conv(C), where C = body - x is given by its support
// mapping. Wolfe's algorithm with an oracle in place of an explicit point set.
// With `separation_only`, returns early with a positive lower bound on the
// distance once a separating direction is found.
double gjk_distance(const ConvexBody& body, const Vec& x, bool separation_only = false) {
  const int n = body.dimension();
  auto s = [&](const Vec& d) -> Vec { return support_point(body, d) - x; };
  std::vector<Vec> pts;
  std::vector<double> weights;
  Vec seed_dir = -x;
  if (seed_dir.norm() == 0.0) seed_dir = Vec::Unit(n, 0);
  pts.push_back(s(seed_dir));
  weights.push_back(1.0);
  Vec v = pts[0];
  double scale = std::max(1.0, v.norm());
  for (int major = 0; major < 200 + 20 * n; ++major) {
    const double vv = v.squaredNorm();
    if (vv <= 1e-28 * scale * scale) return 0.0;
    const Vec w = s(-v);
    scale = std::max(scale, w.norm());
    if (separation_only && v.dot(w) > 1e-12 * scale * std::sqrt(vv)) return v.dot(w) / std::sqrt(vv);
    if (vv - v.dot(w) <= 1e-12 * vv + 1e-30) return std::sqrt(vv);
    pts.push_back(w);
    weights.push_back(0.0);
    for (int minor = 0; minor < 100; ++minor) {
      const int k = static_cast<int>(pts.size());
      // Affine minimizer: minimize |sum a_i p_i|^2 subject to sum a_i = 1.
      Mat sys = Mat::Zero(k + 1, k + 1);
      Vec rhs = Vec::Zero(k + 1);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) sys(i, j) = pts[i].dot(pts[j]);
        sys(i, k) = 1.0;
        sys(k, i) = 1.0;
      }
      rhs[k] = 1.0;
      const Vec sol = sys.completeOrthogonalDecomposition().solve(rhs);
      const Vec alpha = sol.head(k);
      if (alpha.minCoeff() > 1e-14) {
        for (int i = 0; i < k; ++i) weights[i] = alpha[i];
        break;
      }
      double theta = 1.0;
      for (int i = 0; i < k; ++i) {
        if (alpha[i] <= 1e-14) {
          const double denom = weights[i] - alpha[i];
          if (denom > 0) theta = std::min(theta, weights[i] / denom);
        }
      }
      for (int i = 0; i < k; ++i) weights[i] = theta * alpha[i] + (1.0 - theta) * weights[i];
      std::vector<Vec> kept_pts;
      std::vector<double> kept_w;
      int drop = -1;
      double smallest = kInf;
      for (int i = 0; i < k; ++i)
        if (weights[i] < smallest) {
          smallest = weights[i];
          drop = i;
        }
      for (int i = 0; i < k; ++i) {
        if (i == drop || weights[i] <= 1e-15) continue;
        kept_pts.push_back(pts[i]);
        kept_w.push_back(weights[i]);
      }
      if (kept_pts.empty()) {
        kept_pts.push_back(pts[k - 1]);
        kept_w.push_back(1.0);
      }
      const double total = std::accumulate(kept_w.begin(), kept_w.end(), 0.0);
      for (double& wt : kept_w) wt /= total;
      pts = std::move(kept_pts);
      weights = std::move(kept_w);
    }
    Vec next = Vec::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i) next += weights[i] * pts[i];
    if (next.squaredNorm() >= vv * (1.0 - 1e-14)) return std::sqrt(std::min(vv, next.squaredNorm()));
    v = next;
  }
  return v.norm();
}

double combination_gauge(const ConvexBody& body, const Vec& x) {
  const double r = x.norm();
  if (r == 0.0) return 0.0;
  // Largest s with s*x inside; gauge = 1/s.
  auto inside = [&](double s) { return gjk_distance(body, s * x, true) <= 1e-12 * std::max(1.0, s * r); };
  double lo = 0.0;
  double hi = 1.0 / r;
  while (inside(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  if (lo == 0.0) {
    lo = hi;
    while (!inside(lo)) lo *= 0.5;
    hi = 2.0 * lo;
  }
  const double s = numerics::bisect_boundary(inside, lo, hi, 1e-14 * hi);
  return 1.0 / s;
}

}  // namespace

ConvexBody::ConvexBody(int dimension, Variant v) : dimension_(dimension), variant_(std::move(v)) {
  if (dimension_ <= 0) fail(ErrorKind::InvalidArgument, "dimension must be positive");
  if (auto* h = std::get_if<HPolytope>(&variant_)) {
    facets_ = std::make_shared<PolytopeFacets>(vertices_from_halfspaces(h->normals, h->offsets));
  } else if (auto* vp = std::get_if<VPolytope>(&variant_)) {
    auto f = std::make_shared<PolytopeFacets>(facets_from_points(vp->vertices));
    vp->vertices = f->vertices;
    facets_ = std::move(f);
  }
}

ConvexBody ConvexBody::ball(int n, double radius) {
  if (!(radius > 0)) fail(ErrorKind::InvalidArgument, "ball radius must be positive");
  return ConvexBody(n, EuclideanBall{radius});
}

ConvexBody ConvexBody::box(Vec half_widths) {
  if (half_widths.size() == 0 || !(half_widths.minCoeff() > 0))
    fail(ErrorKind::InvalidArgument, "box half-widths must be positive");
  const int n = static_cast<int>(half_widths.size());
  return ConvexBody(n, Box{std::move(half_widths)});
}

ConvexBody ConvexBody::cube(int n, double half_width) { return box(Vec::Constant(n, half_width)); }

ConvexBody ConvexBody::lp_ball(int n, double p, double radius) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorKind::InvalidArgument, "lp ball needs 1 <= p < inf");
  if (!(radius > 0)) fail(ErrorKind::InvalidArgument, "lp ball radius must be positive");
  return ConvexBody(n, LpBall{p, radius});
}

ConvexBody ConvexBody::h_polytope(Mat normals, Vec offsets) {
  if (normals.rows() != offsets.size() || normals.rows() == 0)
    fail(ErrorKind::InvalidArgument, "H-polytope needs one offset per normal");
  if (!(offsets.minCoeff() > 0)) fail(ErrorKind::InvalidArgument, "H-polytope offsets must be positive");
  for (int i = 0; i < normals.rows(); ++i) {
    const double len = normals.row(i).norm();
    normals.row(i) /= len;
    offsets[i] /= len;
  }
  for (int i = 0; i < normals.rows(); ++i) {
    bool paired = false;
    for (int j = 0; j < normals.rows() && !paired; ++j)
      paired = (normals.row(i) + normals.row(j)).norm() < 1e-9 &&
               std::abs(offsets[i] - offsets[j]) < 1e-9 * offsets[i];
    if (!paired) fail(ErrorKind::InvalidArgument, "H-polytope is not symmetric");
  }
  const int n = static_cast<int>(normals.cols());
  return ConvexBody(n, HPolytope{std::move(normals), std::move(offsets)});
}

ConvexBody ConvexBody::v_polytope(Mat vertices) {
  if (vertices.rows() == 0) fail(ErrorKind::InvalidArgument, "V-polytope needs vertices");
  const double tol = 1e-9 * std::max(1.0, point_scale(vertices));
  for (int i = 0; i < vertices.rows(); ++i) {
    bool paired = false;
    for (int j = 0; j < vertices.rows() && !paired; ++j)
      paired = (vertices.row(i) + vertices.row(j)).norm() <= tol;
    if (!paired) fail(ErrorKind::InvalidArgument, "V-polytope vertex list is not closed under negation");
  }
  const int n = static_cast<int>(vertices.cols());
  return ConvexBody(n, VPolytope{std::move(vertices)});
}

ConvexBody ConvexBody::random_symmetric_polytope(int n, int pairs, double r_min, double r_max,
                                                 Rng& rng) {
  if (pairs < n) fail(ErrorKind::InvalidArgument, "need at least n vertex pairs");
  while (true) {
    Mat v(2 * pairs, n);
    for (int k = 0; k < pairs; ++k) {
      const Vec u = rng.unit_vector(n) * rng.uniform(r_min, r_max);
      v.row(2 * k) = u.transpose();
      v.row(2 * k + 1) = -u.transpose();
    }
    Eigen::FullPivLU<Mat> lu(v);
    if (lu.rank() == n) return v_polytope(std::move(v));
  }
}

ConvexBody ConvexBody::combination(const ConvexBody& first, const ConvexBody& second,
                                   double lambda) {
  if (first.dimension() != second.dimension())
    fail(ErrorKind::InvalidArgument, "Minkowski combination of bodies of different dimension");
  return ConvexBody(first.dimension(),
                    MinkowskiCombination{std::make_shared<const ConvexBody>(first),
                                         std::make_shared<const ConvexBody>(second), lambda});
}

std::string_view ConvexBody::variant_name() const {
  return std::visit(overloaded{[](const EuclideanBall&) { return std::string_view("ball"); },
                               [](const Box&) { return std::string_view("box"); },
                               [](const LpBall&) { return std::string_view("lp-ball"); },
                               [](const HPolytope&) { return std::string_view("h-polytope"); },
                               [](const VPolytope&) { return std::string_view("v-polytope"); },
                               [](const MinkowskiCombination&) {
                                 return std::string_view("minkowski-combination");
                               }},
                    variant_);
}

bool ConvexBody::is_polytope() const { return facets_ != nullptr; }

bool ConvexBody::same_representation(const ConvexBody& other) const {
  if (dimension_ != other.dimension_ || variant_.index() != other.variant_.index()) return false;
  return std::visit(
      overloaded{
          [&](const EuclideanBall& a) { return a.radius == std::get<EuclideanBall>(other.variant_).radius; },
          [&](const Box& a) { return a.half_widths == std::get<Box>(other.variant_).half_widths; },
          [&](const LpBall& a) {
            const auto& b = std::get<LpBall>(other.variant_);
            return a.p == b.p && a.radius == b.radius;
          },
          [&](const HPolytope& a) {
            const auto& b = std::get<HPolytope>(other.variant_);
            return a.normals.rows() == b.normals.rows() && a.normals == b.normals && a.offsets == b.offsets;
          },
          [&](const VPolytope& a) {
            const auto& b = std::get<VPolytope>(other.variant_);
            return a.vertices.rows() == b.vertices.rows() && a.vertices == b.vertices;
          },
          [&](const MinkowskiCombination& a) {
            const auto& b = std::get<MinkowskiCombination>(other.variant_);
            return a.first == b.first && a.second == b.second && a.lambda == b.lambda;
          }},
      variant_);
}

double support(const ConvexBody& body, const Vec& u) {
  require_dimension(body, u);
  return std::visit(
      overloaded{[&](const EuclideanBall& b) { return b.radius * u.norm(); },
                 [&](const Box& b) { return b.half_widths.dot(u.cwiseAbs()); },
                 [&](const LpBall& b) {
                   if (b.p == 1.0) return b.radius * u.lpNorm<Eigen::Infinity>();
                   return b.radius * lp_norm(u, dual_exponent(b.p));
                 },
                 [&](const HPolytope&) { return (body.facets()->vertices * u).maxCoeff(); },
                 [&](const VPolytope& v) { return (v.vertices * u).maxCoeff(); },
                 [&](const MinkowskiCombination& m) {
                   return m.lambda * support(*m.first, u) + (1.0 - m.lambda) * support(*m.second, u);
                 }},
      body.variant());
}

Vec support_point(const ConvexBody& body, const Vec& u) {
  require_dimension(body, u);
  const int n = body.dimension();
  return std::visit(
      overloaded{[&](const EuclideanBall& b) -> Vec {
                   const double norm = u.norm();
                   if (norm == 0.0) return Vec::Zero(n);
                   return (b.radius / norm) * u;
                 },
                 [&](const Box& b) -> Vec {
                   Vec x(n);
                   for (int i = 0; i < n; ++i) x[i] = u[i] < 0 ? -b.half_widths[i] : b.half_widths[i];
                   return x;
                 },
                 [&](const LpBall& b) -> Vec {
                   Vec x = Vec::Zero(n);
                   if (b.p == 1.0) {
                     Eigen::Index i;
                     u.cwiseAbs().maxCoeff(&i);
                     x[i] = u[i] < 0 ? -b.radius : b.radius;
                     return x;
                   }
                   const double q = dual_exponent(b.p);
                   const double norm = lp_norm(u, q);
                   if (norm == 0.0) return x;
                   for (int i = 0; i < n; ++i) {
                     const double a = std::abs(u[i]) / norm;
                     x[i] = std::copysign(b.radius * std::pow(a, q - 1.0), u[i]);
                   }
                   return x;
                 },
                 [&](const HPolytope&) -> Vec {
                   Eigen::Index i;
                   (body.facets()->vertices * u).maxCoeff(&i);
                   return body.facets()->vertices.row(i).transpose();
                 },
                 [&](const VPolytope& v) -> Vec {
                   Eigen::Index i;
                   (v.vertices * u).maxCoeff(&i);
                   return v.vertices.row(i).transpose();
                 },
                 [&](const MinkowskiCombination& m) -> Vec {
                   return m.lambda * support_point(*m.first, u) +
                          (1.0 - m.lambda) * support_point(*m.second, u);
                 }},
      body.variant());
}

double gauge(const ConvexBody& body, const Vec& x) {
  require_dimension(body, x);
  return std::visit(
      overloaded{[&](const EuclideanBall& b) { return x.norm() / b.radius; },
                 [&](const Box& b) { return x.cwiseAbs().cwiseQuotient(b.half_widths).maxCoeff(); },
                 [&](const LpBall& b) { return lp_norm(x, b.p) / b.radius; },
                 [&](const HPolytope&) {
                   const auto* f = body.facets();
                   return std::max(0.0, (f->normals * x).cwiseQuotient(f->offsets).maxCoeff());
                 },
                 [&](const VPolytope&) {
                   const auto* f = body.facets();
                   return std::max(0.0, (f->normals * x).cwiseQuotient(f->offsets).maxCoeff());
                 },
                 [&](const MinkowskiCombination&) { return combination_gauge(body, x); }},
      body.variant());
}

Vec gauge_gradient(const ConvexBody& body, const Vec& x) {
  require_dimension(body, x);
  const int n = body.dimension();
  auto facet_gradient = [&]() -> Vec {
    const auto* f = body.facets();
    const Vec ratios = (f->normals * x).cwiseQuotient(f->offsets);
    int best = 0;
    for (int i = 1; i < ratios.size(); ++i)
      if (ratios[i] > ratios[best]) best = i;
    return f->normals.row(best).transpose() / f->offsets[best];
  };
  return std::visit(
      overloaded{[&](const EuclideanBall& b) -> Vec {
                   const double r = x.norm();
                   if (r == 0.0) return Vec::Zero(n);
                   return x / (b.radius * r);
                 },
                 [&](const Box& b) -> Vec {
                   int best = 0;
                   double best_ratio = -1.0;
                   for (int i = 0; i < n; ++i) {
                     const double ratio = std::abs(x[i]) / b.half_widths[i];
                     if (ratio > best_ratio) {
                       best_ratio = ratio;
                       best = i;
                     }
                   }
                   Vec g = Vec::Zero(n);
                   g[best] = (x[best] < 0 ? -1.0 : 1.0) / b.half_widths[best];
                   return g;
                 },
                 [&](const LpBall& b) -> Vec {
                   const double norm = lp_norm(x, b.p);
                   Vec g = Vec::Zero(n);
                   if (norm == 0.0) return g;
                   if (b.p == 1.0) {
                     for (int i = 0; i < n; ++i) g[i] = (x[i] < 0 ? -1.0 : (x[i] > 0 ? 1.0 : 0.0)) / b.radius;
                     return g;
                   }
                   for (int i = 0; i < n; ++i)
                     g[i] = std::copysign(std::pow(std::abs(x[i]) / norm, b.p - 1.0), x[i]) / b.radius;
                   return g;
                 },
                 [&](const HPolytope&) -> Vec { return facet_gradient(); },
                 [&](const VPolytope&) -> Vec { return facet_gradient(); },
                 [&](const MinkowskiCombination&) -> Vec {
                   fail(ErrorKind::UnsupportedVariant, "gauge gradient of a support-oracle body");
                 }},
      body.variant());
}

double radial(const ConvexBody& body, const Vec& x) { return 1.0 / gauge(body, x); }

bool contains(const ConvexBody& body, const Vec& x) {
  if (std::holds_alternative<MinkowskiCombination>(body.variant())) {
    double scale = 1.0;
    for (int i = 0; i < body.dimension(); ++i) scale = std::max(scale, support(body, Vec::Unit(body.dimension(), i)));
    return gjk_distance(body, x, true) <= 1e-12 * scale;
  }
  return gauge(body, x) <= 1.0;
}

double distance(const ConvexBody& body, const Vec& x) {
  require_dimension(body, x);
  return gjk_distance(body, x);
}

bool contains_direction_net(const ConvexBody& body, const Vec& x, int net_size,
                            std::uint64_t seed) {
  require_dimension(body, x);
  const int n = body.dimension();
  for (int i = 0; i < n; ++i) {
    const Vec e = Vec::Unit(n, i);
    if (std::abs(x[i]) > support(body, x[i] < 0 ? Vec(-e) : e)) return false;
  }
  Rng rng(seed);
  for (int k = 0; k < net_size; ++k) {
    const Vec u = rng.unit_vector(n);
    if (x.dot(u) > support(body, u)) return false;
  }
  return true;
}

ConvexBody polar(const ConvexBody& body) {
  const int n = body.dimension();
  return std::visit(
      overloaded{[&](const EuclideanBall& b) { return ConvexBody::ball(n, 1.0 / b.radius); },
                 [&](const Box& b) {
                   Mat v(2 * n, n);
                   v.setZero();
                   for (int i = 0; i < n; ++i) {
                     v(2 * i, i) = 1.0 / b.half_widths[i];
                     v(2 * i + 1, i) = -1.0 / b.half_widths[i];
                   }
                   return ConvexBody::v_polytope(std::move(v));
                 },
                 [&](const LpBall& b) {
                   if (b.p == 1.0) return ConvexBody::cube(n, 1.0 / b.radius);
                   return ConvexBody::lp_ball(n, dual_exponent(b.p), 1.0 / b.radius);
                 },
                 [&](const HPolytope& h) {
                   Mat v = h.normals;
                   for (int i = 0; i < v.rows(); ++i) v.row(i) /= h.offsets[i];
                   return ConvexBody::v_polytope(std::move(v));
                 },
                 [&](const VPolytope& vp) {
                   Mat normals = vp.vertices;
                   Vec offsets(normals.rows());
                   for (int i = 0; i < normals.rows(); ++i) {
                     const double len = normals.row(i).norm();
                     normals.row(i) /= len;
                     offsets[i] = 1.0 / len;
                   }
                   return ConvexBody::h_polytope(std::move(normals), std::move(offsets));
                 },
                 [&](const MinkowskiCombination&) -> ConvexBody {
                   fail(ErrorKind::UnsupportedVariant, "no exact polar for a support-oracle body");
                 }},
      body.variant());
}

ConvexBody minkowski_combo(const ConvexBody& first, const ConvexBody& second, double lambda) {
  if (first.dimension() != second.dimension())
    fail(ErrorKind::InvalidArgument, "Minkowski combination of bodies of different dimension");
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail(ErrorKind::InvalidArgument, "lambda must lie in [0,1]");
  if (lambda == 1.0) return first;
  if (lambda == 0.0) return second;
  if (first.same_representation(second)) return first;
  const int n = first.dimension();
  const double mu = 1.0 - lambda;
  const auto& a = first.variant();
  const auto& b = second.variant();
  if (auto* x = std::get_if<EuclideanBall>(&a))
    if (auto* y = std::get_if<EuclideanBall>(&b)) return ConvexBody::ball(n, lambda * x->radius + mu * y->radius);
  if (auto* x = std::get_if<Box>(&a))
    if (auto* y = std::get_if<Box>(&b)) return ConvexBody::box(lambda * x->half_widths + mu * y->half_widths);
  if (auto* x = std::get_if<LpBall>(&a))
    if (auto* y = std::get_if<LpBall>(&b); y && y->p == x->p)
      return ConvexBody::lp_ball(n, x->p, lambda * x->radius + mu * y->radius);
  if (first.is_polytope() && second.is_polytope() && n <= 3) {
    const Mat& va = first.facets()->vertices;
    const Mat& vb = second.facets()->vertices;
    if (va.rows() * vb.rows() <= 144) {
      Mat sums(va.rows() * vb.rows(), n);
      for (int i = 0; i < va.rows(); ++i)
        for (int j = 0; j < vb.rows(); ++j)
          sums.row(i * vb.rows() + j) = lambda * va.row(i) + mu * vb.row(j);
      return ConvexBody::v_polytope(std::move(sums));
    }
  }
  return ConvexBody::combination(first, second, lambda);
}

ConvexBody scaled(const ConvexBody& body, double factor) {
  if (!(factor > 0)) fail(ErrorKind::InvalidArgument, "scale factor must be positive");
  const int n = body.dimension();
  return std::visit(
      overloaded{[&](const EuclideanBall& b) { return ConvexBody::ball(n, b.radius * factor); },
                 [&](const Box& b) { return ConvexBody::box(b.half_widths * factor); },
                 [&](const LpBall& b) { return ConvexBody::lp_ball(n, b.p, b.radius * factor); },
                 [&](const HPolytope& h) { return ConvexBody::h_polytope(h.normals, h.offsets * factor); },
                 [&](const VPolytope& v) { return ConvexBody::v_polytope(v.vertices * factor); },
                 [&](const MinkowskiCombination& m) {
                   return ConvexBody::combination(scaled(*m.first, factor), scaled(*m.second, factor),
                                                  m.lambda);
                 }},
      body.variant());
}

namespace {

std::optional<double> closed_form_volume(const ConvexBody& body) {
  const int n = body.dimension();
  return std::visit(
      overloaded{[&](const EuclideanBall& b) -> std::optional<double> {
                   return unit_ball_volume(n) * std::pow(b.radius, n);
                 },
                 [&](const Box& b) -> std::optional<double> { return (2.0 * b.half_widths).prod(); },
                 [&](const LpBall& b) -> std::optional<double> {
                   const double log_v = n * std::log(2.0 * std::tgamma(1.0 + 1.0 / b.p)) -
                                        std::lgamma(1.0 + n / b.p) + n * std::log(b.radius);
                   return std::exp(log_v);
                 },
                 [&](const HPolytope&) -> std::optional<double> {
                   if (n > 3) return std::nullopt;
                   const auto* f = body.facets();
                   double v = 0.0;
                   for (int i = 0; i < f->normals.rows(); ++i) v += f->offsets[i] * facet_area(*f, i);
                   return v / n;
                 },
                 [&](const VPolytope&) -> std::optional<double> {
                   if (n > 3) return std::nullopt;
                   const auto* f = body.facets();
                   double v = 0.0;
                   for (int i = 0; i < f->normals.rows(); ++i) v += f->offsets[i] * facet_area(*f, i);
                   return v / n;
                 },
                 [&](const MinkowskiCombination&) -> std::optional<double> { return std::nullopt; }},
      body.variant());
}

std::optional<double> closed_form_surface(const ConvexBody& body) {
  const int n = body.dimension();
  return std::visit(
      overloaded{[&](const EuclideanBall& b) -> std::optional<double> {
                   return n * unit_ball_volume(n) * std::pow(b.radius, n - 1);
                 },
                 [&](const Box& b) -> std::optional<double> {
                   const Vec side = 2.0 * b.half_widths;
                   double s = 0.0;
                   for (int i = 0; i < n; ++i) {
                     double face = 1.0;
                     for (int j = 0; j < n; ++j)
                       if (j != i) face *= side[j];
                     s += 2.0 * face;
                   }
                   return s;
                 },
                 [&](const LpBall& b) -> std::optional<double> {
                   if (b.p == 2.0) return n * unit_ball_volume(n) * std::pow(b.radius, n - 1);
                   if (b.p == 1.0) {
                     // 2^n regular simplex facets with vertices radius * e_i.
                     return std::exp(n * std::log(2.0) + (n - 1) * std::log(b.radius) +
                                     0.5 * std::log(static_cast<double>(n)) - std::lgamma(n));
                   }
                   return std::nullopt;
                 },
                 [&](const HPolytope&) -> std::optional<double> {
                   if (n > 3) return std::nullopt;
                   double s = 0.0;
                   for (int i = 0; i < body.facets()->normals.rows(); ++i) s += facet_area(*body.facets(), i);
                   return s;
                 },
                 [&](const VPolytope&) -> std::optional<double> {
                   if (n > 3) return std::nullopt;
                   double s = 0.0;
                   for (int i = 0; i < body.facets()->normals.rows(); ++i) s += facet_area(*body.facets(), i);
                   return s;
                 },
                 [&](const MinkowskiCombination&) -> std::optional<double> { return std::nullopt; }},
      body.variant());
}

bool has_gauge_gradient(const ConvexBody& body) {
  return !std::holds_alternative<MinkowskiCombination>(body.variant());
}

// Planar bodies: volume = 1/2 int g^{-2} dtheta, surface = int g^{-2}|grad g| dtheta.
Quantity planar_quadrature(const ConvexBody& body, bool want_surface) {
  auto integrand = [&](double theta) {
    const Vec u = (Vec(2) << std::cos(theta), std::sin(theta)).finished();
    const double g = gauge(body, u);
    if (!want_surface) return 0.5 / (g * g);
    return gauge_gradient(body, u).norm() / (g * g);
  };
  double total = 0.0;
  for (int q = 0; q < 4; ++q)
    total += numerics::integrate(integrand, q * std::numbers::pi / 2, (q + 1) * std::numbers::pi / 2, 1e-12);
  return Quantity{total, 0.0, false};
}

// Directional Monte Carlo: vol = w_n E[g(u)^-n], S = n w_n E[g(u)^-n |grad g(u)|].
Quantity radial_monte_carlo(const ConvexBody& body, bool want_surface, const MeasureOptions& opt) {
  const int n = body.dimension();
  constexpr std::int64_t kBlock = 8192;
  const int blocks = static_cast<int>((opt.samples + kBlock - 1) / kBlock);
  std::vector<MomentAccumulator> acc(blocks, MomentAccumulator(1));
  parallel_blocks(blocks, [&](int b) {
    Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(b)));
    const std::int64_t count = std::min(kBlock, opt.samples - b * kBlock);
    for (std::int64_t i = 0; i < count; ++i) {
      const Vec u = rng.unit_vector(n);
      const double g = gauge(body, u);
      double v = std::pow(g, -n);
      if (want_surface) v *= gauge_gradient(body, u).norm();
      acc[b].add(v);
    }
  });
  for (int b = 1; b < blocks; ++b) acc[0].merge(acc[b]);
  const double factor = (want_surface ? n : 1) * unit_ball_volume(n);
  const MCEstimate e = acc[0].estimate(0, opt.seed);
  return Quantity{factor * e.value, factor * e.std_error, false};
}

}  // namespace

double exact_volume(const ConvexBody& body) {
  if (auto v = closed_form_volume(body)) return *v;
  if (body.is_polytope()) fail(ErrorKind::DimensionTooLarge, "exact polytope volume only for n <= 3");
  fail(ErrorKind::UnsupportedVariant, "no exact volume for this body");
}

double exact_surface_area(const ConvexBody& body) {
  if (auto s = closed_form_surface(body)) return *s;
  if (body.is_polytope()) fail(ErrorKind::DimensionTooLarge, "exact polytope surface only for n <= 3");
  fail(ErrorKind::UnsupportedVariant, "no exact surface area for this body");
}

Quantity volume(const ConvexBody& body, const MeasureOptions& options) {
  if (auto v = closed_form_volume(body)) return Quantity{*v, 0.0, true};
  if (body.dimension() == 2) return planar_quadrature(body, false);
  return radial_monte_carlo(body, false, options);
}

Quantity surface_area(const ConvexBody& body, const MeasureOptions& options) {
  if (auto s = closed_form_surface(body)) return Quantity{*s, 0.0, true};
  if (!has_gauge_gradient(body))
    fail(ErrorKind::UnsupportedVariant, "surface area of a support-oracle body");
  if (body.dimension() == 2) return planar_quadrature(body, true);
  return radial_monte_carlo(body, true, options);
}

ConvexBody scale_to_unit_volume(const ConvexBody& body, const MeasureOptions& options) {
  const double v = volume(body, options).value;
  return scaled(body, std::pow(v, -1.0 / body.dimension()));
}

Vec sample_uniform(const ConvexBody& body, Rng& rng) {
  const int n = body.dimension();
  auto by_rejection = [&]() -> Vec {
    Vec hw(n);
    for (int i = 0; i < n; ++i) hw[i] = support(body, Vec::Unit(n, i));
    for (int attempt = 0; attempt < 10000000; ++attempt) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.uniform(-hw[i], hw[i]);
      if (contains(body, x)) return x;
    }
    fail(ErrorKind::RejectionStall, "uniform rejection sampler made no progress");
  };
  return std::visit(
      overloaded{[&](const EuclideanBall& b) -> Vec {
                   return rng.unit_vector(n) * (b.radius * std::pow(rng.uniform(), 1.0 / n));
                 },
                 [&](const Box& b) -> Vec {
                   Vec x(n);
                   for (int i = 0; i < n; ++i) x[i] = rng.uniform(-b.half_widths[i], b.half_widths[i]);
                   return x;
                 },
                 [&](const LpBall& b) -> Vec {
                   Vec y(n);
                   double s = 0.0;
                   for (int i = 0; i < n; ++i) {
                     const double g = rng.gamma(1.0 / b.p);
                     y[i] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::pow(g, 1.0 / b.p);
                     s += g;
                   }
                   s += rng.exponential();
                   return y * (b.radius / std::pow(s, 1.0 / b.p));
                 },
                 [&](const HPolytope&) -> Vec { return by_rejection(); },
                 [&](const VPolytope&) -> Vec { return by_rejection(); },
                 [&](const MinkowskiCombination&) -> Vec { return by_rejection(); }},
      body.variant());
}

double projection_volume(const ConvexBody& body, const Vec& u) {
  require_dimension(body, u);
  const int n = body.dimension();
  if (n == 1) return 1.0;
  if (auto* b = std::get_if<EuclideanBall>(&body.variant()))
    return unit_ball_volume(n - 1) * std::pow(b->radius, n - 1);
  if (auto* b = std::get_if<Box>(&body.variant())) {
    const Vec side = 2.0 * b->half_widths;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double face = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) face *= side[j];
      total += face * std::abs(u[i]);
    }
    return total;
  }
  if (n == 2) {
    const Vec v = (Vec(2) << -u[1], u[0]).finished();
    return support(body, v) + support(body, -v);
  }
  if (body.is_polytope() && n == 3) {
    const auto* f = body.facets();
    double total = 0.0;
    for (int i = 0; i < f->normals.rows(); ++i) total += facet_area(*f, i) * std::abs(f->normals.row(i).dot(u));
    return 0.5 * total;
  }
  fail(ErrorKind::UnsupportedVariant, "projection volume not available for this body");
}

std::vector<Mat> boundary_simplices(const ConvexBody& body) {
  const int n = body.dimension();
  if (!body.is_polytope()) fail(ErrorKind::UnsupportedVariant, "boundary simplices need a polytope");
  if (n < 2 || n > 3) fail(ErrorKind::DimensionTooLarge, "boundary simplices support n = 2, 3");
  const auto* f = body.facets();
  std::vector<Mat> out;
  for (int i = 0; i < f->normals.rows(); ++i) {
    const auto& ids = f->facet_vertices[i];
    if (static_cast<int>(ids.size()) < n) continue;
    if (n == 2) {
      // The two extreme vertices along the facet direction.
      const Vec dir = (Vec(2) << -f->normals(i, 1), f->normals(i, 0)).finished();
      int lo = ids[0], hi = ids[0];
      for (int id : ids) {
        if (f->vertices.row(id).dot(dir) < f->vertices.row(lo).dot(dir)) lo = id;
        if (f->vertices.row(id).dot(dir) > f->vertices.row(hi).dot(dir)) hi = id;
      }
      Mat seg(2, 2);
      seg.row(0) = f->vertices.row(lo);
      seg.row(1) = f->vertices.row(hi);
      out.push_back(seg);
      continue;
    }
    const Eigen::Vector3d normal = f->normals.row(i).transpose();
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (int id : ids) centroid += f->vertices.row(id).transpose();
    centroid /= static_cast<double>(ids.size());
    const Eigen::Vector3d e1 = (Eigen::Vector3d(f->vertices.row(ids[0]).transpose()) - centroid).normalized();
    const Eigen::Vector3d e2 = normal.cross(e1);
    std::vector<std::pair<double, int>> order;
    for (int id : ids) {
      const Eigen::Vector3d d = Eigen::Vector3d(f->vertices.row(id).transpose()) - centroid;
      order.emplace_back(std::atan2(d.dot(e2), d.dot(e1)), id);
    }
    std::sort(order.begin(), order.end());
    for (std::size_t k = 0; k < order.size(); ++k) {
      Mat tri(3, 3);
      tri.row(0) = centroid.transpose();
      tri.row(1) = f->vertices.row(order[k].second);
      tri.row(2) = f->vertices.row(order[(k + 1) % order.size()].second);
      out.push_back(tri);
    }
  }
  return out;
}

RegionOracle body_region(const ConvexBody& body) {
  std::ostringstream name;
  name << body.variant_name() << "(n=" << body.dimension() << ")";
  return RegionOracle(RegionKind::ExplicitBody, body.dimension(), name.str(),
                      [body](const Vec& x) { return contains(body, x); }, true);
}

ConvexityReport is_convex_region(const RegionOracle& region, const Box& bounding, int trials,
                                 std::uint64_t seed) {
  const int n = static_cast<int>(bounding.half_widths.size());
  Rng rng(seed);
  auto draw_member = [&](Vec& out) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = rng.uniform(-bounding.half_widths[i], bounding.half_widths[i]);
      if (region.contains(x)) {
        out = std::move(x);
        return true;
      }
    }
    return false;
  };
  ConvexityReport report;
  for (int t = 0; t < trials; ++t) {
    Vec x, y;
    if (!draw_member(x) || !draw_member(y)) break;
    ++report.pairs_tested;
    const Vec mid = 0.5 * (x + y);
    if (!region.contains(mid)) {
      report.convex_witnessed = false;
      report.x = x;
      report.y = y;
      report.midpoint = mid;
      return report;
    }
  }
  return report;
}

}  // namespace lclab
