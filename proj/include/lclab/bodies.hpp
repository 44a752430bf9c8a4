// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/core.hpp"
#include "lclab/random.hpp"
#include "lclab/region.hpp"

#include <memory>
#include <string_view>
#include <variant>
#include <vector>

namespace lclab {

struct EuclideanBall {
  double radius = 1.0;
};

struct Box {
  Vec half_widths;
};

/// {x : |x|_p <= radius}, 1 <= p < inf (use Box for p = inf).
struct LpBall {
  double p = 2.0;
  double radius = 1.0;
};

/// {x : <normal_i, x> <= offset_i}; rows of `normals` are unit vectors.
struct HPolytope {
  Mat normals;
  Vec offsets;
};

/// Convex hull of the rows of `vertices` (closed under negation).
struct VPolytope {
  Mat vertices;
};

class ConvexBody;

/// lambda*first + (1-lambda)*second, known only through its support function.
struct MinkowskiCombination {
  std::shared_ptr<const ConvexBody> first;
  std::shared_ptr<const ConvexBody> second;
  double lambda = 0.5;
};

/// Facet/vertex incidence of a polytope, computed once per body.
struct PolytopeFacets {
  Mat normals;   // unit outer normals, one per row
  Vec offsets;   // support values in the normal directions
  Mat vertices;  // one per row
  std::vector<std::vector<int>> facet_vertices;
};

class ConvexBody {
 public:
  using Variant =
      std::variant<EuclideanBall, Box, LpBall, HPolytope, VPolytope, MinkowskiCombination>;

  static ConvexBody ball(int n, double radius);
  static ConvexBody box(Vec half_widths);
  static ConvexBody cube(int n, double half_width);
  static ConvexBody lp_ball(int n, double p, double radius);
  static ConvexBody h_polytope(Mat normals, Vec offsets);
  static ConvexBody v_polytope(Mat vertices);
  /// Random symmetric polytope: `pairs` random directions with radii in
  /// [r_min, r_max], closed under negation.
  static ConvexBody random_symmetric_polytope(int n, int pairs, double r_min, double r_max,
                                              Rng& rng);
  /// Raw support-oracle body; prefer minkowski_combo().
  static ConvexBody combination(const ConvexBody& first, const ConvexBody& second, double lambda);

  int dimension() const { return dimension_; }
  const Variant& variant() const { return variant_; }
  std::string_view variant_name() const;
  bool is_polytope() const;
  /// Non-null for HPolytope and VPolytope.
  const PolytopeFacets* facets() const { return facets_.get(); }

  bool same_representation(const ConvexBody& other) const;

 private:
  ConvexBody(int dimension, Variant v);

  int dimension_;
  Variant variant_;
  std::shared_ptr<const PolytopeFacets> facets_;
};

double support(const ConvexBody& body, const Vec& u);
Vec support_point(const ConvexBody& body, const Vec& u);

/// Minkowski functional; for combinations evaluated by bisection on exact
/// membership.
double gauge(const ConvexBody& body, const Vec& x);
/// A subgradient of the gauge; at facet ties the lowest facet index wins.
Vec gauge_gradient(const ConvexBody& body, const Vec& x);
/// 1 / gauge along x (x != 0).
double radial(const ConvexBody& body, const Vec& x);
bool contains(const ConvexBody& body, const Vec& x);

/// Euclidean distance from x to the body (0 inside), by the GJK/Wolfe
/// minimum-norm-point iteration on the support mapping.
double distance(const ConvexBody& body, const Vec& x);

/// Outer-approximation membership: x passes if <x,u> <= h(u) on a net of
/// `net_size` random directions plus the coordinate axes.
bool contains_direction_net(const ConvexBody& body, const Vec& x, int net_size,
                            std::uint64_t seed);

ConvexBody polar(const ConvexBody& body);
ConvexBody minkowski_combo(const ConvexBody& first, const ConvexBody& second, double lambda);
ConvexBody scaled(const ConvexBody& body, double factor);

struct MeasureOptions {
  std::int64_t samples = 400000;
  std::uint64_t seed = 0x5eed;
};

/// Closed forms where available, exact polytope decomposition for n <= 3,
/// circle quadrature for n = 2, Monte Carlo otherwise (exact == false).
Quantity volume(const ConvexBody& body, const MeasureOptions& options = {});
Quantity surface_area(const ConvexBody& body, const MeasureOptions& options = {});

/// Like volume()/surface_area() but throws DimensionTooLarge instead of
/// falling back to Monte Carlo.
double exact_volume(const ConvexBody& body);
double exact_surface_area(const ConvexBody& body);

ConvexBody scale_to_unit_volume(const ConvexBody& body, const MeasureOptions& options = {});

Vec sample_uniform(const ConvexBody& body, Rng& rng);

/// (n-1)-volume of the projection of the body onto the hyperplane normal to
/// the unit vector u. Exact for balls, boxes, polytopes with n <= 3, and any
/// body in the plane.
double projection_volume(const ConvexBody& body, const Vec& u);

/// Boundary of a polytope with n <= 3 cut into (n-1)-simplices: segments in
/// the plane, triangles in space. Rows of each matrix are the vertices.
std::vector<Mat> boundary_simplices(const ConvexBody& body);

RegionOracle body_region(const ConvexBody& body);

struct ConvexityReport {
  /// True when no counterexample was found ("no counterexample found",
  /// not a proof).
  bool convex_witnessed = true;
  int pairs_tested = 0;
  Vec x, y, midpoint;
};

ConvexityReport is_convex_region(const RegionOracle& region, const Box& bounding, int trials,
                                 std::uint64_t seed);

}  // namespace lclab
