// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/core.hpp"

#include <functional>
#include <memory>
#include <string>

namespace lclab {

enum class RegionKind {
  LevelSet,
  ScaledLevelSet,
  GradientSublevel,
  ExplicitBody,
  Complement,
  Intersection,
  Custom,
};

/// Membership predicate over R^n. `claimed_convex` records what the
/// constructor knows analytically; it is never inferred.
class RegionOracle {
 public:
  using Predicate = std::function<bool(const Vec&)>;

  RegionOracle(RegionKind kind, int dimension, std::string description, Predicate member,
               bool claimed_convex);

  bool contains(const Vec& x) const { return (*member_)(x); }
  bool operator()(const Vec& x) const { return contains(x); }

  RegionKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  const std::string& description() const { return description_; }
  bool claimed_convex() const { return claimed_convex_; }

  RegionOracle complement() const;
  static RegionOracle intersection(const RegionOracle& a, const RegionOracle& b);

 private:
  RegionKind kind_;
  int dimension_;
  std::string description_;
  std::shared_ptr<const Predicate> member_;
  bool claimed_convex_;
};

}  // namespace lclab
