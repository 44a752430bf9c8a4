// SPDX-License-Identifier: Apache-2.0
#include "lclab/region.hpp"

namespace lclab {

RegionOracle::RegionOracle(RegionKind kind, int dimension, std::string description,
                           Predicate member, bool claimed_convex)
    : kind_(kind),
      dimension_(dimension),
      description_(std::move(description)),
      member_(std::make_shared<const Predicate>(std::move(member))),
      claimed_convex_(claimed_convex) {}

RegionOracle RegionOracle::complement() const {
  auto inner = member_;
  return RegionOracle(RegionKind::Complement, dimension_, "complement(" + description_ + ")",
                      [inner](const Vec& x) { return !(*inner)(x); }, false);
}

RegionOracle RegionOracle::intersection(const RegionOracle& a, const RegionOracle& b) {
  if (a.dimension() != b.dimension()) fail(ErrorKind::InvalidArgument, "dimension mismatch");
  auto ma = a.member_;
  auto mb = b.member_;
  return RegionOracle(RegionKind::Intersection, a.dimension(),
                      "(" + a.description() + ") & (" + b.description() + ")",
                      [ma, mb](const Vec& x) { return (*ma)(x) && (*mb)(x); },
                      a.claimed_convex() && b.claimed_convex());
}

}  // namespace lclab
