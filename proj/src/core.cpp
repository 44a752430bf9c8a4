// SPDX-License-Identifier: Apache-2.0
#include "lclab/core.hpp"

#include <cmath>
#include <numbers>

namespace lclab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::OutsideSupport: return "OutsideSupport";
    case ErrorKind::SingularEstimate: return "SingularEstimate";
    case ErrorKind::LineSearchNoConverge: return "LineSearchNoConverge";
    case ErrorKind::RejectionStall: return "RejectionStall";
    case ErrorKind::NonFiniteObservable: return "NonFiniteObservable";
    case ErrorKind::ImproperInput: return "ImproperInput";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ProxNoConverge: return "ProxNoConverge";
    case ErrorKind::QuadratureNoConverge: return "QuadratureNoConverge";
    case ErrorKind::MassTooSmall: return "MassTooSmall";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

double log_unit_ball_volume(int n) {
  const double half = 0.5 * n;
  return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0);
}

double unit_ball_volume(int n) { return std::exp(log_unit_ball_volume(n)); }

}  // namespace lclab
