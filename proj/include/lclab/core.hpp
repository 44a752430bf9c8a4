// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lclab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Failure categories shared by every module. The CLI prints the name and
/// uses it to pick an exit code.
enum class ErrorKind {
  InvalidArgument,
  UnsupportedVariant,
  DimensionTooLarge,
  OutsideSupport,
  SingularEstimate,
  LineSearchNoConverge,
  RejectionStall,
  NonFiniteObservable,
  ImproperInput,
  GridMismatch,
  NoConvergence,
  ProxNoConverge,
  QuadratureNoConverge,
  MassTooSmall,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

/// Volume of the Euclidean unit ball in R^n.
double unit_ball_volume(int n);
double log_unit_ball_volume(int n);

/// A computed scalar with its uncertainty. `exact` marks closed forms and
/// deterministic quadrature (std_error is then 0).
struct Quantity {
  double value = 0.0;
  double std_error = 0.0;
  bool exact = true;
};

}  // namespace lclab
