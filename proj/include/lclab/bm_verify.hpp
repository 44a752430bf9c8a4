// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/bodies.hpp"
#include "lclab/density.hpp"
#include "lclab/sampler.hpp"

#include <string_view>
#include <vector>

namespace lclab {

enum class Verdict { Holds, Violated, Inconclusive };
std::string_view to_string(Verdict v);

enum class Membership {
  Exact,         // gauge / GJK distance on the combination
  DirectionNet,  // support-function test on a finite net (outer approximation)
};

struct BMOptions {
  std::int64_t samples = 20000;
  std::uint64_t seed = 21;
  Membership membership = Membership::Exact;
  int net_size = 256;
  bool confirm_violations = true;  // re-run violated verdicts with 4x samples and net
};

/// Masses of K, L and M = lambda K + (1 - lambda) L from one shared stream.
struct BMMasses {
  MCEstimate k, l, m;
  Eigen::Matrix3d covariance;  // of the three indicators (per draw)
  std::int64_t count = 0;
};

BMMasses bm_masses(const LogConcaveDensity& density, const ConvexBody& K, const ConvexBody& L, double lambda,
                   const BMOptions& options);

struct BMCheckResult {
  BMMasses masses;
  double lambda = 0.5;
  double exponent = 1.0;
  double margin = 0.0;  // mu(M)^c - lambda mu(K)^c - (1 - lambda) mu(L)^c
  double error = 0.0;   // delta-method standard error of the margin
  Verdict verdict = Verdict::Inconclusive;
  bool confirmed = false;          // a violated first pass was re-run
  Verdict first_verdict = Verdict::Inconclusive;
};

/// Margin and verdict for given masses; no sampling.
BMCheckResult bm_evaluate(const BMMasses& masses, double lambda, double exponent);

BMCheckResult bm_check(const LogConcaveDensity& density, const ConvexBody& K, const ConvexBody& L, double lambda,
                       double exponent, const BMOptions& options = {});

/// 1 / (n^3 ln n) with the unspecified absolute constant set to one.
double default_exponent(int n);

struct BodyTriple {
  ConvexBody K;
  ConvexBody L;
  double lambda;
  std::string label;
};

/// Random symmetric pairs at roughly unit mass for a measure of coordinate
/// spread `scale`: boxes, balls, l_p balls and
/// polytopes, plus mixed pairs handled through the support oracle.
std::vector<BodyTriple> random_triples(int n, int count, double scale, std::uint64_t seed);

struct ScanRow {
  double exponent = 0.0;
  int holds = 0;
  int violated = 0;
  int inconclusive = 0;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  /// Largest grid exponent at or below which no triple is violated.
  double largest_without_violation = 0.0;
  /// Largest grid exponent at or below which every triple holds strictly.
  double largest_all_hold = 0.0;
};

/// Masses are estimated once per triple and re-used across the exponent
/// grid (ascending), so the report is monotone in c.
ScanReport concavity_exponent_scan(const LogConcaveDensity& density, const std::vector<BodyTriple>& triples,
                                   const std::vector<double>& exponents, const BMOptions& options = {});

}  // namespace lclab
