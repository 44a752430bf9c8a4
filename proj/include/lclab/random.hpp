// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lclab/core.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace lclab {

/// splitmix64 finalizer; used to derive non-overlapping child streams.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  double uniform();  // (0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double exponential() { return -std::log(uniform()); }
  double gamma(double shape);
  Vec normal_vector(int n);
  Vec unit_vector(int n);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Haar-distributed rotation: QR of a Gaussian matrix with the sign of
/// R's diagonal folded into Q.
Mat haar_rotation(int n, Rng& rng);

/// The unit of every stochastic result.
struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;

  bool within(double target, double n_se = 3.0, double abs_floor = 0.0) const;
};

/// Mergeable running mean / co-moment accumulator for k observables.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(int k = 1);

  void add(std::span<const double> values);
  void add(double v) { add(std::span<const double>(&v, 1)); }
  void merge(const MomentAccumulator& other);

  int size() const { return static_cast<int>(mean_.size()); }
  std::int64_t count() const { return count_; }
  double mean(int i = 0) const { return mean_[i]; }
  /// Sample covariance (n-1 denominator).
  double covariance(int i, int j) const;
  double variance(int i = 0) const { return covariance(i, i); }
  MCEstimate estimate(int i, std::uint64_t seed) const;

 private:
  std::int64_t count_ = 0;
  Vec mean_;
  Mat comoment_;
};

/// Thread count used by block-parallel loops. Results never depend on it.
void set_thread_count(int threads);
int thread_count();

/// Runs body(block) for block in [0, n_blocks). Blocks are distributed over
/// threads; callers write into per-block slots and reduce in index order.
void parallel_blocks(int n_blocks, const std::function<void(int)>& body);

}  // namespace lclab
