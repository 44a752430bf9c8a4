// SPDX-License-Identifier: Apache-2.0
#include "lclab/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace lclab {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

double Rng::uniform() {
  // 53 random bits, shifted off zero.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  // Marsaglia polar method; independent of the standard library's
  // distribution implementations so streams are portable.
  while (true) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double Rng::gamma(double shape) {
  // Marsaglia-Tsang, with the shape < 1 boost.
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

Vec Rng::normal_vector(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Vec Rng::unit_vector(int n) {
  while (true) {
    Vec v = normal_vector(n);
    const double norm = v.norm();
    if (norm > 1e-300) return v / norm;
  }
}

Mat haar_rotation(int n, Rng& rng) {
  Mat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

bool MCEstimate::within(double target, double n_se, double abs_floor) const {
  return std::abs(value - target) <= n_se * std_error + abs_floor;
}

MomentAccumulator::MomentAccumulator(int k) : mean_(Vec::Zero(k)), comoment_(Mat::Zero(k, k)) {}

void MomentAccumulator::add(std::span<const double> values) {
  ++count_;
  const double inv = 1.0 / static_cast<double>(count_);
  const int k = size();
  Vec delta(k);
  for (int i = 0; i < k; ++i) {
    delta[i] = values[i] - mean_[i];
    mean_[i] += delta[i] * inv;
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) comoment_(i, j) += delta[i] * (values[j] - mean_[j]);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const Vec delta = other.mean_ - mean_;
  mean_ += delta * (nb / n);
  comoment_ += other.comoment_ + delta * delta.transpose() * (na * nb / n);
  count_ += other.count_;
}

double MomentAccumulator::covariance(int i, int j) const {
  if (count_ < 2) return 0.0;
  return comoment_(i, j) / static_cast<double>(count_ - 1);
}

MCEstimate MomentAccumulator::estimate(int i, std::uint64_t seed) const {
  const double var = std::max(0.0, variance(i));
  const double se = count_ > 0 ? std::sqrt(var / static_cast<double>(count_)) : 0.0;
  return MCEstimate{mean_[i], se, count_, seed};
}

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int threads) { g_threads = std::max(0, threads); }

int thread_count() {
  const int t = g_threads.load();
  if (t > 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_blocks(int n_blocks, const std::function<void(int)>& body) {
  const int workers = std::min(thread_count(), n_blocks);
  if (workers <= 1) {
    for (int b = 0; b < n_blocks; ++b) body(b);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const int b = next.fetch_add(1);
        if (b >= n_blocks) return;
        try {
          body(b);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lclab
