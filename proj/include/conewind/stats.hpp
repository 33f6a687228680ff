// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace conewind {

/// Monte Carlo summary: sample mean, standard error (sample standard
/// deviation / sqrt(n)) and the sample count. Deterministic given the
/// input order.
struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long n = 0;
};

inline MCEstimate summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: no samples");
  const auto n = static_cast<long long>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0, 1};
  double ss = 0.0;
  for (double v : values) {
    double d = v - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, sd / std::sqrt(static_cast<double>(n)), n};
}

/// Runs gen(i) for i in [0, n) with a fixed static partition over the
/// worker threads, writing out[i]. Because every slot is filled from its
/// own index alone, the result is identical for any worker count; the
/// first exception thrown by any worker is rethrown after the join.
template <class F>
void parallel_fill(std::vector<double>& out, unsigned threads, F&& gen) {
  const std::size_t n = out.size();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = gen(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = n * t / threads;
    std::size_t hi = n * (t + 1) / threads;
    pool.emplace_back([&, lo, hi, t] {
      try {
        for (std::size_t i = lo; i < hi; ++i) out[i] = gen(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Two-sample Kolmogorov-Smirnov statistic sup_t |F1(t) - F2(t)|.
/// Ties (including censoring atoms) are handled by advancing both
/// empirical CDFs past every equal value before comparing.
inline double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("two_sample_ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

/// Asymptotic two-sample KS critical value at level alpha:
/// c(alpha) * sqrt((n1+n2)/(n1*n2)) with c = sqrt(-log(alpha/2)/2).
inline double ks_critical_value(double alpha, std::size_t n1, std::size_t n2) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("ks_critical_value: alpha in (0,1)");
  double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
  double m = static_cast<double>(n1), n = static_cast<double>(n2);
  return c * std::sqrt((m + n) / (m * n));
}

}  // namespace conewind
