// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "conewind/errors.hpp"
#include "conewind/laplace.hpp"
#include "conewind/rng.hpp"
#include "conewind/stats.hpp"

namespace conewind {

/// Euler discretization parameters for the exit-time simulators.
struct PathConfig {
  double c = std::numbers::pi / 2.0;  // cone half-angle, radians
  double step = 1e-4;                 // Euler time step h
  long long max_steps = 2'000'000;    // per-path safety cap
  double min_radius = 0.05;           // planar refinement trigger near 0

  void validate() const {
    if (!(c > 0.0 && c <= std::numbers::pi))
      throw std::invalid_argument("PathConfig: c must be in (0, pi]");
    if (!(step > 0.0)) throw std::invalid_argument("PathConfig: step > 0");
    if (max_steps < 1) throw std::invalid_argument("PathConfig: max_steps >= 1");
    if (!(min_radius > 0.0))
      throw std::invalid_argument("PathConfig: min_radius > 0");
  }
};

// Disjoint stream-id spaces so samplers sharing a seed stay independent.
namespace stream_kind {
inline constexpr std::uint64_t law = 1ull << 56;
inline constexpr std::uint64_t exact_m1 = 2ull << 56;
inline constexpr std::uint64_t exact_m2 = 3ull << 56;
inline constexpr std::uint64_t skew = 4ull << 56;
inline constexpr std::uint64_t planar = 5ull << 56;
}  // namespace stream_kind

/// One draw of a factorized law: (N^2/2 if present) + sum_k scale_k E_k.
/// Draw order is fixed (normal first, then exponentials in stored scale
/// order) so results are reproducible byte for byte.
inline double sample_factorized(const FactorizedLaw& law, RngStream& rng) {
  double v = 0.0;
  if (law.has_half_gaussian) {
    double z = rng.normal();
    v += 0.5 * z * z;
  }
  for (double c : law.exp_scales) v += c * rng.exponential();
  return v;
}

/// Monte Carlo estimate of E[exp(-x K)] for a factorized law K, to be
/// compared against laplace_of_law / phi / phi_tilde.
inline MCEstimate estimate_law_laplace(const FactorizedLaw& law, double x,
                                       long long n, std::uint64_t seed,
                                       unsigned threads = 0) {
  if (n < 1) throw std::invalid_argument("estimate_law_laplace: n >= 1");
  std::vector<double> vals(static_cast<std::size_t>(n));
  parallel_fill(vals, threads, [&law, x, seed](std::size_t i) {
    RngStream rng(seed, stream_kind::law + i);
    return std::exp(-x * sample_factorized(law, rng));
  });
  return summarize(vals);
}

/// Exact draw of the exit time at half-angle pi/2: 1/N^2.
inline double sample_exit_m1(RngStream& rng) {
  double z = rng.normal();
  while (z == 0.0) z = rng.normal();
  return 1.0 / (z * z);
}

/// Exact draw of the exit time at half-angle pi/4:
/// min of two independent copies of 1/N^2, halved.
inline double sample_exit_m2(RngStream& rng) {
  for (;;) {
    double z1 = rng.normal();
    double z2 = rng.normal();
    double q = std::max(z1 * z1, z2 * z2);
    if (q != 0.0) return 1.0 / (2.0 * q);
  }
}

struct ExitOutcome {
  double value = 0.0;  // exit time, or the censored value when capped
  bool capped = false;
};

/// Skew-product simulator: two independent Euler walks beta, gamma with
/// N(0, h) increments; the exit time is the accumulated integral of
/// exp(2 beta) (trapezoidal between consecutive beta values) up to the
/// first time |gamma| reaches c, with the final increment linearly
/// interpolated at the crossing fraction. When the step cap is hit the
/// outcome is flagged and carries the area accumulated so far.
inline ExitOutcome simulate_exit_skew_capped(const PathConfig& cfg,
                                             RngStream& rng) {
  cfg.validate();
  const double h = cfg.step;
  const double sh = std::sqrt(h);
  double beta = 0.0, gamma = 0.0, area = 0.0;
  double exp_prev = 1.0;  // exp(2*beta) at the current node
  for (long long k = 0; k < cfg.max_steps; ++k) {
    const double db = sh * rng.normal();
    const double dg = sh * rng.normal();
    const double gamma_new = gamma + dg;
    if (std::abs(gamma_new) >= cfg.c) {
      const double frac =
          (cfg.c - std::abs(gamma)) / (std::abs(gamma_new) - std::abs(gamma));
      const double beta_hit = beta + frac * db;
      area += 0.5 * (exp_prev + std::exp(2.0 * beta_hit)) * (frac * h);
      return {area, false};
    }
    const double exp_new = std::exp(2.0 * (beta + db));
    area += 0.5 * (exp_prev + exp_new) * h;
    beta += db;
    gamma = gamma_new;
    exp_prev = exp_new;
  }
  return {area, true};
}

inline double simulate_exit_skew(const PathConfig& cfg, RngStream& rng) {
  ExitOutcome o = simulate_exit_skew_capped(cfg, rng);
  if (o.capped)
    throw MaxStepsExceeded("simulate_exit_skew: |gamma| never reached c");
  return o.value;
}

/// Direct planar simulator: Euler walk of (X, Y) from (1, 0); the
/// winding angle accumulates the signed angle between successive
/// position vectors. The step shrinks by a factor of 4 for every halving
/// of the distance to the origin below min_radius (the winding rate
/// scales like 1/|Z|^2), and a proposed increment that would turn by
/// pi/2 or more is refined further before being accepted.
inline ExitOutcome simulate_exit_planar_capped(const PathConfig& cfg,
                                               RngStream& rng) {
  cfg.validate();
  const double mr2 = cfg.min_radius * cfg.min_radius;
  double x = 1.0, y = 0.0, theta = 0.0, t = 0.0;
  for (long long k = 0; k < cfg.max_steps; ++k) {
    const double r2 = x * x + y * y;
    if (r2 < 1e-12)
      throw OriginTooClose("simulate_exit_planar: |Z| < 1e-6");
    double h_eff = cfg.step;
    for (double thr = mr2; r2 < thr; thr *= 0.25) h_eff *= 0.25;

    double dx, dy, dtheta;
    for (int refine = 0;; ++refine) {
      const double sh = std::sqrt(h_eff);
      dx = sh * rng.normal();
      dy = sh * rng.normal();
      dtheta = std::atan2(x * dy - y * dx, x * (x + dx) + y * (y + dy));
      if (std::abs(dtheta) < std::numbers::pi / 2.0) break;
      if (refine >= 64)
        throw OriginTooClose("simulate_exit_planar: refinement floor");
      h_eff *= 0.25;
    }
    x += dx;
    y += dy;
    theta += dtheta;
    t += h_eff;
    if (std::abs(theta) >= cfg.c) return {t, false};
  }
  return {t, true};
}

inline double simulate_exit_planar(const PathConfig& cfg, RngStream& rng) {
  ExitOutcome o = simulate_exit_planar_capped(cfg, rng);
  if (o.capped)
    throw MaxStepsExceeded("simulate_exit_planar: |theta| never reached c");
  return o.value;
}

/// A batch of per-path outcomes; capped paths carry their censored value
/// in `values` and are tallied in `capped`.
struct PathSampleSet {
  std::vector<double> values;
  long long capped = 0;
};

namespace detail {

template <class Sim>
PathSampleSet sample_paths(const PathConfig& cfg, long long n,
                           std::uint64_t seed, std::uint64_t kind,
                           unsigned threads, Sim&& sim) {
  cfg.validate();
  if (n < 1) throw std::invalid_argument("sample_paths: n >= 1");
  PathSampleSet out;
  out.values.resize(static_cast<std::size_t>(n));
  std::vector<double> capped_flags(static_cast<std::size_t>(n));
  std::vector<double>& values = out.values;
  parallel_fill(values, threads, [&](std::size_t i) {
    RngStream rng(seed, kind + i);
    ExitOutcome o = sim(cfg, rng);
    capped_flags[i] = o.capped ? 1.0 : 0.0;
    return o.value;
  });
  for (double f : capped_flags) out.capped += f != 0.0 ? 1 : 0;
  return out;
}

}  // namespace detail

inline PathSampleSet sample_paths_skew(const PathConfig& cfg, long long n,
                                       std::uint64_t seed,
                                       unsigned threads = 0) {
  return detail::sample_paths(cfg, n, seed, stream_kind::skew, threads,
                              [](const PathConfig& c, RngStream& r) {
                                return simulate_exit_skew_capped(c, r);
                              });
}

inline PathSampleSet sample_paths_planar(const PathConfig& cfg, long long n,
                                         std::uint64_t seed,
                                         unsigned threads = 0) {
  return detail::sample_paths(cfg, n, seed, stream_kind::planar, threads,
                              [](const PathConfig& c, RngStream& r) {
                                return simulate_exit_planar_capped(c, r);
                              });
}

inline std::vector<double> sample_exact_m1(long long n, std::uint64_t seed,
                                           unsigned threads = 0) {
  if (n < 1) throw std::invalid_argument("sample_exact_m1: n >= 1");
  std::vector<double> v(static_cast<std::size_t>(n));
  parallel_fill(v, threads, [seed](std::size_t i) {
    RngStream rng(seed, stream_kind::exact_m1 + i);
    return sample_exit_m1(rng);
  });
  return v;
}

inline std::vector<double> sample_exact_m2(long long n, std::uint64_t seed,
                                           unsigned threads = 0) {
  if (n < 1) throw std::invalid_argument("sample_exact_m2: n >= 1");
  std::vector<double> v(static_cast<std::size_t>(n));
  parallel_fill(v, threads, [seed](std::size_t i) {
    RngStream rng(seed, stream_kind::exact_m2 + i);
    return sample_exit_m2(rng);
  });
  return v;
}

/// The Gauss-Laplace functional of a sample of exit times at half-angle
/// c: mean and stderr of sqrt(2 c^2 / (pi T)) * exp(-x / (2T)).
/// Its expectation is phi_tilde(pi/(2c), x).
inline MCEstimate estimate_gauss_laplace(std::span<const double> samples,
                                         double c, double x) {
  if (!(c > 0.0))
    throw std::domain_error("estimate_gauss_laplace: c must be > 0");
  if (!(x >= 0.0))
    throw std::domain_error("estimate_gauss_laplace: x must be >= 0");
  std::vector<double> vals(samples.size());
  const double amp = c * std::sqrt(2.0 / std::numbers::pi);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double t = samples[i];
    if (!(t > 0.0))
      throw std::domain_error("estimate_gauss_laplace: nonpositive sample");
    vals[i] = amp / std::sqrt(t) * std::exp(-x / (2.0 * t));
  }
  return summarize(vals);
}

}  // namespace conewind
