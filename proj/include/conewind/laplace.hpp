// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conewind/chebyshev.hpp"
#include "conewind/errors.hpp"
#include "conewind/polynomial.hpp"

namespace conewind {

/// G_+(x) = sqrt(1+x) + sqrt(x) and G_-(x) = 1/G_+(x).
/// G_- is never formed as a difference of square roots: for large x the
/// subtraction loses all leading digits, while the product G_+ G_- = 1
/// is exact by construction.
inline std::pair<double, double> g_plus_minus(double x) {
  if (!(x >= 0.0)) throw std::domain_error("g_plus_minus: x must be >= 0");
  double gp = std::sqrt(1.0 + x) + std::sqrt(x);
  return {gp, 1.0 / gp};
}

/// Closed-form transform 2 / (G_+^m + G_-^m) = 1 / T_m(sqrt(1+x)),
/// evaluated in log space through the Chebyshev branch so it stays
/// finite for any order. Real (non-integer) m is accepted; the
/// exponential-mixture decomposition is established for integer m only,
/// so real m is a numerically exposed extension.
inline double phi(double m, double x) {
  if (!(m > 0.0)) throw std::domain_error("phi: order must be > 0");
  if (!(x >= 0.0)) throw std::domain_error("phi: x must be >= 0");
  return std::exp(-log_chebyshev_t(m, std::sqrt(1.0 + x)));
}

/// phi_m(x) / sqrt(1+x): the Gauss-Laplace transform of the cone exit
/// time with half-angle pi/(2m).
inline double phi_tilde(double m, double x) {
  return phi(m, x) / std::sqrt(1.0 + x);
}

namespace detail {

// Pascal triangle row in exact 128-bit integers.
inline std::vector<unsigned __int128> binomial_row(int n) {
  std::vector<unsigned __int128> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  }
  return row;
}

}  // namespace detail

/// The degree-n polynomial whose reciprocal (times sqrt(1+x) when m is
/// odd) is phi_m: for m = 2n+1 the expansion of
///   sum_k C(2n+1, 2k+1) (1+x)^k x^(n-k),
/// for m = 2n the same with C(2n, 2k). Coefficients are accumulated in
/// exact integer arithmetic; beyond m = 60 the expansion would leave the
/// range we guarantee exact, so it is refused rather than rounded.
inline Polynomial pq_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("pq_polynomial: m must be >= 1");
  if (m > 60)
    throw CoefficientOverflow(
        "pq_polynomial: exact expansion supported up to m = 60");
  const bool odd = (m % 2) != 0;
  const int n = odd ? (m - 1) / 2 : m / 2;
  auto outer = detail::binomial_row(m);
  std::vector<unsigned __int128> acc(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 0; k <= n; ++k) {
    unsigned __int128 w = outer[static_cast<std::size_t>(odd ? 2 * k + 1 : 2 * k)];
    auto inner = detail::binomial_row(k);  // (1+x)^k
    for (int i = 0; i <= k; ++i) acc[static_cast<std::size_t>(n - k + i)] += w * inner[static_cast<std::size_t>(i)];
  }
  std::vector<double> coeffs(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j)
    coeffs[j] = static_cast<double>(acc[j]);
  return Polynomial{std::move(coeffs)};
}

/// The mixture scales a_k (m odd) / b_k (m even): reciprocal squared
/// sines at the positive Chebyshev zeros, 1/sin^2(pi(2k-1)/(2m)) for
/// k = 1..floor(m/2). Strictly decreasing, every entry > 1; empty for
/// m = 1. They are exactly the negated reciprocal roots of
/// pq_polynomial(m).
inline std::vector<double> spectral_scales(int m) {
  if (m < 1) throw std::invalid_argument("spectral_scales: m must be >= 1");
  int n = m / 2;
  std::vector<double> scales;
  scales.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    double s = std::sin(std::numbers::pi * (2.0 * k - 1.0) / (2.0 * m));
    scales.push_back(1.0 / (s * s));
  }
  return scales;
}

enum class LawVariant { k, k_tilde };

/// A law of the form (optional N^2/2) + sum_k scale_k * Exp(1), the
/// exponential-mixture decomposition of the closed-form transforms.
/// exp_scales are strictly decreasing and >= 1; for the odd-m K-tilde
/// variant the two half-Gaussian components merge into one unit-scale
/// exponential, appended after the spectral scales.
struct FactorizedLaw {
  int m = 1;
  LawVariant variant = LawVariant::k;
  bool has_half_gaussian = false;
  std::vector<double> exp_scales;
};

inline FactorizedLaw factorize(int m, LawVariant variant) {
  FactorizedLaw law;
  law.m = m;
  law.variant = variant;
  law.exp_scales = spectral_scales(m);
  const bool odd = (m % 2) != 0;
  if (variant == LawVariant::k) {
    law.has_half_gaussian = odd;
  } else {
    if (odd) {
      law.exp_scales.push_back(1.0);
    } else {
      law.has_half_gaussian = true;
    }
  }
  return law;
}

/// Product-form Laplace transform of a factorized law:
/// (1+x)^(-1/2 if half-Gaussian) * prod_k 1/(1 + scale_k x).
inline double laplace_of_law(const FactorizedLaw& law, double x) {
  if (!(x >= 0.0)) throw std::domain_error("laplace_of_law: x must be >= 0");
  double v = law.has_half_gaussian ? 1.0 / std::sqrt(1.0 + x) : 1.0;
  for (double c : law.exp_scales) v /= 1.0 + c * x;
  return v;
}

/// Splits 1 + u x + v x^2 = (1 + a x)(1 + b x) with 0 < a <= b when
/// 1/(1+ux+vx^2) is the Laplace transform of a sum of two independent
/// scaled unit exponentials, i.e. u, v > 0 and u^2 - 4v >= 0. The small
/// factor is computed as v/b, never as a difference.
inline std::pair<double, double> quadratic_factor(double u, double v) {
  if (!std::isfinite(u) || !std::isfinite(v) || !(u > 0.0) || !(v > 0.0) ||
      u * u - 4.0 * v < 0.0)
    throw NotACompletelyMonotoneQuadratic(
        "quadratic_factor: requires u, v > 0 and u^2 - 4v >= 0");
  double b = 0.5 * (u + std::sqrt(u * u - 4.0 * v));
  return {v / b, b};
}

}  // namespace conewind
