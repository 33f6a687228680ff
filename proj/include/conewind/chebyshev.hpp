// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conewind {

/// arccosh on [1, inf) computed as log1p((y-1) + sqrt(y-1)*sqrt(y+1));
/// the factored square root keeps full precision as y -> 1, where the
/// naive sqrt(y*y - 1) loses half the digits.
inline double acosh_stable(double y) {
  if (!(y >= 1.0))
    throw std::domain_error("acosh_stable: argument must be >= 1");
  double d = y - 1.0;
  return std::log1p(d + std::sqrt(d) * std::sqrt(y + 1.0));
}

/// First-kind Chebyshev value T_m(y) = cosh(m * arccosh y) on y >= 1.
/// m is any nonnegative real; for integer m this is the classical
/// polynomial. Overflows for large m*arccosh(y) — use log_chebyshev_t.
inline double chebyshev_t(double m, double y) {
  if (!(m >= 0.0))
    throw std::domain_error("chebyshev_t: order must be >= 0");
  return std::cosh(m * acosh_stable(y));
}

/// log T_m(y) evaluated without overflow:
/// log cosh(u) = u + log1p(exp(-2u)) - log 2 with u = m * arccosh y.
inline double log_chebyshev_t(double m, double y) {
  if (!(m >= 0.0))
    throw std::domain_error("log_chebyshev_t: order must be >= 0");
  double u = m * acosh_stable(y);
  return u + std::log1p(std::exp(-2.0 * u)) - std::numbers::ln2;
}

}  // namespace conewind
