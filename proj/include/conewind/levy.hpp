// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "conewind/laplace.hpp"
#include "conewind/quadrature.hpp"

namespace conewind {

/// Levy measure density of a sum of scaled unit exponentials:
/// z -> (1/z) sum_i exp(-z * rate_i) with rate_i the reciprocal scales,
/// plus exp(-z)/(2z) when the half-Gaussian component is present. The
/// latter is the classical Gamma(1/2, 1) density of the N^2/2 term, so
/// the same object covers both law variants. min(1, z) is integrable
/// against it (asserted numerically in the tests).
struct SumExpLevyDensity {
  std::vector<double> rates;
  bool has_half_gaussian = false;

  static SumExpLevyDensity from_law(const FactorizedLaw& law) {
    SumExpLevyDensity d;
    d.rates.reserve(law.exp_scales.size());
    for (double c : law.exp_scales) d.rates.push_back(1.0 / c);
    d.has_half_gaussian = law.has_half_gaussian;
    return d;
  }

  // sum of the exponential terms without the 1/z factor; finite at z = 0
  double exponential_sum(double z) const {
    double s = 0.0;
    for (double r : rates) s += std::exp(-z * r);
    if (has_half_gaussian) s += 0.5 * std::exp(-z);
    return s;
  }

  double operator()(double z) const {
    if (!(z > 0.0))
      throw std::domain_error("SumExpLevyDensity: z must be > 0");
    return exponential_sum(z) / z;
  }
};

inline double levy_density(const FactorizedLaw& law, double z) {
  return SumExpLevyDensity::from_law(law)(z);
}

/// Laplace exponent in closed form:
/// sum_k log(1 + scale_k x) (+ log(1+x)/2 for the half-Gaussian);
/// exp(-result) equals laplace_of_law.
inline double laplace_exponent_series(const FactorizedLaw& law, double x) {
  double s = 0.0;
  for (double c : law.exp_scales) s += std::log1p(c * x);
  if (law.has_half_gaussian) s += 0.5 * std::log1p(x);
  return s;
}

/// The same exponent as a Frullani integral over the Levy density:
/// int_0^inf (1 - e^{-xz}) levy_density(law, z) dz. Matching
/// laplace_exponent_series within tol is the executable form of the
/// sum-of-exponentials Levy-measure identity.
inline QuadratureResult laplace_exponent_integral(const FactorizedLaw& law,
                                                  double x, double tol) {
  if (!(x >= 0.0))
    throw std::domain_error("laplace_exponent_integral: x must be >= 0");
  const SumExpLevyDensity density = SumExpLevyDensity::from_law(law);
  auto f = [density, x](double z) {
    // limit of (1 - e^{-xz})/z at 0 is x
    if (z <= 0.0) return x * density.exponential_sum(0.0);
    return -std::expm1(-x * z) * density.exponential_sum(z) / z;
  };
  return integrate_semi_infinite(f, tol);
}

/// Laplace exponent of the arcsine-Thorin subordinator at unit time:
/// int_0^inf (dz/z) (1 - e^{-xz}) * arcsine_laplace(z). Equals
/// 2 log(sqrt(1+x) + sqrt(x)).
///
/// The arcsine transform decays only like z^{-1/2}, so a plain cutoff
/// cannot reach 1e-6: the tail past z = 50 still holds ~0.16 of the
/// exponent. The integral is split at z = 50 and the tail mapped by
/// z = 50/s^2, which turns the z^{-3/2} decay of the full integrand into
/// a bounded smooth function of s on (0, 1].
inline double thorin_exponent(double x, double tol = 1e-8) {
  if (!(x >= 0.0)) throw std::domain_error("thorin_exponent: x must be >= 0");
  if (!(tol > 0.0))
    throw std::invalid_argument("thorin_exponent: requires tol > 0");
  if (x == 0.0) return 0.0;

  const double z_head = 50.0;
  const double inner_tol = std::min(1e-3 * tol, 1e-10);

  auto head = [x, inner_tol](double z) {
    if (z <= 0.0) return x;  // limit of (1-e^{-xz})/z at z -> 0
    return -std::expm1(-x * z) * arcsine_laplace(z, inner_tol) / z;
  };
  double value = integrate(head, 0.0, z_head, 0.45 * tol).value;

  auto tail = [x, z_head, inner_tol](double s) {
    if (s <= 0.0) return 2.0 / std::sqrt(std::numbers::pi * z_head);
    double z = z_head / (s * s);
    return -std::expm1(-x * z) * arcsine_laplace(z, inner_tol) * 2.0 / s;
  };
  value += integrate(tail, 0.0, 1.0, 0.45 * tol).value;
  return value;
}

enum class Parity { odd, even };

/// n-th root normalization of the factorized exponent:
/// (1/n) sum_{k=1..n} log(1 + c_k x) with c_k the scales of m = 2n+1
/// (odd) or m = 2n (even). Converges to thorin_exponent(x) as n grows;
/// both parities share the limit.
inline double ggc_limit_exponent(Parity parity, int n, double x) {
  if (n < 1) throw std::invalid_argument("ggc_limit_exponent: n must be >= 1");
  if (!(x >= 0.0))
    throw std::domain_error("ggc_limit_exponent: x must be >= 0");
  const int m = parity == Parity::odd ? 2 * n + 1 : 2 * n;
  double s = 0.0;
  for (int k = 1; k <= n; ++k) {
    double sn = std::sin(std::numbers::pi * (2.0 * k - 1.0) / (2.0 * m));
    s += std::log1p(x / (sn * sn));
  }
  return s / n;
}

/// Small-angle limit law transform: G_+(x)^(-pi/(2c)).
inline double asymptotic_limit(double x, double c) {
  if (!(x >= 0.0)) throw std::domain_error("asymptotic_limit: x must be >= 0");
  if (!(c > 0.0)) throw std::domain_error("asymptotic_limit: c must be > 0");
  // log G_+(x) = asinh(sqrt(x))
  return std::exp(-(std::numbers::pi / (2.0 * c)) * std::asinh(std::sqrt(x)));
}

/// The finite-angle transform at half-angle c*eps, renormalized by the
/// power eps so that it converges to asymptotic_limit(x, c) as eps -> 0.
/// Evaluated entirely in log space through the real-order Chebyshev
/// branch, so no underflow occurs even for eps ~ 1e-6.
inline double asymptotic_check(double x, double c, double eps) {
  if (!(x >= 0.0)) throw std::domain_error("asymptotic_check: x must be >= 0");
  if (!(c > 0.0)) throw std::domain_error("asymptotic_check: c must be > 0");
  if (!(eps > 0.0))
    throw std::domain_error("asymptotic_check: eps must be > 0");
  const double m = std::numbers::pi / (2.0 * c * eps);
  const double log_phi_tilde =
      -0.5 * std::log1p(x) - log_chebyshev_t(m, std::sqrt(1.0 + x));
  return std::exp(eps * log_phi_tilde);
}

}  // namespace conewind
