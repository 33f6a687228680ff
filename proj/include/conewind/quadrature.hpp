// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

#include "conewind/errors.hpp"

namespace conewind {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long long evaluations = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK dqk15 constants).
struct Gk15 {
  static constexpr double xgk[8] = {
      0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
      0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
      0.2077849550078985, 0.0};
  static constexpr double wgk[8] = {
      0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
      0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
      0.2044329400752989, 0.2094821410847278};
  static constexpr double wg[4] = {0.1294849661688697, 0.2797053914892767,
                                   0.3818300505051189, 0.4179591836734694};
};

struct Segment {
  double a, b, value, error;
};

template <class F>
Segment gk15_segment(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double fval1[7], fval2[7];
  const double fc = f(center);
  for (int j = 0; j < 7; ++j) {
    double dx = hlgth * Gk15::xgk[j];
    fval1[j] = f(center - dx);
    fval2[j] = f(center + dx);
  }

  double resg = Gk15::wg[3] * fc;
  double resk = Gk15::wgk[7] * fc;
  double resabs = Gk15::wgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) {
    double sum = fval1[j] + fval2[j];
    resk += Gk15::wgk[j] * sum;
    resabs += Gk15::wgk[j] * (std::abs(fval1[j]) + std::abs(fval2[j]));
    if (j % 2 == 1) resg += Gk15::wg[j / 2] * sum;
  }

  const double reskh = resk * 0.5;
  double resasc = Gk15::wgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += Gk15::wgk[j] *
              (std::abs(fval1[j] - reskh) + std::abs(fval2[j] - reskh));

  resasc *= hlgth;
  resabs *= hlgth;
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  if (!std::isfinite(resk) || !std::isfinite(err))
    err = std::numeric_limits<double>::infinity();

  return {a, b, resk * hlgth, err};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute
/// tolerance tol. The interval with the largest local error estimate is
/// bisected until the summed estimate drops below tol; throws
/// ToleranceNotReached when the subdivision budget runs out first
/// (singular or oscillatory integrand).
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double tol) {
  if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: requires tol > 0");

  auto cmp = [](const detail::Segment& l, const detail::Segment& r) {
    return l.error < r.error;
  };
  std::priority_queue<detail::Segment, std::vector<detail::Segment>,
                      decltype(cmp)>
      active(cmp);
  long long evals = 0;
  double active_error = 0.0;
  auto push_segment = [&](double lo, double hi) {
    detail::Segment seg = detail::gk15_segment(f, lo, hi);
    evals += 15;
    active_error += seg.error;
    active.push(seg);
  };

  push_segment(a, b);
  double frozen_value = 0.0, frozen_error = 0.0;
  constexpr int kMaxSegments = 4000;
  int segments = 1;
  const double eps = std::numeric_limits<double>::epsilon();

  while (frozen_error + active_error > tol && !active.empty()) {
    if (segments >= kMaxSegments)
      throw ToleranceNotReached("integrate: subdivision cap reached");
    detail::Segment worst = active.top();
    active.pop();
    active_error -= worst.error;

    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b ||
        (worst.b - worst.a) <=
            8.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      // interval at machine width: accept as-is
      frozen_value += worst.value;
      frozen_error += worst.error;
      continue;
    }
    push_segment(worst.a, mid);
    push_segment(mid, worst.b);
    segments += 1;
  }

  // Drain and re-sum so the reported totals do not carry the drift of
  // the incremental bookkeeping.
  double value = frozen_value, error = frozen_error;
  while (!active.empty()) {
    value += active.top().value;
    error += active.top().error;
    active.pop();
  }
  if (!(error <= tol))
    throw ToleranceNotReached("integrate: error estimate above tolerance");
  return {value, error, evals};
}

/// Integrates f over [0, inf) by exponential-doubling truncation: the
/// cutoff Z doubles until the tail heuristic |f(Z)| * Z < tol/10 accepts
/// (all integrands in scope decay exponentially past their scale), then
/// the finite piece goes through the adaptive rule.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("integrate_semi_infinite: requires tol > 0");
  double z = 1.0;
  long long probe_evals = 1;
  while (!(std::abs(f(z)) * z < 0.1 * tol)) {
    z *= 2.0;
    if (++probe_evals > 64)
      throw NonDecayingIntegrand(
          "integrate_semi_infinite: truncation test never accepted");
  }
  QuadratureResult r = integrate(f, 0.0, z, tol);
  r.evaluations += probe_evals;
  return r;
}

/// Laplace transform of the arcsine law on [0, 1] at z >= 0, through the
/// regularized form (2/pi) * int_0^{pi/2} exp(-z sin^2 v) dv whose
/// integrand is smooth (the 1/sqrt(h(1-h)) endpoint singularities of the
/// direct form are absorbed by the substitution h = sin^2 v). For large
/// z the mass concentrates in a peak of width ~ 1/sqrt(z) at v = 0; the
/// domain is split there so the adaptive rule cannot step over it.
inline double arcsine_laplace(double z, double tol = 1e-10) {
  if (!(z >= 0.0)) throw std::domain_error("arcsine_laplace: z must be >= 0");
  if (z == 0.0) return 1.0;
  const double half_pi = 0.5 * std::numbers::pi;
  auto g = [z](double v) {
    double s = std::sin(v);
    return std::exp(-z * s * s);
  };
  const double piece_tol = 0.5 * tol * half_pi;
  double split = half_pi;
  if (z > 40.0) split = std::asin(std::sqrt(40.0 / z));
  double total = integrate(g, 0.0, split, piece_tol).value;
  if (split < half_pi) total += integrate(g, split, half_pi, piece_tol).value;
  return total * (2.0 / std::numbers::pi);
}

}  // namespace conewind
