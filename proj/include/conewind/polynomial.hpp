// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conewind/errors.hpp"

namespace conewind {

/// Dense real polynomial, coefficients in ascending degree order
/// (coeffs[j] multiplies x^j). Trailing zeros are stripped on
/// construction; the zero polynomial is represented as {0}.
struct Polynomial {
  std::vector<double> coeffs;

  Polynomial() : coeffs{0.0} {}
  explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) {
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    if (coeffs.empty()) coeffs.push_back(0.0);
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.size() == 1 && coeffs[0] == 0.0; }
};

/// Horner evaluation. NaN inputs propagate.
inline double eval_polynomial(const Polynomial& p, double x) {
  double acc = 0.0;
  for (std::size_t j = p.coeffs.size(); j-- > 0;) acc = acc * x + p.coeffs[j];
  return acc;
}

namespace detail {

struct TwoOp {
  double value;
  double err;
};

inline TwoOp two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline TwoOp two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

/// Compensated Horner scheme: evaluates with roughly twice the working
/// precision. Needed when expanded coefficients are large and the value
/// near a root cancels almost completely (the Chebyshev-derived
/// polynomials reach coefficients ~1e15 by degree 20).
inline double eval_polynomial_compensated(const Polynomial& p, double x) {
  const auto& c = p.coeffs;
  double s = c.back();
  double comp = 0.0;
  for (std::size_t j = c.size() - 1; j-- > 0;) {
    auto pr = detail::two_prod(s, x);
    auto su = detail::two_sum(pr.value, c[j]);
    s = su.value;
    comp = comp * x + (pr.err + su.err);
  }
  return s + comp;
}

inline Polynomial derivative(const Polynomial& p) {
  if (p.degree() < 1) return Polynomial{};
  std::vector<double> d(p.coeffs.size() - 1);
  for (std::size_t j = 1; j < p.coeffs.size(); ++j)
    d[j - 1] = static_cast<double>(j) * p.coeffs[j];
  return Polynomial{std::move(d)};
}

/// Expands leading * prod_i (x - roots[i]) into dense coefficients.
inline Polynomial polynomial_from_roots(std::span<const double> roots,
                                        double leading) {
  std::vector<double> c{leading};
  for (double r : roots) {
    c.push_back(0.0);
    for (std::size_t j = c.size() - 1; j >= 1; --j) c[j] = c[j - 1] - r * c[j];
    c[0] *= -r;
  }
  return Polynomial{std::move(c)};
}

namespace detail {

inline double cauchy_root_bound(const Polynomial& p) {
  double lead = std::abs(p.coeffs.back());
  double m = 0.0;
  for (std::size_t j = 0; j + 1 < p.coeffs.size(); ++j)
    m = std::max(m, std::abs(p.coeffs[j]));
  return 1.0 + m / lead;
}

inline double bisect_root(const Polynomial& p, double a, double b, double fa,
                          double fb) {
  // fa, fb have opposite signs on entry; the cap covers collapsing a
  // bracket across the full double exponent range
  (void)fb;
  for (int iter = 0; iter < 1200; ++iter) {
    double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) return mid;  // interval at machine width
    double fm = eval_polynomial_compensated(p, mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  throw RootsNotConverged("bisection did not collapse the bracket");
}

inline std::vector<double> real_roots_impl(const Polynomial& p) {
  int n = p.degree();
  if (n <= 0) return {};
  if (n == 1) return {-p.coeffs[0] / p.coeffs[1]};

  std::vector<double> crit = real_roots_impl(derivative(p));
  double bound = cauchy_root_bound(p);

  std::vector<double> pts;
  pts.reserve(crit.size() + 2);
  pts.push_back(-bound);
  for (double r : crit)
    if (r > -bound && r < bound) pts.push_back(r);
  pts.push_back(bound);

  std::vector<double> roots;
  double fa = eval_polynomial_compensated(p, pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double fb = eval_polynomial_compensated(p, pts[i]);
    if (fa == 0.0) {
      if (roots.empty() || roots.back() != pts[i - 1]) roots.push_back(pts[i - 1]);
    } else if (fb != 0.0 && (fa > 0.0) != (fb > 0.0)) {
      roots.push_back(bisect_root(p, pts[i - 1], pts[i], fa, fb));
    }
    fa = fb;
  }
  if (fa == 0.0) roots.push_back(pts.back());
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace detail

/// Isolates and returns (sorted) the real roots of a polynomial whose
/// roots are all real and simple — the caller's guarantee. Brackets come
/// from the interleaving roots of the derivative; each bracket is
/// bisected with compensated evaluation.
///
/// On return every root r satisfies |p(r)| <= tol * sum_j |c_j| |r|^j.
inline std::vector<double> real_roots(const Polynomial& p, double tol) {
  if (p.is_zero()) throw std::invalid_argument("real_roots: zero polynomial");
  auto roots = detail::real_roots_impl(p);
  for (double r : roots) {
    double scale = 0.0, xp = 1.0;
    for (double c : p.coeffs) {
      scale += std::abs(c) * std::abs(xp);
      xp *= r;
    }
    if (std::abs(eval_polynomial_compensated(p, r)) > tol * scale)
      throw RootsNotConverged("residual exceeds requested tolerance");
  }
  return roots;
}

}  // namespace conewind
