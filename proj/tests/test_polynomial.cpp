// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "conewind/polynomial.hpp"
#include "conewind/rng.hpp"
#include "test_support.hpp"

using namespace conewind;
using testsupport::rel_err;

TEST_CASE("polynomial construction strips trailing zeros") {
  Polynomial p{{1.0, 2.0, 0.0, 0.0}};
  CHECK(p.degree() == 1);
  Polynomial z{{0.0, 0.0}};
  CHECK(z.is_zero());
  CHECK(z.degree() == 0);
}

TEST_CASE("eval_polynomial") {
  CHECK(eval_polynomial(Polynomial{{1.0}}, 3.7) == 1.0);
  CHECK(eval_polynomial(Polynomial{{1.0}}, -211.0) == 1.0);
  Polynomial q{{1.0, 8.0, 8.0}};
  CHECK(eval_polynomial(q, 0.0) == 1.0);  // value at 0 is coeffs[0]
  CHECK(eval_polynomial(q, 1.0) == 17.0);
  CHECK(std::isnan(eval_polynomial(q, std::nan(""))));
}

TEST_CASE("compensated Horner handles massive cancellation") {
  // (x-1)^8 expanded, evaluated near 1: the plain Horner value is pure
  // rounding noise there, the compensated one is good to ~eps^2 * scale.
  // Oracle: x - 1 is exact for x in [0.5, 2], so pow(x-1, 8) is accurate
  // to a few ulps of the true value.
  Polynomial p{{1, -8, 28, -56, 70, -56, 28, -8, 1}};
  for (double x : {0.999, 1.0009, 1.0141}) {
    double d = x - 1.0;
    double want = std::pow(d, 8);
    double got = eval_polynomial_compensated(p, x);
    CHECK(std::abs(got - want) <= 1e-24);
    // the plain evaluation really is orders of magnitude worse
    CHECK(std::abs(eval_polynomial(p, x) - want) > 1e-18);
  }
}

TEST_CASE("real_roots on the worked examples") {
  auto lin = real_roots(Polynomial{{1.0, 1.0}}, 1e-12);
  REQUIRE(lin.size() == 1);
  CHECK(lin[0] == doctest::Approx(-1.0).epsilon(1e-14));

  // quadratic formula oracle for 1 + 8x + 8x^2: roots -(2 +- sqrt(2))/4
  const double r1 = -(2.0 + std::sqrt(2.0)) / 4.0;
  const double r2 = -(2.0 - std::sqrt(2.0)) / 4.0;
  auto quad = real_roots(Polynomial{{1.0, 8.0, 8.0}}, 1e-12);
  REQUIRE(quad.size() == 2);
  CHECK(std::abs(quad[0] - r1) <= 1e-14);
  CHECK(std::abs(quad[1] - r2) <= 1e-14);

  auto p1 = real_roots(Polynomial{{1.0, 4.0}}, 1e-12);
  REQUIRE(p1.size() == 1);
  CHECK(std::abs(p1[0] - (-0.25)) <= 1e-15);
}

TEST_CASE("real_roots rejects the zero polynomial") {
  CHECK_THROWS_AS(real_roots(Polynomial{}, 1e-12), std::invalid_argument);
}

TEST_CASE("roots -> expansion -> roots round trip, random degree <= 12") {
  RngStream rng(0x5EED, 42);
  for (int trial = 0; trial < 40; ++trial) {
    int deg = 2 + static_cast<int>(rng.uniform() * 11);  // 2..12
    std::vector<double> roots;
    double prev = -6.0;
    for (int i = 0; i < deg; ++i) {
      prev += 0.15 + rng.uniform();  // distinct, increasing
      roots.push_back(prev);
    }
    double lead = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.5 + rng.uniform());
    Polynomial p = polynomial_from_roots(roots, lead);
    auto found = real_roots(p, 1e-11);
    REQUIRE(found.size() == roots.size());

    // Root recovery is limited by the conditioning of the expanded
    // monomial form: rounding the coefficients alone moves a root by
    // about eps * sum|c_j r^j| / |p'(r)|. Assert closeness up to that.
    auto dp = derivative(p);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      double r = roots[i];
      double scale = 0.0, xp = 1.0;
      for (double c : p.coeffs) {
        scale += std::abs(c * xp);
        xp *= r;
      }
      double cond = 2.220446049250313e-16 * scale /
                    std::max(std::abs(eval_polynomial_compensated(dp, r)), 1e-30);
      CHECK(std::abs(found[i] - r) <= 1e-9 + 16.0 * cond);
    }

    // the spec-level property: re-expansion reproduces the coefficients
    Polynomial q = polynomial_from_roots(found, lead);
    REQUIRE(q.coeffs.size() == p.coeffs.size());
    double scale = 0.0;
    for (double c : p.coeffs) scale = std::max(scale, std::abs(c));
    for (std::size_t j = 0; j < p.coeffs.size(); ++j)
      CHECK(std::abs(q.coeffs[j] - p.coeffs[j]) <= 1e-9 * scale);
  }
}

TEST_CASE("derivative") {
  Polynomial p{{5.0, 3.0, 2.0, 7.0}};
  auto d = derivative(p);
  REQUIRE(d.coeffs == std::vector<double>{3.0, 4.0, 21.0});
  CHECK(derivative(Polynomial{{4.0}}).is_zero());
}
