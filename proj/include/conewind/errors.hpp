// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace conewind {

/// A requested numerical tolerance could not be met within the
/// subdivision / iteration budget.
class ToleranceNotReached : public std::runtime_error {
 public:
  explicit ToleranceNotReached(const std::string& what)
      : std::runtime_error(what) {}
};

/// The tail-truncation test of a semi-infinite integral never succeeded;
/// the integrand does not appear to decay.
class NonDecayingIntegrand : public std::runtime_error {
 public:
  explicit NonDecayingIntegrand(const std::string& what)
      : std::runtime_error(what) {}
};

/// Root isolation failed to converge within the iteration cap.
class RootsNotConverged : public std::runtime_error {
 public:
  explicit RootsNotConverged(const std::string& what)
      : std::runtime_error(what) {}
};

/// 1/(1 + u x + v x^2) is not the Laplace transform of a sum of two
/// independent scaled exponentials (u, v > 0 and u^2 - 4v >= 0 fails).
class NotACompletelyMonotoneQuadratic : public std::domain_error {
 public:
  explicit NotACompletelyMonotoneQuadratic(const std::string& what)
      : std::domain_error(what) {}
};

/// Exact integer coefficient expansion would leave the supported range.
class CoefficientOverflow : public std::overflow_error {
 public:
  explicit CoefficientOverflow(const std::string& what)
      : std::overflow_error(what) {}
};

/// A simulated path did not terminate within the configured step cap.
class MaxStepsExceeded : public std::runtime_error {
 public:
  explicit MaxStepsExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

/// The planar walk reached the refinement floor around the origin.
class OriginTooClose : public std::runtime_error {
 public:
  explicit OriginTooClose(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace conewind
