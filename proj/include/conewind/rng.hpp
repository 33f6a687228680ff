// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace conewind {

/// Counter-based splittable random stream. Each (seed, stream) pair maps
/// to an independent sequence; output i is a pure function of
/// (seed, stream, i) — a splitmix-style Weyl counter pushed through a
/// 64-bit finalizer — so per-path streams can be created in any order on
/// any number of threads and always reproduce the same draws.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : counter_(derive(seed, stream)) {}

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ull;
    return finalize(counter_);
  }

  /// Uniform on the open interval (0, 1); never returns an endpoint, so
  /// logs of the output are always finite.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second variate of each pair is
  /// cached, so draws cost one log + sincos per two values.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Unit-mean exponential.
  double exponential() { return -std::log(uniform()); }

 private:
  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t a = finalize(seed + 0x9E3779B97F4A7C15ull);
    std::uint64_t b = finalize(stream + 0xD1B54A32D192ED03ull);
    return finalize(a ^ (b + 0x2545F4914F6CDD1Dull + (a << 6) + (a >> 2)));
  }

  std::uint64_t counter_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace conewind
