// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#include "datatest/rng.hpp"

#include <cmath>

#include "datatest/errors.hpp"

namespace datatest::rng {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

std::uint64_t mix64(std::uint64_t key, std::uint64_t counter) {
  // splitmix64 finalizer over the counter sequence anchored at key.
  std::uint64_t z = key + kGolden * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Stream derive_stream(std::uint64_t seed, std::uint64_t index) {
  // Re-mix so sibling streams get well-separated keys even for small seeds.
  return Stream(mix64(mix64(seed, 0x5EEDull), index));
}

double Stream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Stream::next_open_double() { return 1.0 - next_double(); }

double Stream::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = next_open_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = r * std::sin(kTwoPi * u2);
  has_cached_normal_ = true;
  return r * std::cos(kTwoPi * u2);
}

double Stream::next_gamma(double shape) {
  if (!(shape > 0.0)) throw parameter_error("gamma shape must be positive");
  if (shape < 1.0) {
    const double u = next_open_double();
    return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_open_double();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Stream::next_chi_square(double df) {
  if (!(df > 0.0)) throw parameter_error("chi-square df must be positive");
  return 2.0 * next_gamma(0.5 * df);
}

}  // namespace datatest::rng
