// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DATATEST_RNG_HPP
#define DATATEST_RNG_HPP

#include <cstdint>

namespace datatest::rng {

// Counter-based generator: output k is mix64(key, k), so a stream is fully
// determined by its key and draws are independent of any execution order.
std::uint64_t mix64(std::uint64_t key, std::uint64_t counter);

class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return mix64(key_, counter_++); }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double();

  // Uniform on (0, 1]; never zero, safe under log().
  double next_open_double();

  // Standard normal via Box-Muller; the paired draw is cached.
  double next_normal();

  // Marsaglia-Tsang for shape >= 1, boosted for shape < 1. Unit scale.
  double next_gamma(double shape);

  double next_chi_square(double df);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// Independent, reproducible sub-stream per index. Used by the simulator to
// give every replication its own stream, making parallel runs bit-identical
// to serial ones.
Stream derive_stream(std::uint64_t seed, std::uint64_t index);

}  // namespace datatest::rng

#endif  // DATATEST_RNG_HPP
