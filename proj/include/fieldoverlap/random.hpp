// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file random.hpp
 * @brief Counter-based random streams (Philox4x32-10) and the variates the
 *        samplers need.
 *
 * A stream is a pure function of a 64-bit key and a 64-bit stream id; the
 * n-th block of output depends only on (key, stream id, n). Package streams
 * therefore reproduce regardless of which worker thread runs them.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace fieldoverlap {

/// SplitMix64 finalizer; used to mix seeds and indices into stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept {
  return mix64(seed ^ mix64(value));
}

/// Philox4x32 with 10 rounds (Salmon et al. 2011), as a pure block function.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/**
 * Sequential view over one Philox stream: yields 64-bit words from blocks
 * (key, stream id, block index) in block order.
 */
class CounterRng {
 public:
  CounterRng(std::uint64_t key, std::uint64_t stream_id) noexcept
      : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
        stream_id_(stream_id) {}

  std::uint64_t next_u64() noexcept {
    if (lane_ == 2) refill();
    return buffer_[lane_++];
  }

  /// Uniform double strictly inside (0, 1), 53-bit resolution.
  double uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  [[nodiscard]] std::uint64_t blocks_consumed() const noexcept { return block_; }

 private:
  void refill() noexcept {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32),
                                  static_cast<std::uint32_t>(stream_id_),
                                  static_cast<std::uint32_t>(stream_id_ >> 32)};
    const auto out = Philox4x32::block(ctr, key_);
    buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
    buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
    ++block_;
    lane_ = 0;
  }

  Philox4x32::Key key_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int lane_ = 2;
};

/**
 * Variates drawn from a CounterRng.
 *
 * Normals: Box-Muller, both outputs used in order. Exponentials: inverse CDF.
 * Gamma(3/2, 1): Exp(1) + N(0,1)^2 / 2, i.e. the sum of Gamma(1) and
 * Gamma(1/2) components.
 */
class VariateSource {
 public:
  explicit VariateSource(CounterRng rng) noexcept : rng_(rng) {}

  double uniform() noexcept { return rng_.uniform_open(); }

  double standard_normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(rng_.uniform_open()));
    const double angle = 2.0 * std::numbers::pi * rng_.uniform_open();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Density e^{-x^2}/sqrt(pi), variance 1/2.
  double vacuum_normal() noexcept { return standard_normal() * std::numbers::sqrt2 * 0.5; }

  double exponential() noexcept { return -std::log(rng_.uniform_open()); }

  double gamma_three_halves() noexcept {
    const double z = standard_normal();
    return exponential() + 0.5 * z * z;
  }

  /// Uniform random sign.
  double sign() noexcept { return (rng_.next_u64() >> 63) != 0 ? -1.0 : 1.0; }

 private:
  CounterRng rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fieldoverlap
