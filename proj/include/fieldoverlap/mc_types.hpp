// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fieldoverlap/samplers.hpp"

namespace fieldoverlap {

inline constexpr int kDefaultPackages = 20;
inline constexpr double kDefaultNormTolerance = 0.01;

struct McConfig {
  std::uint64_t samples_total = 1'000'000;
  int packages = kDefaultPackages;
  std::uint64_t root_seed = 1;
  SamplerKind sampler = SamplerKind::CartesianGaussian;
  double norm_tolerance = kDefaultNormTolerance;
  unsigned threads = 0;  ///< 0: std::thread::hardware_concurrency()
};

/// Result of one package-based Monte Carlo run.
struct McEstimate {
  double mean = 0.0;
  double package_min = 0.0;
  double package_max = 0.0;
  double std_error = 0.0;
  double norm_mean = 0.0;
  double norm_min = 0.0;
  double norm_max = 0.0;
  std::uint64_t samples_used = 0;
  int packages = 0;
  bool norm_ok = false;
  bool spread_ok = false;
  bool reliable = false;
  double wall_time_seconds = 0.0;
  std::vector<double> package_means;
  std::vector<double> package_norms;

  /// Half-width of the wider of the package band and the 1-sigma standard error band.
  [[nodiscard]] double error_halfwidth() const noexcept {
    const double spread = 0.5 * (package_max - package_min);
    return spread > std_error ? spread : std_error;
  }
};

}  // namespace fieldoverlap
