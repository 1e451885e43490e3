// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file mc_engine.hpp
 * @brief Package-based Monte Carlo estimation of the reduced overlap integrals.
 *
 * Samples are split into equally sized packages, each driven by its own
 * counter-based stream. Packages run on a worker pool and are merged in
 * package order, so results do not depend on the thread count. Error bars are
 * the min/max of the package means; the standard error of the package means
 * is reported alongside. Every run also estimates a norm check whose exact
 * value is 1.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fieldoverlap/analysis.hpp"
#include "fieldoverlap/mc_types.hpp"
#include "fieldoverlap/overlap.hpp"
#include "fieldoverlap/random.hpp"
#include "fieldoverlap/samplers.hpp"
#include "fieldoverlap/summation.hpp"

namespace fieldoverlap {

inline Estimator estimator_for(SamplerKind kind) noexcept {
  return kind == SamplerKind::DirectDensity ? Estimator::DirectDensity : Estimator::ImportanceWeighted;
}

/// Coordinates drawn from x^2 e^{-x^2} when sampling |Psi|^2 directly.
inline SlotLayout direct_layout(const IntegralSpec& spec) noexcept {
  switch (spec.family) {
    case Family::NN: return spec.swapped ? SlotLayout::OddIndices : SlotLayout::EvenIndices;
    case Family::NVac: return SlotLayout::All;
    case Family::VacN: return SlotLayout::None;
  }
  return SlotLayout::None;
}

namespace detail {

struct PackageResult {
  double mean = 0.0;
  double norm = 0.0;
};

struct Terms {
  double overlap;
  double norm;
};

/// Overlap and norm-check contributions of one sample.
inline Terms sample_terms(const IntegralSpec& spec, SlotLayout layout, std::span<const double> x,
                          double density_weight) {
  if (spec.estimator == Estimator::DirectDensity) {
    bool hit = false;
    switch (spec.family) {
      case Family::NN: hit = indicator_nn(x, spec.swapped); break;
      case Family::NVac: hit = indicator_weight_nvac(x, VacDirection::StateBelowVac).indicator; break;
      case Family::VacN: hit = indicator_weight_nvac(x, VacDirection::VacBelowState).indicator; break;
    }
    return {hit ? 1.0 : 0.0, direct_density_moment_check(x, layout)};
  }
  IndicatorWeight iw{};
  switch (spec.family) {
    case Family::NN: iw = evaluate_nn(x, spec.swapped); break;
    case Family::NVac: iw = indicator_weight_nvac(x, VacDirection::StateBelowVac); break;
    case Family::VacN: iw = indicator_weight_nvac(x, VacDirection::VacBelowState); break;
  }
  const double w = iw.weight * density_weight;
  return {iw.indicator ? w : 0.0, w};
}

inline PackageResult run_package(const IntegralSpec& spec, const McConfig& config, std::uint64_t package,
                                 std::uint64_t per_package) {
  const SlotLayout layout = direct_layout(spec);
  SampleStream stream(config.root_seed, package, config.sampler, spec.dimension(), layout);
  std::vector<double> x(spec.dimension());
  CompensatedSum overlap;
  CompensatedSum norm;
  for (std::uint64_t i = 0; i < per_package; ++i) {
    const double dw = stream.next(x);
    const auto t = sample_terms(spec, layout, x, dw);
    overlap.add(t.overlap);
    norm.add(t.norm);
  }
  const double count = static_cast<double>(per_package);
  return {overlap.value() / count, norm.value() / count};
}

struct Spread {
  double mean;
  double min;
  double max;
  double std_error;
};

inline Spread summarize(const std::vector<double>& values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  const double p = static_cast<double>(values.size());
  const double mean = acc.value() / p;
  CompensatedSum sq;
  for (double v : values) sq.add((v - mean) * (v - mean));
  const double se = values.size() > 1 ? std::sqrt(sq.value() / (p - 1.0) / p) : 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  // The mean of the package means can round just outside [min, max].
  return {std::clamp(mean, *lo, *hi), *lo, *hi, se};
}

inline unsigned worker_count(unsigned requested, int packages) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return std::min<unsigned>(t, static_cast<unsigned>(packages));
}

}  // namespace detail

/**
 * Estimates the integral described by `spec`.
 *
 * samples_total is rounded up to a multiple of the package count; the number
 * actually used is reported in samples_used. The run is reliable when the norm
 * check is within norm_tolerance of 1 and the package spread is smaller than
 * the mean itself.
 */
inline McEstimate estimate(const IntegralSpec& spec, const McConfig& config) {
  spec.validate();
  if (config.samples_total == 0) throw std::invalid_argument("samples_total must be positive");
  if (config.packages < 1) throw std::invalid_argument("packages must be positive");
  if (estimator_for(config.sampler) != spec.estimator) {
    throw std::invalid_argument("estimator does not match sampler kind: direct-density estimation "
                                "requires the direct sampler, importance weighting the others");
  }

  const auto start = std::chrono::steady_clock::now();
  const auto packages = static_cast<std::uint64_t>(config.packages);
  const std::uint64_t per_package = (config.samples_total + packages - 1) / packages;

  std::vector<detail::PackageResult> results(packages);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::uint64_t p = next.fetch_add(1); p < packages; p = next.fetch_add(1)) {
      try {
        results[p] = detail::run_package(spec, config, p, per_package);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n_workers = detail::worker_count(config.threads, config.packages);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  McEstimate est;
  est.packages = config.packages;
  est.samples_used = per_package * packages;
  est.package_means.reserve(packages);
  est.package_norms.reserve(packages);
  for (const auto& r : results) {
    est.package_means.push_back(r.mean);
    est.package_norms.push_back(r.norm);
  }
  const auto overlap = detail::summarize(est.package_means);
  const auto norm = detail::summarize(est.package_norms);
  est.mean = overlap.mean;
  est.package_min = overlap.min;
  est.package_max = overlap.max;
  est.std_error = overlap.std_error;
  est.norm_mean = norm.mean;
  est.norm_min = norm.min;
  est.norm_max = norm.max;
  est.norm_ok = std::abs(est.norm_mean - 1.0) <= config.norm_tolerance;
  est.spread_ok = (est.package_max - est.package_min) < est.mean;
  est.reliable = est.norm_ok && est.spread_ok;
  est.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return est;
}

/// Root seed used for particle count n inside a sweep.
inline std::uint64_t sweep_seed(std::uint64_t root_seed, Family family, int n) noexcept {
  return hash_combine(hash_combine(root_seed, static_cast<std::uint64_t>(family) + 101),
                      static_cast<std::uint64_t>(n));
}

/**
 * One estimate per n in [n_min, n_max], each with its own derived seed. A
 * failing n is recorded as an unreliable entry carrying the error message.
 */
inline DecaySeries sweep(Family family, int n_min, int n_max, const McConfig& config_template,
                         bool swapped = false) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("sweep needs 1 <= n_min <= n_max");
  DecaySeries series;
  series.family = family;
  series.sampler = config_template.sampler;
  for (int n = n_min; n <= n_max; ++n) {
    SweepEntry entry;
    entry.n = n;
    McConfig cfg = config_template;
    cfg.root_seed = sweep_seed(config_template.root_seed, family, n);
    entry.seed = cfg.root_seed;
    try {
      entry.estimate = estimate(IntegralSpec{family, n, estimator_for(cfg.sampler), swapped}, cfg);
    } catch (const std::exception& e) {
      entry.error = e.what();
      entry.estimate.reliable = false;
    }
    series.entries.push_back(std::move(entry));
  }
  return series;
}

}  // namespace fieldoverlap
