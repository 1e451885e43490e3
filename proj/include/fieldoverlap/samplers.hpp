// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file samplers.hpp
 * @brief Random point sets in the reduced space.
 *
 * Three kinds:
 *  - CartesianGaussian: independent coordinates with density e^{-x^2}/sqrt(pi).
 *  - DirectDensity: "slot" coordinates drawn from (2/sqrt(pi)) x^2 e^{-x^2}
 *    (x = +-sqrt(g), g ~ Gamma(3/2, 1)), the others Gaussian as above. The
 *    sample density is then exactly |Psi|^2 of the state whose linear factors
 *    sit on the slots.
 *  - Spherical: radius from r^{d-1} e^{-r^2} by inverse CDF on a tabulated
 *    grid, hyperspherical angles uniform. The Jacobian and the table's
 *    piecewise-constant density are folded into the returned weight, so the
 *    weighted points integrate against the Gaussian measure without bias.
 *
 * Weights are always relative to the Gaussian measure prod e^{-x_i^2}/sqrt(pi).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "fieldoverlap/random.hpp"
#include "fieldoverlap/states.hpp"

namespace fieldoverlap {

enum class SamplerKind { CartesianGaussian, DirectDensity, Spherical };

inline std::string_view to_string(SamplerKind k) noexcept {
  switch (k) {
    case SamplerKind::CartesianGaussian: return "cartesian";
    case SamplerKind::DirectDensity: return "direct";
    case SamplerKind::Spherical: return "spherical";
  }
  return "?";
}

inline std::optional<SamplerKind> parse_sampler(std::string_view s) noexcept {
  if (s == "cartesian") return SamplerKind::CartesianGaussian;
  if (s == "direct") return SamplerKind::DirectDensity;
  if (s == "spherical") return SamplerKind::Spherical;
  return std::nullopt;
}

/// Which coordinates carry the x^2 e^{-x^2} density under DirectDensity.
enum class SlotLayout {
  EvenIndices,  ///< zero-based 0, 2, 4, ... (Psi0 of an nn pair)
  OddIndices,   ///< zero-based 1, 3, 5, ... (Psi1 of an nn pair)
  All,          ///< every coordinate (Psi_n against the vacuum)
  None,         ///< no coordinate (pure vacuum density)
};

inline bool is_slot(SlotLayout layout, std::size_t i) noexcept {
  switch (layout) {
    case SlotLayout::EvenIndices: return i % 2 == 0;
    case SlotLayout::OddIndices: return i % 2 == 1;
    case SlotLayout::All: return true;
    case SlotLayout::None: return false;
  }
  return false;
}

struct WeightedSample {
  ReducedPoint point;
  double density_weight;
};

/**
 * Tabulated radial distribution r^{d-1} e^{-r^2} on [0, r_max]. Cell masses
 * come from composite Simpson integration; within a cell the radius is drawn
 * uniformly, so the actual sampling density is piecewise constant and known
 * exactly.
 */
class RadialTable {
 public:
  static constexpr std::size_t kCells = 4096;

  explicit RadialTable(std::size_t dimension) : dimension_(dimension) {
    if (dimension == 0) throw std::invalid_argument("radial table needs dimension >= 1");
    const double d = static_cast<double>(dimension);
    r_max_ = std::sqrt(0.5 * d) + 7.0;
    h_ = r_max_ / static_cast<double>(kCells);
    cdf_.resize(kCells + 1);
    cdf_[0] = 0.0;
    constexpr int kSub = 4;
    for (std::size_t i = 0; i < kCells; ++i) {
      const double a = static_cast<double>(i) * h_;
      const double s = h_ / kSub;
      double acc = 0.0;
      for (int j = 0; j < kSub; ++j) {
        const double x0 = a + j * s;
        acc += s / 6.0 * (density(x0) + 4.0 * density(x0 + 0.5 * s) + density(x0 + s));
      }
      cdf_[i + 1] = cdf_[i] + acc;
    }
    const double total = cdf_.back();
    for (double& c : cdf_) c /= total;
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] double r_max() const noexcept { return r_max_; }

  /// Exact radial density 2 r^{d-1} e^{-r^2} / Gamma(d/2).
  [[nodiscard]] double density(double r) const noexcept {
    const double d = static_cast<double>(dimension_);
    if (r <= 0.0) return dimension_ == 1 ? 2.0 / std::sqrt(std::numbers::pi) : 0.0;
    return std::exp((d - 1.0) * std::log(r) - r * r - std::lgamma(0.5 * d) + std::numbers::ln2);
  }

  struct Draw {
    double radius;
    double sampling_density;
  };

  /// Inverse CDF for u in (0, 1).
  [[nodiscard]] Draw draw(double u) const noexcept {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t cell = static_cast<std::size_t>(it - cdf_.begin());
    cell = std::clamp<std::size_t>(cell, 1, kCells) - 1;
    const double mass = cdf_[cell + 1] - cdf_[cell];
    const double frac = std::clamp((u - cdf_[cell]) / mass, 0.0, 1.0);
    return {(static_cast<double>(cell) + frac) * h_, mass / h_};
  }

  /// Shared, immutable table per dimension.
  static std::shared_ptr<const RadialTable> for_dimension(std::size_t dimension) {
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const RadialTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[dimension];
    if (!slot) slot = std::make_shared<const RadialTable>(dimension);
    return slot;
  }

 private:
  std::size_t dimension_;
  double r_max_ = 0.0;
  double h_ = 0.0;
  std::vector<double> cdf_;
};

/**
 * One package's reproducible point sequence. The sequence is a pure function
 * of (root_seed, package_index, kind, dimension, layout).
 */
class SampleStream {
 public:
  SampleStream(std::uint64_t root_seed, std::uint64_t package_index, SamplerKind kind,
               std::size_t dimension, SlotLayout layout = SlotLayout::EvenIndices)
      : root_seed_(root_seed),
        package_index_(package_index),
        kind_(kind),
        dimension_(dimension),
        layout_(layout),
        variates_(CounterRng(stream_key(root_seed, kind, dimension, layout), package_index)) {
    if (dimension == 0) throw std::invalid_argument("sample stream needs dimension >= 1");
    if (kind == SamplerKind::Spherical) radial_ = RadialTable::for_dimension(dimension);
  }

  [[nodiscard]] std::uint64_t root_seed() const noexcept { return root_seed_; }
  [[nodiscard]] std::uint64_t package_index() const noexcept { return package_index_; }
  [[nodiscard]] SamplerKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] SlotLayout layout() const noexcept { return layout_; }

  /// Writes the next point into `coords` (size dimension()) and returns its density weight.
  double next(std::span<double> coords) {
    if (coords.size() != dimension_) throw std::invalid_argument("coordinate buffer has wrong dimension");
    switch (kind_) {
      case SamplerKind::CartesianGaussian:
        for (double& c : coords) c = variates_.vacuum_normal();
        return 1.0;
      case SamplerKind::DirectDensity:
        for (std::size_t i = 0; i < dimension_; ++i) {
          if (is_slot(layout_, i)) {
            const double g = variates_.gamma_three_halves();
            coords[i] = variates_.sign() * std::sqrt(g);
          } else {
            coords[i] = variates_.vacuum_normal();
          }
        }
        return 1.0;
      case SamplerKind::Spherical:
        return next_spherical(coords);
    }
    return 1.0;
  }

  WeightedSample next_sample() {
    std::vector<double> coords(dimension_);
    const double w = next(coords);
    return {ReducedPoint(std::move(coords)), w};
  }

 private:
  static std::uint64_t stream_key(std::uint64_t root_seed, SamplerKind kind, std::size_t dimension,
                                  SlotLayout layout) noexcept {
    std::uint64_t k = hash_combine(root_seed, static_cast<std::uint64_t>(kind) + 1);
    k = hash_combine(k, dimension);
    return hash_combine(k, static_cast<std::uint64_t>(layout) + 17);
  }

  double next_spherical(std::span<double> coords) {
    const auto draw = radial_->draw(variates_.uniform());
    const double r = draw.radius;
    double log_weight = std::log(radial_->density(r)) - std::log(draw.sampling_density);
    if (dimension_ == 1) {
      coords[0] = variates_.sign() * r;
      return std::exp(log_weight);
    }
    const std::size_t d = dimension_;
    const double dd = static_cast<double>(d);
    log_weight += std::lgamma(0.5 * dd) + (0.5 * dd - 1.0) * std::log(std::numbers::pi);
    double sin_prod = r;
    for (std::size_t j = 0; j + 2 < d; ++j) {
      const double theta = std::numbers::pi * variates_.uniform();
      coords[j] = sin_prod * std::cos(theta);
      const double s = std::sin(theta);
      sin_prod *= s;
      log_weight += static_cast<double>(d - 2 - j) * std::log(s);
    }
    const double azimuth = 2.0 * std::numbers::pi * variates_.uniform();
    coords[d - 2] = sin_prod * std::cos(azimuth);
    coords[d - 1] = sin_prod * std::sin(azimuth);
    return std::exp(log_weight);
  }

  std::uint64_t root_seed_;
  std::uint64_t package_index_;
  SamplerKind kind_;
  std::size_t dimension_;
  SlotLayout layout_;
  VariateSource variates_;
  std::shared_ptr<const RadialTable> radial_;
};

inline SampleStream split_stream(std::uint64_t root_seed, std::uint64_t package_index, SamplerKind kind,
                                 std::size_t dimension, SlotLayout layout = SlotLayout::EvenIndices) {
  return SampleStream(root_seed, package_index, kind, dimension, layout);
}

/**
 * Second-moment check for DirectDensity points: (1/d) sum_i c_i x_i^2 with
 * c = 2/3 on slot coordinates (E x^2 = 3/2) and c = 2 elsewhere (E x^2 = 1/2).
 * Its expectation is exactly 1 when the sampler is correct.
 */
inline double direct_density_moment_check(std::span<const double> coords, SlotLayout layout) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double c = is_slot(layout, i) ? 2.0 / 3.0 : 2.0;
    acc += c * coords[i] * coords[i];
  }
  return acc / static_cast<double>(coords.size());
}

}  // namespace fieldoverlap
