// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file states.hpp
 * @brief Lattice field configurations, orthonormal mode sets and the
 *        log-domain evaluation of vacuum and n-particle wavefunctionals.
 *
 * The lattice is abstract: a field is a vector of N real amplitudes and no
 * adjacency is modelled. Wavefunctional magnitudes are returned as
 * logarithms, since products of 2n small linear factors underflow quickly.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fieldoverlap/summation.hpp"

namespace fieldoverlap {

class SizeMismatchError : public std::invalid_argument {
 public:
  SizeMismatchError(std::size_t expected, std::size_t got)
      : std::invalid_argument("lattice size mismatch: expected " + std::to_string(expected) +
                              ", got " + std::to_string(got)) {}
};

class DegenerateInputError : public std::invalid_argument {
 public:
  explicit DegenerateInputError(std::size_t index)
      : std::invalid_argument("linearly dependent field at index " + std::to_string(index)),
        index_(index) {}

  [[nodiscard]] std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A real field configuration phi(x) on an N-point lattice.
class LatticeField {
 public:
  explicit LatticeField(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("lattice field must have N >= 1 points");
    for (double v : values_) {
      if (!std::isfinite(v)) throw std::invalid_argument("lattice field values must be finite");
    }
  }

  /// The delta-basis field that is 1 at `site` and 0 elsewhere.
  static LatticeField unit(std::size_t lattice_size, std::size_t site) {
    if (site >= lattice_size) throw std::out_of_range("unit field site outside lattice");
    std::vector<double> v(lattice_size, 0.0);
    v[site] = 1.0;
    return LatticeField(std::move(v));
  }

  [[nodiscard]] std::size_t lattice_size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t x) const { return values_[x]; }

  [[nodiscard]] double norm_squared() const noexcept {
    CompensatedSum acc;
    for (double v : values_) acc.add(v * v);
    return acc.value();
  }

 private:
  std::vector<double> values_;
};

/// Sum over lattice sites of f(x) g(x).
inline double inner_product(const LatticeField& f, const LatticeField& g) {
  if (f.lattice_size() != g.lattice_size()) {
    throw SizeMismatchError(f.lattice_size(), g.lattice_size());
  }
  CompensatedSum acc;
  for (std::size_t x = 0; x < f.lattice_size(); ++x) acc.add(f[x] * g[x]);
  return acc.value();
}

inline constexpr double kDefaultGramTolerance = 1e-10;

/// n pairwise-orthonormal lattice fields. Construction validates the Gram matrix.
class OrthonormalSet {
 public:
  explicit OrthonormalSet(std::vector<LatticeField> modes,
                          double gram_tolerance = kDefaultGramTolerance)
      : modes_(std::move(modes)), gram_tolerance_(gram_tolerance) {
    if (modes_.empty()) throw std::invalid_argument("orthonormal set must contain at least one mode");
    const std::size_t n_sites = modes_.front().lattice_size();
    for (const auto& m : modes_) {
      if (m.lattice_size() != n_sites) throw SizeMismatchError(n_sites, m.lattice_size());
    }
    if (gram_deviation() > gram_tolerance_) {
      throw std::invalid_argument("fields are not orthonormal within tolerance");
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return modes_.size(); }
  [[nodiscard]] std::size_t lattice_size() const noexcept { return modes_.front().lattice_size(); }
  [[nodiscard]] const LatticeField& operator[](std::size_t i) const { return modes_[i]; }
  [[nodiscard]] std::span<const LatticeField> modes() const noexcept { return modes_; }
  [[nodiscard]] double gram_tolerance() const noexcept { return gram_tolerance_; }

  /// Row-major size() x size() matrix of inner products.
  [[nodiscard]] std::vector<double> gram_matrix() const {
    const std::size_t n = modes_.size();
    std::vector<double> g(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        g[i * n + j] = g[j * n + i] = inner_product(modes_[i], modes_[j]);
      }
    }
    return g;
  }

  /// max_ij |<psi_i, psi_j> - delta_ij|
  [[nodiscard]] double gram_deviation() const {
    const std::size_t n = modes_.size();
    const auto g = gram_matrix();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        worst = std::max(worst, std::abs(g[i * n + j] - (i == j ? 1.0 : 0.0)));
      }
    }
    return worst;
  }

 private:
  std::vector<LatticeField> modes_;
  double gram_tolerance_;
};

/**
 * Modified Gram-Schmidt with one re-orthogonalization pass.
 *
 * A field whose residual norm (relative to its original norm) falls below
 * `drop_threshold` is reported as degenerate; the error names its index.
 */
inline OrthonormalSet orthonormalize(std::span<const LatticeField> fields,
                                     double tolerance = kDefaultGramTolerance,
                                     double drop_threshold = 1e-10) {
  if (fields.empty()) throw std::invalid_argument("no fields to orthonormalize");
  const std::size_t n_sites = fields.front().lattice_size();
  std::vector<std::vector<double>> basis;
  basis.reserve(fields.size());

  for (std::size_t idx = 0; idx < fields.size(); ++idx) {
    const auto& field = fields[idx];
    if (field.lattice_size() != n_sites) throw SizeMismatchError(n_sites, field.lattice_size());
    std::vector<double> v(field.values().begin(), field.values().end());
    const double original_norm = std::sqrt(field.norm_squared());
    if (original_norm == 0.0) throw DegenerateInputError(idx);

    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        CompensatedSum dot;
        for (std::size_t x = 0; x < n_sites; ++x) dot.add(q[x] * v[x]);
        const double c = dot.value();
        for (std::size_t x = 0; x < n_sites; ++x) v[x] -= c * q[x];
      }
    }
    CompensatedSum nrm;
    for (double a : v) nrm.add(a * a);
    const double residual = std::sqrt(nrm.value());
    if (residual <= drop_threshold * original_norm) throw DegenerateInputError(idx);
    for (double& a : v) a /= residual;
    basis.push_back(std::move(v));
  }

  std::vector<LatticeField> modes;
  modes.reserve(basis.size());
  for (auto& b : basis) modes.emplace_back(std::move(b));
  return OrthonormalSet(std::move(modes), tolerance);
}

/**
 * Orders two mode sets {psi0_k} and {psi1_k} as psi0_1, psi1_1, psi0_2, ...
 * so that reduced coordinate 2k holds <psi0_k, phi> and 2k+1 holds
 * <psi1_k, phi> (zero-based). The union must be orthonormal.
 */
inline OrthonormalSet interleave_pairs(const OrthonormalSet& first, const OrthonormalSet& second) {
  if (first.size() != second.size()) {
    throw std::invalid_argument("paired mode sets must have the same particle count");
  }
  std::vector<LatticeField> modes;
  modes.reserve(2 * first.size());
  for (std::size_t k = 0; k < first.size(); ++k) {
    modes.push_back(first[k]);
    modes.push_back(second[k]);
  }
  return OrthonormalSet(std::move(modes), std::max(first.gram_tolerance(), second.gram_tolerance()));
}

/// Coordinates of a sample in the reduced integration space.
class ReducedPoint {
 public:
  explicit ReducedPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    for (double c : coords_) {
      if (!std::isfinite(c)) throw std::invalid_argument("reduced coordinates must be finite");
    }
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return coords_.size(); }
  [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
  [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }

 private:
  std::vector<double> coords_;
};

/// coords[i] = <basis_i, phi>
inline ReducedPoint project_to_reduced(const LatticeField& phi, const OrthonormalSet& basis) {
  if (phi.lattice_size() != basis.lattice_size()) {
    throw SizeMismatchError(basis.lattice_size(), phi.lattice_size());
  }
  std::vector<double> coords;
  coords.reserve(basis.size());
  for (const auto& mode : basis.modes()) coords.push_back(inner_product(mode, phi));
  return ReducedPoint(std::move(coords));
}

enum class StateKind { Vacuum, NParticle };

/**
 * Vacuum or n-particle product state. `slots` lists which reduced coordinates
 * (equivalently, which modes of the basis) carry the linear factors
 * sqrt(2) <psi_k, phi>.
 */
class ProductState {
 public:
  static ProductState vacuum() { return ProductState(StateKind::Vacuum, {}); }

  static ProductState n_particle(std::vector<std::size_t> slots) {
    if (slots.empty()) throw std::invalid_argument("n-particle state needs n >= 1 slots");
    auto sorted = slots;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("n-particle state slots must be distinct");
    }
    return ProductState(StateKind::NParticle, std::move(slots));
  }

  /// Slots 0..n-1: an n-particle state compared against the vacuum.
  static ProductState leading(std::size_t n) {
    std::vector<std::size_t> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = k;
    return n_particle(std::move(s));
  }

  /// Slots with parity `which` in an interleaved pair basis: 0 -> 0,2,4..., 1 -> 1,3,5...
  static ProductState interleaved(std::size_t n, int which) {
    if (which != 0 && which != 1) throw std::invalid_argument("interleaved state index must be 0 or 1");
    std::vector<std::size_t> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = 2 * k + static_cast<std::size_t>(which);
    return n_particle(std::move(s));
  }

  [[nodiscard]] StateKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t particle_count() const noexcept { return slots_.size(); }
  [[nodiscard]] std::span<const std::size_t> slots() const noexcept { return slots_; }
  [[nodiscard]] std::size_t min_dimension() const noexcept {
    return slots_.empty() ? 0 : *std::max_element(slots_.begin(), slots_.end()) + 1;
  }

 private:
  ProductState(StateKind kind, std::vector<std::size_t> slots)
      : kind_(kind), slots_(std::move(slots)) {}

  StateKind kind_;
  std::vector<std::size_t> slots_;
};

struct LogAmplitude {
  double log_magnitude;  ///< log|Psi|, -infinity when a slot factor vanishes
  int sign;              ///< sign of the product of linear factors; +1 at zeros
};

namespace detail {

inline LogAmplitude log_amplitude(std::span<const double> slot_values, double norm_squared,
                                  std::size_t dimension) {
  const double n = static_cast<double>(slot_values.size());
  double log_mag = 0.5 * n * std::numbers::ln2 - 0.5 * norm_squared -
                   0.25 * static_cast<double>(dimension) * std::log(std::numbers::pi);
  int sign = 1;
  for (double v : slot_values) {
    if (v == 0.0) return {-std::numeric_limits<double>::infinity(), 1};
    log_mag += std::log(std::abs(v));
    if (v < 0.0) sign = -sign;
  }
  return {log_mag, sign};
}

}  // namespace detail

/**
 * log|Psi(phi)| on reduced coordinates:
 * (n/2) log 2 + sum_k log|phi_slot(k)| - (1/2) sum_i phi_i^2 - (d/4) log pi.
 * The vacuum factor is the normalized Gaussian over all d coordinates.
 */
inline LogAmplitude log_abs_psi(const ProductState& state, const ReducedPoint& point) {
  if (point.dimension() < state.min_dimension()) {
    throw std::invalid_argument("reduced point does not cover the state's slots");
  }
  std::vector<double> slot_values;
  slot_values.reserve(state.particle_count());
  for (std::size_t s : state.slots()) slot_values.push_back(point[s]);
  CompensatedSum sq;
  for (double c : point.coords()) sq.add(c * c);
  return detail::log_amplitude(slot_values, sq.value(), point.dimension());
}

/**
 * The same wavefunctional evaluated on the full lattice: slot k refers to
 * modes[slot_k], and the vacuum factor runs over all N lattice sites.
 */
inline LogAmplitude log_abs_psi(const ProductState& state, const OrthonormalSet& modes,
                                const LatticeField& phi) {
  if (modes.size() < state.min_dimension()) {
    throw std::invalid_argument("mode set does not cover the state's slots");
  }
  if (phi.lattice_size() != modes.lattice_size()) {
    throw SizeMismatchError(modes.lattice_size(), phi.lattice_size());
  }
  std::vector<double> slot_values;
  slot_values.reserve(state.particle_count());
  for (std::size_t s : state.slots()) slot_values.push_back(inner_product(modes[s], phi));
  return detail::log_amplitude(slot_values, phi.norm_squared(), phi.lattice_size());
}

}  // namespace fieldoverlap
