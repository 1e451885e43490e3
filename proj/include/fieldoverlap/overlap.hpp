// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file overlap.hpp
 * @brief The overlap functional, the non-overlapping splitter on grids, and
 *        the reduced integrands for the three integral families.
 *
 * Families:
 *  - NN:   rho(Psi0_n | Psi1_n) between two orthogonal n-particle states, in
 *          2n reduced coordinates (even zero-based indices belong to Psi0).
 *  - NVac: rho(Psi_n | Psi_vac), in n coordinates.
 *  - VacN: rho(Psi_vac | Psi_n), in n coordinates.
 *
 * Every integrand is written relative to the Gaussian measure
 * prod_i e^{-phi_i^2} / sqrt(pi). Ties |Psi0| = |Psi1| are assigned to the
 * region where index 1 survives.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fieldoverlap/states.hpp"
#include "fieldoverlap/summation.hpp"

namespace fieldoverlap {

enum class Family { NN, NVac, VacN };
enum class Estimator { ImportanceWeighted, DirectDensity };

inline std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::NN: return "nn";
    case Family::NVac: return "nvac";
    case Family::VacN: return "vacn";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view s) noexcept {
  if (s == "nn") return Family::NN;
  if (s == "nvac") return Family::NVac;
  if (s == "vacn") return Family::VacN;
  return std::nullopt;
}

/// Which integral to estimate. `swapped` (NN only) computes rho(Psi1|Psi0).
struct IntegralSpec {
  Family family = Family::NN;
  int n = 1;
  Estimator estimator = Estimator::ImportanceWeighted;
  bool swapped = false;

  [[nodiscard]] std::size_t dimension() const noexcept {
    return family == Family::NN ? 2 * static_cast<std::size_t>(n) : static_cast<std::size_t>(n);
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("particle count n must be >= 1");
    if (swapped && family != Family::NN) {
      throw std::invalid_argument("role swap applies to the nn family only");
    }
  }
};

namespace detail {

/// sum over k of log phi_{2k+parity}^2
inline double log_square_sum(std::span<const double> x, std::size_t parity) noexcept {
  double s = 0.0;
  for (std::size_t i = parity; i < x.size(); i += 2) s += 2.0 * std::log(std::abs(x[i]));
  return s;
}

inline double log_square_sum(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += 2.0 * std::log(std::abs(v));
  return s;
}

inline void require_even(std::span<const double> x) {
  if (x.empty() || x.size() % 2 != 0) {
    throw std::invalid_argument("nn integrand needs an even, nonzero dimension");
  }
}

}  // namespace detail

struct IndicatorWeight {
  bool indicator;
  double weight;
};

/**
 * Indicator and weight of the nn integrand from one pass over the logs.
 *
 * indicator: prod_k phi_{2k-1}^2 <= prod_k phi_{2k}^2 (one-based), compared
 * in log domain. A zero odd coordinate gives true; a zero even coordinate
 * with all odd coordinates nonzero gives false.
 * weight: 2^n prod_k phi_{2k-1}^2, i.e. |Psi0|^2 relative to the Gaussian
 * measure.
 *
 * With `swapped`, the roles of odd and even coordinates are exchanged.
 */
inline IndicatorWeight evaluate_nn(std::span<const double> x, bool swapped = false) {
  detail::require_even(x);
  const std::size_t own = swapped ? 1 : 0;
  const double log_own = detail::log_square_sum(x, own);
  const double log_other = detail::log_square_sum(x, 1 - own);
  const double n = static_cast<double>(x.size() / 2);
  return {log_own <= log_other, std::exp(n * std::numbers::ln2 + log_own)};
}

inline bool indicator_nn(std::span<const double> x, bool swapped = false) {
  detail::require_even(x);
  const std::size_t own = swapped ? 1 : 0;
  return detail::log_square_sum(x, own) <= detail::log_square_sum(x, 1 - own);
}

inline bool indicator_nn(const ReducedPoint& x) { return indicator_nn(x.coords()); }

inline double weight_nn(std::span<const double> x, bool swapped = false) {
  detail::require_even(x);
  const double n = static_cast<double>(x.size() / 2);
  return std::exp(n * std::numbers::ln2 + detail::log_square_sum(x, swapped ? 1 : 0));
}

inline double weight_nn(const ReducedPoint& x) { return weight_nn(x.coords()); }

enum class VacDirection {
  StateBelowVac,  ///< rho(Psi_n | Psi_vac)
  VacBelowState,  ///< rho(Psi_vac | Psi_n)
};

/**
 * |Psi_n| <= |Psi_vac| reduces to 2^n prod phi_k^2 <= 1. StateBelowVac
 * integrates |Psi_n|^2 (weight 2^n prod phi_k^2) over that region;
 * VacBelowState integrates |Psi_vac|^2 (weight 1) over its complement.
 */
inline IndicatorWeight indicator_weight_nvac(std::span<const double> x, VacDirection direction) {
  if (x.empty()) throw std::invalid_argument("nvac integrand needs dimension n >= 1");
  const double log_ratio = static_cast<double>(x.size()) * std::numbers::ln2 + detail::log_square_sum(x);
  const bool state_below = log_ratio <= 0.0;
  if (direction == VacDirection::StateBelowVac) return {state_below, std::exp(log_ratio)};
  return {!state_below, 1.0};
}

inline IndicatorWeight indicator_weight_nvac(const ReducedPoint& x, VacDirection direction) {
  return indicator_weight_nvac(x.coords(), direction);
}

/**
 * Two amplitude functions sampled on a common 1D grid with per-node
 * quadrature weights.
 */
class GridFunctionPair {
 public:
  GridFunctionPair(std::vector<double> grid, std::vector<double> f0, std::vector<double> f1,
                   std::vector<double> cell_weights)
      : grid_(std::move(grid)), f0_(std::move(f0)), f1_(std::move(f1)), weights_(std::move(cell_weights)) {
    const std::size_t m = grid_.size();
    if (m == 0) throw std::invalid_argument("grid must contain at least one node");
    if (f0_.size() != m || f1_.size() != m || weights_.size() != m) {
      throw std::invalid_argument("grid, f0, f1 and cell weights must have equal lengths");
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i > 0 && !(grid_[i] > grid_[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
      if (!(weights_[i] > 0.0)) throw std::invalid_argument("cell weights must be positive");
      if (!std::isfinite(f0_[i]) || !std::isfinite(f1_[i])) {
        throw std::invalid_argument("grid amplitudes must be finite");
      }
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return grid_.size(); }
  [[nodiscard]] std::span<const double> grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> f0() const noexcept { return f0_; }
  [[nodiscard]] std::span<const double> f1() const noexcept { return f1_; }
  [[nodiscard]] std::span<const double> function(int which) const {
    check_index(which);
    return which == 0 ? std::span<const double>(f0_) : std::span<const double>(f1_);
  }
  [[nodiscard]] std::span<const double> cell_weights() const noexcept { return weights_; }

  static void check_index(int which) {
    if (which != 0 && which != 1) throw std::invalid_argument("function index must be 0 or 1");
  }

 private:
  std::vector<double> grid_;
  std::vector<double> f0_;
  std::vector<double> f1_;
  std::vector<double> weights_;
};

/// Cell centres and widths of a uniform midpoint grid with `cells` cells on [lo, hi].
struct Grid1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline Grid1D midpoint_grid(double lo, double hi, std::size_t cells) {
  if (!(hi > lo) || cells == 0 || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("midpoint grid needs lo < hi and at least one cell");
  }
  Grid1D g;
  const double h = (hi - lo) / static_cast<double>(cells);
  g.nodes.resize(cells);
  g.weights.assign(cells, h);
  for (std::size_t i = 0; i < cells; ++i) g.nodes[i] = lo + (static_cast<double>(i) + 0.5) * h;
  return g;
}

/// True where f_which is cut to zero by the splitter.
inline bool is_cut(double own, double other, int which) noexcept {
  return which == 0 ? std::abs(own) <= std::abs(other) : std::abs(own) < std::abs(other);
}

struct SplitPair {
  std::vector<double> f0;
  std::vector<double> f1;
};

/// Keeps, at every node, only the function with the larger magnitude.
inline SplitPair split_nonoverlapping(const GridFunctionPair& pair) {
  SplitPair out{std::vector<double>(pair.size()), std::vector<double>(pair.size())};
  const auto f0 = pair.f0();
  const auto f1 = pair.f1();
  for (std::size_t i = 0; i < pair.size(); ++i) {
    out.f0[i] = is_cut(f0[i], f1[i], 0) ? 0.0 : f0[i];
    out.f1[i] = is_cut(f1[i], f0[i], 1) ? 0.0 : f1[i];
  }
  return out;
}

/**
 * rho(f_which | f_other): quadrature of |f_which|^2 over the nodes where the
 * splitter removes f_which. For which = 0 this is the region |f0| <= |f1|;
 * for which = 1 the region |f1| < |f0|.
 */
inline double overlap_from_grid(const GridFunctionPair& pair, int which) {
  GridFunctionPair::check_index(which);
  const auto own = pair.function(which);
  const auto other = pair.function(1 - which);
  const auto w = pair.cell_weights();
  CompensatedSum acc;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    if (is_cut(own[i], other[i], which)) acc.add(own[i] * own[i] * w[i]);
  }
  return acc.value();
}

/// Weighted squared norm of a grid amplitude array.
inline double grid_norm_squared(std::span<const double> f, std::span<const double> weights) {
  if (f.size() != weights.size()) throw std::invalid_argument("amplitude and weight lengths differ");
  CompensatedSum acc;
  for (std::size_t i = 0; i < f.size(); ++i) acc.add(f[i] * f[i] * weights[i]);
  return acc.value();
}

/**
 * Abscissae where survival switches between f0 and f1, located by linear
 * interpolation of log|f0| - log|f1| between adjacent nodes.
 */
inline std::vector<double> split_points(const GridFunctionPair& pair) {
  std::vector<double> points;
  const auto x = pair.grid();
  const auto f0 = pair.f0();
  const auto f1 = pair.f1();
  auto log_gap = [&](std::size_t i) { return std::log(std::abs(f0[i])) - std::log(std::abs(f1[i])); };
  for (std::size_t i = 1; i < pair.size(); ++i) {
    if (is_cut(f0[i - 1], f1[i - 1], 0) == is_cut(f0[i], f1[i], 0)) continue;
    const double a = log_gap(i - 1);
    const double b = log_gap(i);
    if (std::isfinite(a) && std::isfinite(b) && a != b) {
      points.push_back(x[i - 1] + (x[i] - x[i - 1]) * a / (a - b));
    } else {
      points.push_back(0.5 * (x[i - 1] + x[i]));
    }
  }
  return points;
}

}  // namespace fieldoverlap
