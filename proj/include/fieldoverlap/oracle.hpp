// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oracle.hpp
 * @brief Deterministic cross-checks for the Monte Carlo estimates: closed
 *        forms, tensor-product quadrature of the reduced integrals for small
 *        n, and the locations of the wavefunctional maxima.
 *
 * Quadrature layout: every integrand is even in each coordinate, so the first
 * d-1 axes use a midpoint rule on the half axis [0, R] with mirrored weights.
 * Along the last axis the indicator is a threshold on |x_d|, and the 1D
 * integral over it is taken in closed form (erf/erfc). The indicator
 * discontinuity therefore never cuts through a quadrature cell.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "fieldoverlap/overlap.hpp"
#include "fieldoverlap/states.hpp"
#include "fieldoverlap/summation.hpp"

namespace fieldoverlap {

/// rho_1 = 1/2 - 1/pi, from polar coordinates of the n = 1 reduced integral.
inline double rho1_closed_form() noexcept { return 0.5 - 1.0 / std::numbers::pi; }

/// rho(Psi_vac | Psi_1): Gaussian mass of e^{-x^2}/sqrt(pi) beyond |x| = 1/sqrt(2).
inline double vac_below_one_particle_closed_form() noexcept { return std::erfc(1.0 / std::numbers::sqrt2); }

/// mass of (2/sqrt(pi)) x^2 e^{-x^2} on |x| <= a
inline double slot_mass_inside(double a) noexcept {
  if (std::isinf(a)) return 1.0;
  return std::erf(a) - 2.0 / std::sqrt(std::numbers::pi) * a * std::exp(-a * a);
}

/// rho(Psi_1 | Psi_vac)
inline double one_particle_below_vac_closed_form() noexcept {
  return slot_mass_inside(1.0 / std::numbers::sqrt2);
}

enum class IndicatorMode {
  Region,      ///< the overlap integral itself
  Complement,  ///< the integral over the complementary region
  Ignore,      ///< no indicator: the norm, exactly 1
};

inline constexpr double kQuadratureRadius = 7.0;
inline constexpr int kMinQuadratureNodes = 32;

struct QuadratureResult {
  double value = 0.0;
  double refinement_delta = 0.0;  ///< |value(nodes) - value(nodes / 2)|
  int nodes_per_axis = 0;
};

inline void check_quadrature_dimension(const IntegralSpec& spec) {
  spec.validate();
  const int limit = spec.family == Family::NN ? 3 : 6;
  if (spec.n > limit) {
    throw std::invalid_argument("dimension too large for tensor quadrature (n = " + std::to_string(spec.n) +
                                ", limit " + std::to_string(limit) + ")");
  }
}

/**
 * Tensor quadrature at a fixed resolution. `nodes_per_axis` counts midpoint
 * nodes on the full axis [-R, R]; it is rounded down to an even number.
 */
inline double quadrature_value(const IntegralSpec& spec, int nodes_per_axis,
                               IndicatorMode mode = IndicatorMode::Region,
                               double radius = kQuadratureRadius) {
  check_quadrature_dimension(spec);
  if (nodes_per_axis < 2) throw std::invalid_argument("quadrature needs at least 2 nodes per axis");
  const std::size_t d = spec.dimension();
  const std::size_t half = static_cast<std::size_t>(nodes_per_axis / 2);
  const double h = radius / static_cast<double>(half);
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);

  // Mirrored cell weights times the normalized 1D densities.
  std::vector<double> gauss_w(half), slot_w(half), log_sq(half);
  for (std::size_t i = 0; i < half; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * h;
    const double g = inv_sqrt_pi * std::exp(-x * x);
    gauss_w[i] = 2.0 * h * g;
    slot_w[i] = 2.0 * h * 2.0 * x * x * g;
    log_sq[i] = 2.0 * std::log(x);
  }

  // Per outer axis: density table and the sign with which log x^2 enters the
  // threshold variable `tau` on the last axis.
  struct Axis {
    const std::vector<double>* weights;
    double log_coeff;
  };
  std::vector<Axis> axes;
  double tau0 = 0.0;
  std::function<double(double)> inner;

  switch (spec.family) {
    case Family::NN: {
      // Condition: log x_last^2 >= sum_own log x^2 - sum_{other outer} log x^2.
      for (std::size_t i = 0; i + 1 < d; ++i) {
        const bool own = (i % 2 == 0);
        axes.push_back({own ? &slot_w : &gauss_w, own ? 1.0 : -1.0});
      }
      inner = [mode](double tau) {
        const double t = std::exp(0.5 * tau);
        switch (mode) {
          case IndicatorMode::Region: return std::erfc(t);
          case IndicatorMode::Complement: return std::erf(t);
          case IndicatorMode::Ignore: return 1.0;
        }
        return 0.0;
      };
      break;
    }
    case Family::NVac: {
      // Condition: log x_last^2 <= -n log 2 - sum_outer log x^2.
      for (std::size_t i = 0; i + 1 < d; ++i) axes.push_back({&slot_w, -1.0});
      tau0 = -static_cast<double>(spec.n) * std::numbers::ln2;
      inner = [mode](double tau) {
        const double a = std::exp(0.5 * tau);
        switch (mode) {
          case IndicatorMode::Region: return slot_mass_inside(a);
          case IndicatorMode::Complement: return 1.0 - slot_mass_inside(a);
          case IndicatorMode::Ignore: return 1.0;
        }
        return 0.0;
      };
      break;
    }
    case Family::VacN: {
      // Condition: log x_last^2 > -n log 2 - sum_outer log x^2.
      for (std::size_t i = 0; i + 1 < d; ++i) axes.push_back({&gauss_w, -1.0});
      tau0 = -static_cast<double>(spec.n) * std::numbers::ln2;
      inner = [mode](double tau) {
        const double a = std::exp(0.5 * tau);
        switch (mode) {
          case IndicatorMode::Region: return std::erfc(a);
          case IndicatorMode::Complement: return std::erf(a);
          case IndicatorMode::Ignore: return 1.0;
        }
        return 0.0;
      };
      break;
    }
  }

  CompensatedSum total;
  std::function<void(std::size_t, double, double)> recurse = [&](std::size_t depth, double weight,
                                                                 double tau) {
    if (depth == axes.size()) {
      total.add(weight * inner(tau));
      return;
    }
    const auto& axis = axes[depth];
    if (depth + 1 == axes.size()) {
      double row = 0.0;
      for (std::size_t i = 0; i < half; ++i) {
        row += weight * (*axis.weights)[i] * inner(tau + axis.log_coeff * log_sq[i]);
      }
      total.add(row);
      return;
    }
    for (std::size_t i = 0; i < half; ++i) {
      recurse(depth + 1, weight * (*axis.weights)[i], tau + axis.log_coeff * log_sq[i]);
    }
  };
  recurse(0, 1.0, tau0);
  return total.value();
}

/// Quadrature with a refinement error proxy from the half-resolution rule.
inline QuadratureResult quadrature_rho(const IntegralSpec& spec, int nodes_per_axis,
                                       IndicatorMode mode = IndicatorMode::Region) {
  if (nodes_per_axis < kMinQuadratureNodes) {
    throw std::invalid_argument("quadrature needs at least 32 nodes per axis");
  }
  QuadratureResult r;
  r.nodes_per_axis = nodes_per_axis;
  r.value = quadrature_value(spec, nodes_per_axis, mode);
  r.refinement_delta = std::abs(r.value - quadrature_value(spec, nodes_per_axis / 2, mode));
  return r;
}

/// Distance between the maxima of the two compared states.
inline double maxima_distance(Family family, int n) {
  if (n < 1) throw std::invalid_argument("particle count n must be >= 1");
  return family == Family::NN ? std::sqrt(2.0 * n) : std::sqrt(static_cast<double>(n));
}

/**
 * Distance from `point` to the nearest maximum of |Psi|: maxima sit at +-1 in
 * every slot coordinate and at 0 in every other coordinate.
 */
inline double distance_to_nearest_maximum(const ProductState& state, std::span<const double> point) {
  std::vector<bool> slot(point.size(), false);
  for (std::size_t s : state.slots()) {
    if (s >= point.size()) throw std::invalid_argument("point does not cover the state's slots");
    slot[s] = true;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double dev = slot[i] ? std::abs(point[i]) - 1.0 : point[i];
    acc += dev * dev;
  }
  return std::sqrt(acc);
}

/// One maximum of |Psi| in `dimension` reduced coordinates (all slot signs +).
inline std::vector<double> canonical_maximum(const ProductState& state, std::size_t dimension) {
  std::vector<double> m(dimension, 0.0);
  for (std::size_t s : state.slots()) {
    if (s >= dimension) throw std::invalid_argument("dimension does not cover the state's slots");
    m[s] = 1.0;
  }
  return m;
}

/**
 * Compass search maximizing log|Psi| from `start`. The step halves whenever
 * no coordinate move improves the objective; stops below `min_step`.
 */
inline std::vector<double> hill_climb_maximum(const ProductState& state, std::vector<double> start,
                                              double initial_step = 0.25, double min_step = 1e-10) {
  auto objective = [&](const std::vector<double>& x) {
    return log_abs_psi(state, ReducedPoint(x)).log_magnitude;
  };
  double best = objective(start);
  double step = initial_step;
  while (step >= min_step) {
    bool improved = false;
    for (std::size_t i = 0; i < start.size(); ++i) {
      for (double dir : {1.0, -1.0}) {
        const double saved = start[i];
        start[i] = saved + dir * step;
        const double value = objective(start);
        if (value > best) {
          best = value;
          improved = true;
          break;
        }
        start[i] = saved;
      }
    }
    if (!improved) step *= 0.5;
  }
  return start;
}

}  // namespace fieldoverlap
