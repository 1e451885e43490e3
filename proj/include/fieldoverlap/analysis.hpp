// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file analysis.hpp
 * @brief Decay-law fits of overlap series.
 *
 * The overlap is fitted as a b^{-n} by weighted least squares on log rho_n.
 * Residuals of the alternative a c^{-sqrt(n)} model are reported as well;
 * which law is correct is left to the reader.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fieldoverlap/mc_types.hpp"
#include "fieldoverlap/overlap.hpp"

namespace fieldoverlap {

struct SweepEntry {
  int n = 0;
  std::uint64_t seed = 0;
  McEstimate estimate;
  std::optional<std::string> error;
};

struct DecaySeries {
  Family family = Family::NN;
  SamplerKind sampler = SamplerKind::CartesianGaussian;
  std::vector<SweepEntry> entries;

  /// Entries must be sorted by n with unique n.
  void validate() const {
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (entries[i].n <= entries[i - 1].n) {
        throw std::invalid_argument("decay series entries must be sorted by unique n");
      }
    }
  }
};

/// Weighted least-squares line y = intercept + slope * x.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double residual_rms = 0.0;  ///< unweighted RMS of y - fit
};

inline LineFit weighted_line_fit(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> w) {
  if (x.size() != y.size() || x.size() != w.size() || x.size() < 2) {
    throw std::invalid_argument("line fit needs at least two equally sized samples");
  }
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double xm = sx / sw;
  const double ym = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - xm) * (x[i] - xm);
    sxy += w[i] * (x[i] - xm) * (y[i] - ym);
  }
  if (sxx <= 0.0) throw std::invalid_argument("line fit needs at least two distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  double rr = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    rr += r * r;
  }
  fit.residual_rms = std::sqrt(rr / static_cast<double>(x.size()));
  return fit;
}

struct StepRate {
  int n;        ///< ratio rho_n / rho_{n+1}
  double rate;
};

struct DecayFit {
  double rate_b = 0.0;         ///< rho_n ~ A b^{-n}
  double intercept = 0.0;      ///< log A
  double residual_rms = 0.0;   ///< in log rho
  double sqrt_rate_c = 0.0;    ///< alternative rho_n ~ A' c^{-sqrt(n)}
  double sqrt_intercept = 0.0;
  double sqrt_residual_rms = 0.0;
  std::vector<StepRate> per_step_rates;
  int entries_used = 0;
  int entries_excluded = 0;    ///< unreliable entries skipped inside [min_n, max_n]
  bool weighted = false;       ///< false when some entry had no error estimate
};

/**
 * Fits log rho_n against n over the reliable entries with n in [min_n, max_n].
 * Weights are (mean / error)^2 with error = McEstimate::error_halfwidth(); if
 * any used entry has zero error the fit is unweighted.
 */
inline DecayFit fit_decay(const DecaySeries& series, int min_n, int max_n) {
  series.validate();
  std::vector<double> ns, sqrt_ns, logs, weights, means;
  std::vector<int> used_n;
  DecayFit fit;
  bool all_have_errors = true;
  for (const auto& e : series.entries) {
    if (e.n < min_n || e.n > max_n) continue;
    if (!e.estimate.reliable || e.error) {
      ++fit.entries_excluded;
      continue;
    }
    const double m = e.estimate.mean;
    if (!(m > 0.0)) throw std::invalid_argument("non-positive mean at n = " + std::to_string(e.n));
    const double err = e.estimate.error_halfwidth();
    if (!(err > 0.0)) all_have_errors = false;
    ns.push_back(static_cast<double>(e.n));
    sqrt_ns.push_back(std::sqrt(static_cast<double>(e.n)));
    logs.push_back(std::log(m));
    weights.push_back(err > 0.0 ? (m / err) * (m / err) : 1.0);
    means.push_back(m);
    used_n.push_back(e.n);
  }
  if (ns.size() < 3) throw std::invalid_argument("decay fit needs at least 3 reliable entries");
  if (!all_have_errors) weights.assign(weights.size(), 1.0);
  fit.weighted = all_have_errors;
  fit.entries_used = static_cast<int>(ns.size());

  const auto exp_fit = weighted_line_fit(ns, logs, weights);
  fit.rate_b = std::exp(-exp_fit.slope);
  fit.intercept = exp_fit.intercept;
  fit.residual_rms = exp_fit.residual_rms;

  const auto sqrt_fit = weighted_line_fit(sqrt_ns, logs, weights);
  fit.sqrt_rate_c = std::exp(-sqrt_fit.slope);
  fit.sqrt_intercept = sqrt_fit.intercept;
  fit.sqrt_residual_rms = sqrt_fit.residual_rms;

  for (std::size_t i = 0; i + 1 < used_n.size(); ++i) {
    if (used_n[i + 1] == used_n[i] + 1) fit.per_step_rates.push_back({used_n[i], means[i] / means[i + 1]});
  }
  return fit;
}

}  // namespace fieldoverlap
