// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file report.hpp
 * @brief CSV/JSON result rows and the SVG log plot of overlap series.
 */

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fieldoverlap/analysis.hpp"
#include "fieldoverlap/mc_types.hpp"
#include "fieldoverlap/overlap.hpp"
#include "fieldoverlap/samplers.hpp"

namespace fieldoverlap {

/// Shortest round-trip decimal form; bit-stable across runs.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline constexpr std::string_view kCsvHeader =
    "family,n,sampler,samples,packages,seed,mean,err_lo,err_hi,std_error,norm_mean,reliable,"
    "oracle_value,oracle_delta,wall_time_s";

struct ResultRow {
  Family family = Family::NN;
  int n = 1;
  SamplerKind sampler = SamplerKind::CartesianGaussian;
  std::uint64_t seed = 0;
  std::optional<McEstimate> estimate;  ///< empty when the run failed
  std::optional<double> oracle_value;
  std::optional<double> oracle_delta;
  bool include_timing = true;
};

inline ResultRow make_row(const SweepEntry& entry, Family family, SamplerKind sampler) {
  ResultRow row;
  row.family = family;
  row.n = entry.n;
  row.sampler = sampler;
  row.seed = entry.seed;
  if (!entry.error) row.estimate = entry.estimate;
  return row;
}

/// err_lo / err_hi are the package minimum and maximum.
inline std::string csv_line(const ResultRow& row) {
  std::ostringstream os;
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  os << to_string(row.family) << ',' << row.n << ',' << to_string(row.sampler) << ',';
  if (row.estimate) {
    const auto& e = *row.estimate;
    os << e.samples_used << ',' << e.packages << ',' << row.seed << ',' << format_double(e.mean) << ','
       << format_double(e.package_min) << ',' << format_double(e.package_max) << ','
       << format_double(e.std_error) << ',' << format_double(e.norm_mean) << ','
       << (e.reliable ? "true" : "false") << ',';
  } else {
    os << ",," << row.seed << ",,,,,,false,";
  }
  os << opt(row.oracle_value) << ',' << opt(row.oracle_delta) << ',';
  if (row.include_timing && row.estimate) os << format_double(row.estimate->wall_time_seconds);
  return os.str();
}

inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) os << csv_line(r) << '\n';
}

inline nlohmann::json json_row(const ResultRow& row) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j;
  j["family"] = std::string(to_string(row.family));
  j["n"] = row.n;
  j["sampler"] = std::string(to_string(row.sampler));
  j["seed"] = row.seed;
  if (row.estimate) {
    const auto& e = *row.estimate;
    j["samples"] = e.samples_used;
    j["packages"] = e.packages;
    j["mean"] = e.mean;
    j["err_lo"] = e.package_min;
    j["err_hi"] = e.package_max;
    j["std_error"] = e.std_error;
    j["norm_mean"] = e.norm_mean;
    j["reliable"] = e.reliable;
    j["wall_time_s"] = row.include_timing ? json(e.wall_time_seconds) : json(nullptr);
  } else {
    for (const char* key : {"samples", "packages", "mean", "err_lo", "err_hi", "std_error", "norm_mean",
                            "wall_time_s"}) {
      j[key] = nullptr;
    }
    j["reliable"] = false;
  }
  j["oracle_value"] = opt(row.oracle_value);
  j["oracle_delta"] = opt(row.oracle_delta);
  return j;
}

inline nlohmann::json json_rows(const std::vector<ResultRow>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(json_row(r));
  return arr;
}

/**
 * Log-scale plot of one or more overlap series: overlap means with min/max
 * bars, and the norm check plotted as a second curve near 10^0. NN series
 * use boxes, vacuum comparisons triangles; filled markers mark reliable runs.
 */
inline std::string render_svg(const std::vector<DecaySeries>& series_list) {
  constexpr double kWidth = 720, kHeight = 480;
  constexpr double kLeft = 80, kRight = 30, kTop = 30, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  int n_lo = 1, n_hi = 1;
  double y_lo = 1.0, y_hi = 1.0;
  bool first = true;
  for (const auto& s : series_list) {
    for (const auto& e : s.entries) {
      if (e.error) continue;
      n_lo = first ? e.n : std::min(n_lo, e.n);
      n_hi = first ? e.n : std::max(n_hi, e.n);
      first = false;
      for (double v : {e.estimate.mean, e.estimate.package_min, e.estimate.norm_mean, e.estimate.norm_max}) {
        if (v > 0.0) {
          y_lo = std::min(y_lo, v);
          y_hi = std::max(y_hi, v);
        }
      }
    }
  }
  const double dec_lo = std::floor(std::log10(y_lo));
  const double dec_hi = std::max(std::ceil(std::log10(y_hi)), dec_lo + 1.0);
  if (n_hi == n_lo) n_hi = n_lo + 1;

  auto px = [&](double n) { return kLeft + (n - (n_lo - 0.5)) / ((n_hi + 0.5) - (n_lo - 0.5)) * plot_w; };
  auto py = [&](double v) {
    const double l = std::log10(std::max(v, std::pow(10.0, dec_lo)));
    return kTop + (dec_hi - l) / (dec_hi - dec_lo) * plot_h;
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
     << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double dec = dec_lo; dec <= dec_hi + 1e-9; dec += 1.0) {
    const double y = py(std::pow(10.0, dec));
    os << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << y
       << "\" stroke=\"#ddd\"/>\n"
       << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << dec << "</text>\n";
  }
  for (int n = n_lo; n <= n_hi; ++n) {
    const double x = px(n);
    os << "<line x1=\"" << x << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << x << "\" y2=\""
       << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << x << "\" y=\"" << kTop + plot_h + 20 << "\" text-anchor=\"middle\">" << n << "</text>\n";
  }
  os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
     << "\" text-anchor=\"middle\">particle number n</text>\n"
     << "<text x=\"20\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << kTop + plot_h / 2 << ")\">overlap (log scale)</text>\n";

  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::size_t color_index = 0;
  double legend_y = kTop + 15;
  for (const auto& s : series_list) {
    const char* color = kColors[color_index++ % std::size(kColors)];
    const bool boxes = s.family == Family::NN;
    std::ostringstream overlap_path, norm_path;
    bool started = false;
    for (const auto& e : s.entries) {
      if (e.error || !(e.estimate.mean > 0.0)) continue;
      overlap_path << (started ? " L " : "M ") << px(e.n) << ' ' << py(e.estimate.mean);
      norm_path << (started ? " L " : "M ") << px(e.n) << ' ' << py(e.estimate.norm_mean);
      started = true;
    }
    if (started) {
      os << "<path d=\"" << overlap_path.str() << "\" fill=\"none\" stroke=\"" << color << "\"/>\n"
         << "<path d=\"" << norm_path.str() << "\" fill=\"none\" stroke=\"" << color
         << "\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (const auto& e : s.entries) {
      if (e.error) continue;
      const auto& est = e.estimate;
      const double x = px(e.n);
      if (est.package_max > 0.0) {
        os << "<line x1=\"" << x << "\" y1=\"" << py(std::max(est.package_min, 0.0)) << "\" x2=\"" << x
           << "\" y2=\"" << py(est.package_max) << "\" stroke=\"" << color << "\"/>\n";
      }
      if (!(est.mean > 0.0)) continue;
      const double y = py(est.mean);
      const char* fill = est.reliable ? color : "white";
      if (boxes) {
        os << "<rect x=\"" << x - 4 << "\" y=\"" << y - 4 << "\" width=\"8\" height=\"8\" fill=\"" << fill
           << "\" stroke=\"" << color << "\"/>\n";
      } else {
        os << "<polygon points=\"" << x << ',' << y - 5 << ' ' << x - 5 << ',' << y + 4 << ' ' << x + 5 << ','
           << y + 4 << "\" fill=\"" << fill << "\" stroke=\"" << color << "\"/>\n";
      }
      os << "<circle cx=\"" << x << "\" cy=\"" << py(est.norm_mean) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    const std::string label = std::string(s.family == Family::NN     ? "n-n"
                                          : s.family == Family::NVac ? "n-0"
                                                                     : "0-n") +
                              " (" + std::string(to_string(s.sampler)) + ")";
    os << "<text x=\"" << kLeft + plot_w - 10 << "\" y=\"" << legend_y << "\" text-anchor=\"end\" fill=\"" << color
       << "\">" << label << "; dashed: norm check</text>\n";
    legend_y += 16;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace fieldoverlap
