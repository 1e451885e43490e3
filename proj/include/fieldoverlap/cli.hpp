// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli.hpp
 * @brief Command-line front end: `rho`, `sweep` and `split-demo`.
 *
 * Exit codes: 0 success, 1 usage, 2 unreliable result under --strict, 3 I/O.
 * The default seed can be set through the FIELDOVERLAP_SEED environment
 * variable, and `--config FILE` presets flags from an INI/TOML file.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fieldoverlap/mc_engine.hpp"
#include "fieldoverlap/oracle.hpp"
#include "fieldoverlap/overlap.hpp"
#include "fieldoverlap/report.hpp"

namespace fieldoverlap::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kUnreliable = 2, kIo = 3 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string family = "nn";
  std::string sampler = "cartesian";
  std::uint64_t samples = 1'000'000;
  int packages = kDefaultPackages;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  double norm_tolerance = kDefaultNormTolerance;
  bool strict = false;
  bool swap = false;
  bool oracle = false;
  int oracle_nodes = 64;
  bool no_timing = false;
  std::string json_path;
};

namespace detail {

inline void add_run_options(CLI::App& cmd, RunOptions& o) {
  cmd.add_option("--family", o.family, "Integral family")
      ->check(CLI::IsMember({"nn", "nvac", "vacn"}))
      ->capture_default_str();
  cmd.add_option("--sampler", o.sampler, "Random point set")
      ->check(CLI::IsMember({"cartesian", "direct", "spherical"}))
      ->capture_default_str();
  cmd.add_option("--samples", o.samples, "Total Monte Carlo samples per estimate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--packages", o.packages, "Number of packages for error bars")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--seed", o.seed, "Root seed")->envname("FIELDOVERLAP_SEED")->capture_default_str();
  cmd.add_option("--threads", o.threads, "Worker threads (0: machine parallelism)")->capture_default_str();
  cmd.add_option("--norm-tolerance", o.norm_tolerance, "Allowed |norm - 1| for a reliable run")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_flag("--strict", o.strict, "Exit with code 2 when a result is unreliable");
  cmd.add_flag("--swap", o.swap, "nn only: estimate rho(Psi1|Psi0) instead of rho(Psi0|Psi1)");
  cmd.add_flag("--oracle", o.oracle, "Add tensor-quadrature oracle columns where available");
  cmd.add_option("--oracle-nodes", o.oracle_nodes, "Quadrature nodes per axis")
      ->check(CLI::Range(kMinQuadratureNodes, 4096))
      ->capture_default_str();
  cmd.add_flag("--no-timing", o.no_timing, "Leave wall_time_s empty (byte-stable output)");
  cmd.add_option("--json", o.json_path, "Also write the rows as a JSON array to this path");
}

inline McConfig make_config(const RunOptions& o) {
  McConfig c;
  c.samples_total = o.samples;
  c.packages = o.packages;
  c.root_seed = o.seed;
  c.sampler = *parse_sampler(o.sampler);
  c.norm_tolerance = o.norm_tolerance;
  c.threads = o.threads;
  return c;
}

inline void attach_oracle(ResultRow& row, const RunOptions& o) {
  if (!o.oracle) return;
  const IntegralSpec spec{row.family, row.n, estimator_for(row.sampler), o.swap};
  try {
    const auto q = quadrature_rho(spec, o.oracle_nodes);
    row.oracle_value = q.value;
    row.oracle_delta = q.refinement_delta;
  } catch (const std::invalid_argument&) {
    // Beyond the tensor-quadrature range; the columns stay empty.
  }
}

/// Opens `path` for writing, or returns nullptr for "-" (stdout).
inline std::unique_ptr<std::ofstream> open_output(const std::string& path) {
  if (path.empty() || path == "-") return nullptr;
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*f) throw IoError("cannot open " + path + " for writing");
  return f;
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  auto f = open_output(path);
  std::ostream& os = f ? *f : fallback;
  os << text;
  os.flush();
  if (!os) throw IoError("failed writing " + path);
}

inline void write_rows(const std::string& csv_path, const std::string& json_path,
                       const std::vector<ResultRow>& rows, std::ostream& out) {
  std::ostringstream csv;
  write_csv(csv, rows);
  write_text(csv_path, csv.str(), out);
  if (!json_path.empty()) write_text(json_path, json_rows(rows).dump(2) + "\n", out);
}

}  // namespace detail

/// Runs the command line; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Overlap of n-particle wavefunctionals in pilot-wave field theory", "fieldoverlap"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file presetting flags; command-line flags take precedence");

  RunOptions rho_opts;
  int rho_n = 1;
  std::string rho_output = "-";
  auto* rho = app.add_subcommand("rho", "Estimate one overlap integral");
  detail::add_run_options(*rho, rho_opts);
  rho->add_option("--n", rho_n, "Particle count (>= 1)")->required()->check(CLI::PositiveNumber);
  rho->add_option("--output,-o", rho_output, "CSV output path ('-' for stdout)")->capture_default_str();

  RunOptions sweep_opts;
  int n_min = 1, n_max = 16;
  std::string csv_path = "-", plot_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Estimate an overlap family over a range of n");
  detail::add_run_options(*sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--n-min", n_min, "Smallest particle count")->check(CLI::PositiveNumber)->capture_default_str();
  sweep_cmd->add_option("--n-max", n_max, "Largest particle count")->check(CLI::PositiveNumber)->capture_default_str();
  sweep_cmd->add_option("--csv", csv_path, "CSV output path ('-' for stdout)")->capture_default_str();
  sweep_cmd->add_option("--plot", plot_path, "SVG plot output path");

  double delta = 4.0;
  std::optional<double> grid_min, grid_max;
  std::size_t cells = 16000;
  std::string split_output = "-", split_summary;
  auto* split = app.add_subcommand("split-demo", "Split two offset Gaussians into non-overlapping parts");
  split->add_option("--delta", delta, "Offset between the two Gaussians")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  split->add_option("--grid-min", grid_min, "Left grid edge (default -6)");
  split->add_option("--grid-max", grid_max, "Right grid edge (default delta + 6)");
  split->add_option("--cells", cells, "Number of midpoint cells")->check(CLI::PositiveNumber)->capture_default_str();
  split->add_option("--output,-o", split_output, "CSV of the split functions ('-' for stdout)")->capture_default_str();
  split->add_option("--summary", split_summary, "JSON summary path (default: stderr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*rho) {
      const auto config = detail::make_config(rho_opts);
      const auto family = *parse_family(rho_opts.family);
      const IntegralSpec spec{family, rho_n, estimator_for(config.sampler), rho_opts.swap};
      ResultRow row;
      row.family = family;
      row.n = rho_n;
      row.sampler = config.sampler;
      row.seed = config.root_seed;
      row.estimate = estimate(spec, config);
      row.include_timing = !rho_opts.no_timing;
      detail::attach_oracle(row, rho_opts);
      detail::write_rows(rho_output, rho_opts.json_path, {row}, out);
      if (rho_opts.strict && !row.estimate->reliable) return kUnreliable;
      return kOk;
    }

    if (*sweep_cmd) {
      if (n_min > n_max) {
        err << "sweep: --n-min must not exceed --n-max\n";
        return kUsage;
      }
      const auto config = detail::make_config(sweep_opts);
      const auto family = *parse_family(sweep_opts.family);
      // Fail on unwritable paths before spending the sample budget.
      auto plot_file = detail::open_output(plot_path);
      auto series = fieldoverlap::sweep(family, n_min, n_max, config, sweep_opts.swap);
      std::vector<ResultRow> rows;
      bool all_reliable = true;
      for (const auto& e : series.entries) {
        auto row = make_row(e, family, config.sampler);
        row.include_timing = !sweep_opts.no_timing;
        detail::attach_oracle(row, sweep_opts);
        if (e.error) err << "sweep: n = " << e.n << " failed: " << *e.error << '\n';
        all_reliable = all_reliable && e.estimate.reliable && !e.error;
        rows.push_back(std::move(row));
      }
      detail::write_rows(csv_path, sweep_opts.json_path, rows, out);
      if (plot_file) {
        *plot_file << render_svg({series});
        plot_file->flush();
        if (!*plot_file) throw IoError("failed writing " + plot_path);
      }
      if (sweep_opts.strict && !all_reliable) return kUnreliable;
      return kOk;
    }

    if (*split) {
      const double lo = grid_min.value_or(-6.0);
      const double hi = grid_max.value_or(delta + 6.0);
      const auto grid = midpoint_grid(lo, hi, cells);
      const double amp = std::pow(2.0 / std::numbers::pi, 0.25);
      std::vector<double> f0(cells), f1(cells);
      for (std::size_t i = 0; i < cells; ++i) {
        const double x = grid.nodes[i];
        f0[i] = amp * std::exp(-x * x);
        f1[i] = amp * std::exp(-(x - delta) * (x - delta));
      }
      const GridFunctionPair pair(grid.nodes, f0, f1, grid.weights);
      const auto parts = split_nonoverlapping(pair);
      std::ostringstream csv;
      csv << "x,f0,f1,f0_split,f1_split\n";
      for (std::size_t i = 0; i < cells; ++i) {
        csv << format_double(grid.nodes[i]) << ',' << format_double(f0[i]) << ',' << format_double(f1[i]) << ','
            << format_double(parts.f0[i]) << ',' << format_double(parts.f1[i]) << '\n';
      }
      detail::write_text(split_output, csv.str(), out);
      nlohmann::json summary;
      summary["delta"] = delta;
      summary["rho_0_given_1"] = overlap_from_grid(pair, 0);
      summary["rho_1_given_0"] = overlap_from_grid(pair, 1);
      summary["split_points"] = split_points(pair);
      if (split_summary.empty()) {
        err << summary.dump() << '\n';
      } else {
        detail::write_text(split_summary, summary.dump(2) + "\n", out);
      }
      return kOk;
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "invalid arguments: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace fieldoverlap::cli
