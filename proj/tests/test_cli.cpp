// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fieldoverlap/cli.hpp"

namespace fieldoverlap {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fieldoverlap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, std::string(kCsvHeader));
  while (std::getline(ss, line)) rows.push_back(split_csv(line));
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fieldoverlap_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

// Column indices of the CSV schema.
constexpr int kMean = 6, kReliable = 11, kOracle = 12, kOracleDelta = 13, kWall = 14, kStdErr = 9, kSeed = 5;

TEST_F(CliTest, RhoOneParticle) {
  const auto r = run_cli({"rho", "--family", "nn", "--n", "1", "--samples", "1000000", "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_EQ(rows[0].size(), 15u);
  const double mean = std::stod(rows[0][kMean]);
  EXPECT_GE(mean, 0.1797);
  EXPECT_LE(mean, 0.1837);
  EXPECT_EQ(rows[0][kOracle], "");
  EXPECT_FALSE(rows[0][kWall].empty());
}

TEST_F(CliTest, RhoVacuumBelowOneParticle) {
  const auto r = run_cli({"rho", "--family", "vacn", "--n", "1", "--samples", "1000000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  EXPECT_NEAR(std::stod(rows[0][kMean]), 0.3173, 3 * std::stod(rows[0][kStdErr]) + 1e-4);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({"rho", "--family", "nn", "--n", "0"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"rho", "--family", "xx", "--n", "1"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"sweep", "--n-min", "4", "--n-max", "2"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
}

TEST_F(CliTest, StrictUnreliableExitCode) {
  const auto r = run_cli({"rho", "--family", "nn", "--n", "16", "--samples", "1000", "--strict"});
  EXPECT_EQ(r.code, cli::kUnreliable);
  EXPECT_EQ(csv_rows(r.out)[0][kReliable], "false");
}

TEST_F(CliTest, UnwritablePath) {
  const auto r = run_cli({"rho", "--n", "1", "--samples", "1000", "--output", "/nonexistent/dir/x.csv"});
  EXPECT_EQ(r.code, cli::kIo);
}

TEST_F(CliTest, SweepWithOracleAndPlot) {
  const auto csv = dir_ / "sweep.csv";
  const auto svg = dir_ / "sweep.svg";
  const auto json = dir_ / "sweep.json";
  const auto r = run_cli({"sweep", "--family", "nn", "--n-min", "1", "--n-max", "3", "--samples", "2000000",
                          "--sampler", "direct", "--oracle", "--csv", csv.string(), "--plot", svg.string(),
                          "--json", json.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(slurp(csv));
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) {
    ASSERT_FALSE(row[kOracle].empty());
    const double band = std::stod(row[kOracleDelta]) + 3 * std::stod(row[kStdErr]);
    EXPECT_NEAR(std::stod(row[kMean]), std::stod(row[kOracle]), band) << "n = " << row[1];
  }
  const auto svg_text = slurp(svg);
  EXPECT_EQ(svg_text.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg_text.find("<svg"), std::string::npos);
  EXPECT_NE(svg_text.find("</svg>"), std::string::npos);
  const auto j = nlohmann::json::parse(slurp(json));
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(format_double(j[0]["mean"].get<double>()), rows[0][kMean]);
}

TEST_F(CliTest, CsvIsByteStableAcrossThreadCounts) {
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "2", "8"}) {
    const auto r = run_cli({"sweep", "--family", "nn", "--n-min", "1", "--n-max", "3", "--samples", "100000",
                            "--threads", threads, "--no-timing"});
    ASSERT_EQ(r.code, 0);
    outputs.push_back(r.out);
  }
  EXPECT_EQ(outputs[0], outputs[1]);
  EXPECT_EQ(outputs[0], outputs[2]);
  EXPECT_EQ(csv_rows(outputs[0])[0][kWall], "");
}

TEST_F(CliTest, SplitDemo) {
  auto summary = [&](const char* delta) {
    const auto path = dir_ / "summary.json";
    const auto r = run_cli({"split-demo", "--delta", delta, "--output", (dir_ / "split.csv").string(), "--summary",
                            path.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    return nlohmann::json::parse(slurp(path));
  };
  const auto same = summary("0");
  EXPECT_NEAR(same["rho_0_given_1"].get<double>(), 1.0, 1e-9);
  const auto far = summary("8");
  EXPECT_LT(far["rho_0_given_1"].get<double>(), 1e-7);
  EXPECT_LT(far["rho_1_given_0"].get<double>(), 1e-7);
  const auto mid = summary("4");
  ASSERT_EQ(mid["split_points"].size(), 1u);
  EXPECT_NEAR(mid["split_points"][0].get<double>(), 2.0, 1e-9);
  const auto lines = slurp(dir_ / "split.csv");
  EXPECT_EQ(lines.rfind("x,f0,f1,f0_split,f1_split\n", 0), 0u);
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  const auto cfg = dir_ / "run.ini";
  std::ofstream(cfg) << "[rho]\nfamily=vacn\nn=1\nsamples=2000\nseed=77\n";
  const auto from_file = run_cli({"--config", cfg.string(), "rho"});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  auto row = csv_rows(from_file.out)[0];
  EXPECT_EQ(row[0], "vacn");
  EXPECT_EQ(row[kSeed], "77");
  const auto overridden = run_cli({"--config", cfg.string(), "rho", "--family", "nn", "--seed", "5"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  row = csv_rows(overridden.out)[0];
  EXPECT_EQ(row[0], "nn");
  EXPECT_EQ(row[kSeed], "5");
}

TEST_F(CliTest, SeedFromEnvironment) {
  ::setenv("FIELDOVERLAP_SEED", "31337", 1);
  const auto r = run_cli({"rho", "--n", "1", "--samples", "1000"});
  ::unsetenv("FIELDOVERLAP_SEED");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(csv_rows(r.out)[0][kSeed], "31337");
}

}  // namespace
}  // namespace fieldoverlap
