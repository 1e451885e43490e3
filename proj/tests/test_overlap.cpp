// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fieldoverlap/overlap.hpp"
#include "test_oracles.hpp"

namespace fieldoverlap {
namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

TEST(IndicatorNn, SmallCases) {
  EXPECT_TRUE(indicator_nn(std::vector<double>{0.5, 1.0}));
  EXPECT_FALSE(indicator_nn(std::vector<double>{1.0, 0.5}));
  EXPECT_TRUE(indicator_nn(std::vector<double>{2.0, 1.0, 0.4, 3.0}));
}

TEST(IndicatorNn, ZeroCoordinateConventions) {
  EXPECT_TRUE(indicator_nn(std::vector<double>{0.0, 1.0}));
  EXPECT_TRUE(indicator_nn(std::vector<double>{0.0, 0.0}));
  EXPECT_FALSE(indicator_nn(std::vector<double>{1.0, 0.0, 2.0, 5.0}));
}

TEST(IndicatorNn, OddDimensionThrows) {
  EXPECT_THROW(indicator_nn(std::vector<double>{1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST(IndicatorNn, SwapIsComplementOffTies) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x(2 * (1 + rng() % 5));
    for (double& v : x) v = normal(rng);
    EXPECT_NE(indicator_nn(x, false), indicator_nn(x, true));
  }
}

TEST(WeightNn, KnownValues) {
  EXPECT_NEAR(weight_nn(std::vector<double>{kInvSqrt2, 3.0}), 1.0, 1e-15);
  EXPECT_NEAR(weight_nn(std::vector<double>{kInvSqrt2, -1.0, kInvSqrt2, 0.2}), 1.0, 1e-15);
  EXPECT_NEAR(weight_nn(std::vector<double>{1.0, 0.0}), 2.0, 1e-15);
}

TEST(EvaluateNn, AgreesWithSeparateCalls) {
  const std::vector<double> x{0.3, -1.2, 2.0, 0.7};
  const auto iw = evaluate_nn(x);
  EXPECT_EQ(iw.indicator, indicator_nn(x));
  EXPECT_DOUBLE_EQ(iw.weight, weight_nn(x));
}

TEST(IndicatorWeightNvac, BoundaryAndInterior) {
  const std::vector<double> boundary{kInvSqrt2};
  EXPECT_TRUE(indicator_weight_nvac(boundary, VacDirection::StateBelowVac).indicator);
  EXPECT_FALSE(indicator_weight_nvac(boundary, VacDirection::VacBelowState).indicator);

  const auto small = indicator_weight_nvac(std::vector<double>{0.1}, VacDirection::StateBelowVac);
  EXPECT_TRUE(small.indicator);
  EXPECT_NEAR(small.weight, 0.02, 1e-15);

  const auto vac = indicator_weight_nvac(std::vector<double>{2.0}, VacDirection::VacBelowState);
  EXPECT_TRUE(vac.indicator);
  EXPECT_EQ(vac.weight, 1.0);
}

TEST(IndicatorWeightNvac, EmptyThrows) {
  EXPECT_THROW(indicator_weight_nvac(std::vector<double>{}, VacDirection::StateBelowVac), std::invalid_argument);
}

GridFunctionPair offset_gaussians(double delta, std::size_t cells) {
  const auto g = midpoint_grid(-6.0, delta + 6.0, cells);
  const double amp = std::pow(2.0 / std::numbers::pi, 0.25);
  std::vector<double> f0, f1;
  for (double x : g.nodes) {
    f0.push_back(amp * std::exp(-x * x));
    f1.push_back(amp * std::exp(-(x - delta) * (x - delta)));
  }
  return GridFunctionPair(g.nodes, f0, f1, g.weights);
}

TEST(SplitNonoverlapping, DisjointInputUnchanged) {
  const GridFunctionPair pair({0.0, 1.0}, {2.0, 0.0}, {0.0, 2.0}, {1.0, 1.0});
  const auto s = split_nonoverlapping(pair);
  EXPECT_EQ(s.f0, (std::vector<double>{2.0, 0.0}));
  EXPECT_EQ(s.f1, (std::vector<double>{0.0, 2.0}));
  EXPECT_EQ(overlap_from_grid(pair, 0), 0.0);
  EXPECT_EQ(overlap_from_grid(pair, 1), 0.0);
}

TEST(SplitNonoverlapping, IdenticalFunctionsKeepIndexOne) {
  const std::vector<double> f{0.5, 0.5, 0.5, 0.5};
  const GridFunctionPair pair({0.0, 1.0, 2.0, 3.0}, f, f, {1.0, 1.0, 1.0, 1.0});
  const auto s = split_nonoverlapping(pair);
  EXPECT_EQ(s.f0, (std::vector<double>(4, 0.0)));
  EXPECT_EQ(s.f1, f);
  EXPECT_DOUBLE_EQ(overlap_from_grid(pair, 0), 1.0);
  EXPECT_EQ(overlap_from_grid(pair, 1), 0.0);
}

TEST(SplitNonoverlapping, OffsetGaussiansSplitAtMidpoint) {
  const auto pair = offset_gaussians(4.0, 16000);
  const auto points = split_points(pair);
  ASSERT_EQ(points.size(), 1u);
  EXPECT_NEAR(points[0], 2.0, 1e-9);
  const auto s = split_nonoverlapping(pair);
  const auto x = pair.grid();
  for (std::size_t i = 0; i < pair.size(); ++i) {
    if (x[i] < 1.999) {
      EXPECT_EQ(s.f1[i], 0.0);
    }
    if (x[i] > 2.001) {
      EXPECT_EQ(s.f0[i], 0.0);
    }
  }
}

TEST(OverlapFromGrid, OffsetGaussiansMatchTailQuadrature) {
  const auto pair = offset_gaussians(4.0, 16000);
  const double tail = test::simpson(
      [](double x) { return std::sqrt(2.0 / std::numbers::pi) * std::exp(-2.0 * x * x); }, 2.0, 10.0);
  EXPECT_NEAR(overlap_from_grid(pair, 0), tail, 1e-5 * tail);  // midpoint O(h^2) at the cut
  EXPECT_NEAR(overlap_from_grid(pair, 1), tail, 1e-5 * tail);  // midpoint O(h^2) at the cut
}

TEST(OverlapFromGrid, EqualsApproximationError) {
  const auto pair = offset_gaussians(1.3, 2000);
  const auto s = split_nonoverlapping(pair);
  for (int which : {0, 1}) {
    const auto f = pair.function(which);
    const auto& split = which == 0 ? s.f0 : s.f1;
    std::vector<double> diff(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) diff[i] = f[i] - split[i];
    EXPECT_NEAR(grid_norm_squared(diff, pair.cell_weights()), overlap_from_grid(pair, which), 1e-15);
  }
}

TEST(GridFunctionPair, Validation) {
  EXPECT_THROW(GridFunctionPair({0.0, 0.0}, {1, 1}, {1, 1}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(GridFunctionPair({0.0, 1.0}, {1, 1}, {1}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(GridFunctionPair({0.0, 1.0}, {1, 1}, {1, 1}, {1, 0}), std::invalid_argument);
  const GridFunctionPair ok({0.0}, {1.0}, {1.0}, {1.0});
  EXPECT_THROW(overlap_from_grid(ok, 2), std::invalid_argument);
}

TEST(IntegralSpec, DimensionAndValidation) {
  EXPECT_EQ((IntegralSpec{Family::NN, 3}).dimension(), 6u);
  EXPECT_EQ((IntegralSpec{Family::VacN, 3}).dimension(), 3u);
  EXPECT_THROW((IntegralSpec{Family::NN, 0}).validate(), std::invalid_argument);
  EXPECT_THROW((IntegralSpec{Family::NVac, 2, Estimator::ImportanceWeighted, true}).validate(),
               std::invalid_argument);
}

}  // namespace
}  // namespace fieldoverlap
