// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fieldoverlap/mc_engine.hpp"
#include "fieldoverlap/oracle.hpp"
#include "test_oracles.hpp"

namespace fieldoverlap {
namespace {

TEST(ClosedForms, RhoOne) {
  EXPECT_NEAR(rho1_closed_form(), 0.18169011381620932, 1e-16);
  EXPECT_NEAR(rho1_closed_form(), test::rho1_polar_simpson(), 1e-8);
  EXPECT_NEAR(rho1_closed_form(), 0.18169, 1e-5);
}

TEST(ClosedForms, VacuumComparisons) {
  EXPECT_NEAR(vac_below_one_particle_closed_form(), test::gaussian_two_sided_tail(1.0 / std::numbers::sqrt2), 1e-12);
  const double a = 1.0 / std::numbers::sqrt2;
  const double inside = 2.0 * test::simpson(
      [](double x) { return 2.0 / std::sqrt(std::numbers::pi) * x * x * std::exp(-x * x); }, 0.0, a);
  EXPECT_NEAR(one_particle_below_vac_closed_form(), inside, 1e-12);
}

TEST(Quadrature, RhoOneAt512Nodes) {
  const auto q = quadrature_rho(IntegralSpec{Family::NN, 1}, 512);
  EXPECT_NEAR(q.value, rho1_closed_form(), 1e-4);
  EXPECT_LT(q.refinement_delta, 1e-4);
}

TEST(Quadrature, VacuumBelowOneParticle) {
  const auto q = quadrature_rho(IntegralSpec{Family::VacN, 1}, 64);
  EXPECT_NEAR(q.value, std::erfc(1.0 / std::numbers::sqrt2), 1e-6);
}

TEST(Quadrature, NormWithoutIndicator) {
  const auto q = quadrature_rho(IntegralSpec{Family::NN, 1}, 512, IndicatorMode::Ignore);
  EXPECT_NEAR(q.value, 1.0, 1e-10);
}

TEST(Quadrature, RegionAndComplementPartitionTheNorm) {
  for (auto [family, n] : std::vector<std::pair<Family, int>>{
           {Family::NN, 1}, {Family::NN, 2}, {Family::NVac, 3}, {Family::VacN, 3}, {Family::NVac, 1}}) {
    const IntegralSpec s{family, n};
    const double region = quadrature_value(s, 48, IndicatorMode::Region);
    const double complement = quadrature_value(s, 48, IndicatorMode::Complement);
    const double norm = quadrature_value(s, 48, IndicatorMode::Ignore);
    EXPECT_NEAR(region + complement, norm, 1e-13) << to_string(family) << n;
    EXPECT_NEAR(norm, 1.0, 1e-9) << to_string(family) << n;
  }
}

TEST(Quadrature, LimitsAndErrors) {
  EXPECT_THROW(quadrature_rho(IntegralSpec{Family::NN, 4}, 32), std::invalid_argument);
  EXPECT_THROW(quadrature_rho(IntegralSpec{Family::VacN, 7}, 32), std::invalid_argument);
  EXPECT_THROW(quadrature_rho(IntegralSpec{Family::NN, 1}, 16), std::invalid_argument);
}

TEST(Quadrature, MatchesMonteCarloAtRhoOne) {
  McConfig c;
  c.samples_total = 10'000'000;
  c.sampler = SamplerKind::DirectDensity;
  c.threads = 1;
  const auto e = estimate(IntegralSpec{Family::NN, 1, Estimator::DirectDensity}, c);
  EXPECT_NEAR(e.mean, rho1_closed_form(), 3 * e.std_error);
}

TEST(Maxima, Distances) {
  EXPECT_DOUBLE_EQ(maxima_distance(Family::NN, 1), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(maxima_distance(Family::NVac, 4), 2.0);
  EXPECT_DOUBLE_EQ(maxima_distance(Family::VacN, 9), 3.0);
  EXPECT_THROW(maxima_distance(Family::NN, 0), std::invalid_argument);
}

TEST(Maxima, CanonicalMaximaSeparation) {
  for (int n = 1; n <= 5; ++n) {
    const auto m0 = canonical_maximum(ProductState::interleaved(n, 0), 2 * n);
    const auto m1 = canonical_maximum(ProductState::interleaved(n, 1), 2 * n);
    double d2 = 0.0;
    for (int i = 0; i < 2 * n; ++i) d2 += (m0[i] - m1[i]) * (m0[i] - m1[i]);
    EXPECT_DOUBLE_EQ(std::sqrt(d2), maxima_distance(Family::NN, n));
    const auto vac = canonical_maximum(ProductState::vacuum(), n);
    const auto mn = canonical_maximum(ProductState::leading(n), n);
    double dv = 0.0;
    for (int i = 0; i < n; ++i) dv += (mn[i] - vac[i]) * (mn[i] - vac[i]);
    EXPECT_DOUBLE_EQ(std::sqrt(dv), maxima_distance(Family::NVac, n));
  }
}

TEST(Maxima, HillClimbFindsPredictedMaximum) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto state = ProductState::interleaved(n, trial % 2);
    std::vector<double> start(2 * n);
    for (double& v : start) v = u(rng);
    const auto found = hill_climb_maximum(state, start);
    EXPECT_LT(distance_to_nearest_maximum(state, found), 1e-6);
  }
}

}  // namespace
}  // namespace fieldoverlap
