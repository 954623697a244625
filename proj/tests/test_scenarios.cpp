// Copyright 2026 The fockstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fockstab/errors.hpp"
#include "fockstab/scenarios.hpp"

namespace fockstab {
namespace {

Tone tone(std::size_t level, double omega_khz, double j_khz) {
  return {level, AngularRate::from_khz(omega_khz), AngularRate::from_khz(j_khz), {}};
}

DriveComb device_comb(std::size_t n) {
  switch (n) {
    case 1: return DriveComb::addition({tone(0, 86, 400)});
    case 2: return DriveComb::addition({tone(0, 86, 400), tone(1, 86, 380)});
    default: return DriveComb::addition({tone(0, 86, 330), tone(1, 86, 341), tone(2, 87, 356)});
  }
}

const double kRateF[] = {0.0, 0.957, 0.913, 0.869};

ScenarioSpec stabilize(std::size_t n, ModelLevel model) {
  ScenarioSpec s;
  s.label = "stab";
  s.kind = ScenarioKind::Stabilize;
  s.comb = device_comb(n);
  s.model = model;
  return s;
}

ScenarioSpec protect(std::size_t n, DriveComb comb, double duration) {
  ScenarioSpec s;
  s.label = "protect";
  s.kind = ScenarioKind::Protect;
  s.comb = std::move(comb);
  s.initial = InitialState::number(n);
  s.duration_us = duration;
  s.sample_every_us = duration / 400.0;
  s.final_wigner = false;
  return s;
}

ScenarioSpec reset(InitialState::Kind kind) {
  ScenarioSpec s;
  s.label = "reset";
  s.kind = ScenarioKind::Reset;
  s.comb = device_comb(2);
  s.model = ModelLevel::LindbladIdeal;
  s.initial.kind = kind;
  s.duration_us = 250.0;
  s.sample_every_us = 5.0;
  s.wigner.points = 41;
  return s;
}

TEST(ScenarioNames, RoundTrip) {
  for (auto k : {ScenarioKind::Stabilize, ScenarioKind::Protect, ScenarioKind::Reset, ScenarioKind::RateAnalytics,
                 ScenarioKind::WignerSnapshot})
    EXPECT_EQ(parse_scenario_kind(to_string(k)), k);
  for (auto m : {ModelLevel::Rate, ModelLevel::LindbladIdeal, ModelLevel::LindbladSpurious})
    EXPECT_EQ(parse_model_level(to_string(m)), m);
  EXPECT_FALSE(parse_scenario_kind("stabilise").has_value());
}

TEST(InitialStates, LogicalCodewords) {
  InitialState s;
  s.kind = InitialState::Kind::Logical0;
  const Vector l0 = s.cavity_ket(6);
  EXPECT_NEAR(std::abs(l0(0)), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(std::abs(l0(4)), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(s.max_level(), 4u);
  s.kind = InitialState::Kind::LogicalPlusI;
  const Vector p = s.cavity_ket(6);
  EXPECT_NEAR(p.norm(), 1.0, 1e-15);
  EXPECT_NEAR(p(2).imag(), std::sqrt(0.5), 1e-15);
  EXPECT_THROW(s.cavity_ket(4), DomainError);
}

TEST(SpecValidation, KindRules) {
  auto s = stabilize(1, ModelLevel::Rate);
  s.initial = InitialState::number(1);
  EXPECT_THROW(s.validate(), DomainError);
  auto p = protect(2, DriveComb::addition({tone(1, 86, 380)}), 100.0);
  EXPECT_NO_THROW(p.validate());
  p.initial = InitialState::number(3);
  EXPECT_THROW(p.validate(), DomainError);
  auto r = reset(InitialState::Kind::Logical0);
  r.comb = device_comb(3);
  EXPECT_THROW(r.validate(), DomainError);
  r = reset(InitialState::Kind::Logical0);
  r.cavity_dim = 5;
  EXPECT_THROW(r.validate(), DomainError);
  auto t = stabilize(1, ModelLevel::Rate);
  t.sample_every_us = 0.0;
  EXPECT_THROW(t.validate(), DomainError);
}

TEST(Stabilize, RateModelTrace) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto s = stabilize(n, ModelLevel::Rate);
    s.duration_us = 800.0;
    s.sample_every_us = 2.0;
    const auto r = run_stabilize(s);
    EXPECT_EQ(r.target, n);
    EXPECT_NEAR(r.trace.populations(0, 0), 1.0, 1e-15);
    EXPECT_NEAR(r.steady_pn, kRateF[n], 1e-3);
    EXPECT_NEAR(r.rate_model_pn, r.steady_pn, 1e-12);
    EXPECT_NEAR(r.saturation_pn, r.steady_pn, 1e-3);
    EXPECT_TRUE(r.trace.qubit_excited.empty());
  }
}

TEST(Stabilize, LindbladIdealAgreesWithRateModel) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto ss = lindblad_steady_state(stabilize(n, ModelLevel::LindbladIdeal));
    EXPECT_TRUE(ss.converged);
    EXPECT_NEAR(ss.populations[n], kRateF[n], 0.03) << "N = " << n;
  }
}

TEST(Stabilize, SpuriousCouplingsOnlyDegrade) {
  const auto ideal = lindblad_steady_state(stabilize(2, ModelLevel::LindbladIdeal));
  const auto spur = lindblad_steady_state(stabilize(2, ModelLevel::LindbladSpurious));
  EXPECT_TRUE(spur.converged);
  EXPECT_LE(spur.populations[2], ideal.populations[2] + 1e-3);
  EXPECT_NEAR(spur.populations[2], kRateF[2], 0.03);
}

TEST(Stabilize, LindbladRunApproachesSteadyState) {
  auto s = stabilize(1, ModelLevel::LindbladIdeal);
  s.duration_us = 60.0;
  s.sample_every_us = 1.0;
  s.wigner.points = 21;
  const auto r = run_stabilize(s);
  ASSERT_TRUE(r.diagnostics.has_value());
  EXPECT_LE(r.diagnostics->max_trace_drift, 1e-6);
  EXPECT_EQ(r.trace.populations.rows(), 61);
  EXPECT_NEAR(r.trace.populations.bottomRows(1)(0, 1), r.steady_pn, 0.01);
  ASSERT_TRUE(r.final_wigner.has_value());
  EXPECT_LT(r.final_wigner->values(10, 10), 0.0);
}

TEST(Protect, UnpumpedDecay) {
  const double kc = 2.0 * std::numbers::pi * 3.1e-3;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto r = run_protect(protect(n, {}, 300.0));
    EXPECT_NEAR(r.eigen_mode.tau_us * static_cast<double>(n) * kc, 1.0, 1e-9);
    EXPECT_NEAR(r.fit.tau_us, r.eigen_mode.tau_us, 1e-6 * r.eigen_mode.tau_us);
    EXPECT_FALSE(r.fit.flagged);
  }
  EXPECT_NEAR(run_protect(protect(1, {}, 300.0)).fit.tau_us, 51.0, 0.02 * 51.0);
}

TEST(Protect, PumpedDecayTimes) {
  const auto r23 = run_protect(protect(3, DriveComb::addition({tone(2, 87, 356)}), 800.0));
  EXPECT_NEAR(r23.eigen_mode.tau_us, 228.0, 0.02 * 228.0);
  EXPECT_NEAR(r23.fit.tau_us, 228.0, 0.02 * 228.0);
  const auto r12 = run_protect(protect(2, DriveComb::addition({tone(1, 86, 380)}), 2000.0));
  const auto direct = decay_time(build_rate_matrix(r12.lambdas_khz, 3.1, 3), 2);
  EXPECT_NEAR(r12.eigen_mode.tau_us, direct.tau_us, 1e-6 * direct.tau_us);
  EXPECT_NEAR(r12.eigen_mode.tau_us, 639.0, 0.02 * 639.0);
}

TEST(FitExponential, RecoversAndFlags) {
  std::vector<double> t, y, z;
  for (int k = 0; k <= 100; ++k) {
    t.push_back(k);
    y.push_back(0.8 * std::exp(-k / 37.0));
    z.push_back(0.5 * std::exp(-k / 5.0) + 0.5 * std::exp(-k / 80.0) + 0.02 * std::sin(k));
  }
  const auto f = fit_exponential(t, y, 0.2, 1e-2);
  EXPECT_NEAR(f.tau_us, 37.0, 1e-9);
  EXPECT_NEAR(f.amplitude, 0.8, 1e-9);
  EXPECT_EQ(f.points, 81u);
  EXPECT_FALSE(f.flagged);
  EXPECT_TRUE(fit_exponential(t, z, 0.2, 1e-2).flagged);
}

TEST(Reset, LogicalStatesConvergeToTwo) {
  auto one = run_reset(reset(InitialState::Kind::Logical1));
  auto zero = run_reset(reset(InitialState::Kind::Logical0));
  EXPECT_GE(one.final_fidelity, one.rate_model_p2 - 0.03);
  EXPECT_NEAR(zero.final_p2, one.rate_model_p2, 0.03);
  EXPECT_NEAR(zero.final_p2, one.final_p2, 1e-3);
  EXPECT_EQ(zero.fidelity_to_target.size(), zero.trace.times_us.size());
  EXPECT_NEAR(zero.fidelity_to_target.front(), 0.0, 1e-12);
  EXPECT_NEAR(one.fidelity_to_target.front(), 1.0, 1e-12);
  for (Eigen::Index r = 0; r < zero.trace.populations.rows(); ++r)
    EXPECT_NEAR(zero.trace.populations(r, 2), zero.fidelity_to_target[static_cast<std::size_t>(r)], 1e-12);
}

TEST(Reset, InitialWignerHasFourfoldSymmetry) {
  InitialState s;
  s.kind = InitialState::Kind::Logical0;
  const Vector psi = s.cavity_ket(6);
  const auto rho = DensityMatrix::from_ket(SpaceLayout::single(6), psi);
  for (double re : {0.3, 0.7, 1.1, 1.6})
    for (double im : {-0.4, 0.0, 0.9}) {
      const cplx a{re, im};
      EXPECT_NEAR(wigner_at(rho, a), wigner_at(rho, cplx{0, 1} * a), 1e-8);
    }
}

TEST(RateAnalytics, DeviceTable) {
  ScenarioSpec s;
  s.label = "tables";
  s.kind = ScenarioKind::RateAnalytics;
  for (std::size_t n = 1; n <= 3; ++n) s.analytics.push_back({"0->" + std::to_string(n), device_comb(n), {}});
  const auto r = run_rate_analytics(s);
  ASSERT_EQ(r.rows.size(), 3u);
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_NEAR(r.rows[n - 1].fidelity, kRateF[n], 1e-3);
  ASSERT_EQ(r.tau_us.rows(), 3);
  ASSERT_EQ(r.tau_us.cols(), 3);
  const double expected[3][3] = {{51, 26, 17}, {NAN, 639, 228}, {NAN, NAN, 4862}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (std::isnan(expected[i][j])) {
        EXPECT_TRUE(std::isnan(r.tau_us(i, j))) << r.row_labels[static_cast<std::size_t>(i)] << " n=" << j + 1;
      } else {
        EXPECT_NEAR(r.tau_us(i, j), expected[i][j], 0.02 * expected[i][j]) << r.row_labels[static_cast<std::size_t>(i)];
      }
    }
}

TEST(RateAnalytics, EmptyConfigGivesUnpumpedColumnOnly) {
  ScenarioSpec s;
  s.label = "bare";
  s.kind = ScenarioKind::RateAnalytics;
  const auto r = run_rate_analytics(s);
  EXPECT_TRUE(r.rows.empty());
  ASSERT_EQ(r.tau_us.rows(), 1);
  const double kc = 2.0 * std::numbers::pi * 3.1e-3;
  for (Eigen::Index n = 1; n <= 3; ++n) EXPECT_NEAR(r.tau_us(0, n - 1), 1.0 / (static_cast<double>(n) * kc), 1e-9);
}

TEST(WignerSnapshot, FockOneIsNegativeAtOrigin) {
  ScenarioSpec s;
  s.label = "snap";
  s.kind = ScenarioKind::WignerSnapshot;
  s.initial = InitialState::number(1);
  s.wigner.points = 21;
  s.calibration = ReadoutCalibration{};
  const auto r = run_wigner_snapshot(s);
  EXPECT_NEAR(r.grid.values(10, 10), -2.0 / std::numbers::pi, 1e-9);
  ASSERT_TRUE(r.normalized.has_value());
  EXPECT_NEAR(r.normalized->values(10, 10), -2.0 / std::numbers::pi / 0.924, 1e-9);
}

TEST(Scenarios, Deterministic) {
  auto s = stabilize(2, ModelLevel::LindbladIdeal);
  s.duration_us = 4.0;
  s.sample_every_us = 1.0;
  s.wigner.points = 11;
  const auto a = run_stabilize(s);
  const auto b = run_stabilize(s);
  EXPECT_EQ(a.trace.populations, b.trace.populations);
  EXPECT_EQ(a.final_wigner->values, b.final_wigner->values);
}

}  // namespace
}  // namespace fockstab
