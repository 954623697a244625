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

#include <random>

#include "fockstab/errors.hpp"
#include "fockstab/mitigation.hpp"

namespace fockstab {
namespace {

ReadoutCalibration full_cal() {
  ReadoutCalibration c;
  c.a0 = 0.995 * 0.8;
  c.a1 = 0.005 * 0.8;
  c.p_b = 0.03;
  return c;
}

DensityMatrix composite_fock(std::size_t n, std::size_t dq = 2) {
  const auto layout = SpaceLayout::cavity_qubit_resonator(4, dq, 2);
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  psi(static_cast<Eigen::Index>(layout.index({n, 0, 0}))) = 1.0;
  return DensityMatrix::from_ket(layout, psi);
}

TEST(Calibration, Validation) {
  EXPECT_NO_THROW(ReadoutCalibration{}.validate());
  ReadoutCalibration c;
  c.f_g = 0.4;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.w0 = 1.2;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.p_b = 1.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  EXPECT_THROW(c.rabi_amplitude_sum(), DomainError);
  EXPECT_NEAR(full_cal().thermal_fraction(), 0.005, 1e-15);
}

TEST(QubitReadout, Examples) {
  ReadoutCalibration ideal;
  ideal.f_g = ideal.f_e = 1.0;
  const auto id = qubit_readout_correct({0.3, 0.7}, ideal);
  EXPECT_DOUBLE_EQ(id.p_g, 0.3);
  EXPECT_DOUBLE_EQ(id.p_e, 0.7);
  const ReadoutCalibration cal;
  const auto g = qubit_readout_correct({0.985, 0.015}, cal);
  EXPECT_NEAR(g.p_g, 1.0, 1e-12);
  EXPECT_NEAR(g.p_e, 0.0, 1e-12);
  EXPECT_FALSE(qubit_readout_correct({0.97, 0.03}, cal).out_of_range);
  const auto over = qubit_readout_correct({0.995, 0.005}, cal);
  EXPECT_TRUE(over.out_of_range);
  EXPECT_GT(over.p_g, 1.0);
  EXPECT_THROW(qubit_readout_correct({0.6, 0.6}, cal), DomainError);
  ReadoutCalibration singular;
  singular.f_g = 0.5;
  singular.f_e = 0.5;
  EXPECT_THROW(qubit_readout_correct({0.5, 0.5}, singular), DomainError);
}

TEST(QubitReadout, RoundTripOnRandomInputs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0), f(0.6, 1.0);
  for (int k = 0; k < 500; ++k) {
    ReadoutCalibration cal;
    cal.f_g = f(rng);
    cal.f_e = f(rng);
    const double pg = u(rng);
    const auto fwd = qubit_readout_forward({pg, 1.0 - pg}, cal);
    const auto back = qubit_readout_correct(fwd, cal);
    EXPECT_NEAR(back.p_g, pg, 1e-12);
    EXPECT_NEAR(back.p_e, 1.0 - pg, 1e-12);
    EXPECT_NEAR(back.p_g + back.p_e, 1.0, 1e-9);
    const auto c2 = qubit_readout_correct({pg, 1.0 - pg}, cal);
    const auto re = qubit_readout_forward({c2.p_g, c2.p_e}, cal);
    EXPECT_NEAR(re[0], pg, 1e-12);
  }
}

TEST(PhotonPopulations, CorrectionExamplesAndAffinity) {
  const auto cal = full_cal();
  const std::vector<double> bg(4, *cal.p_b);
  for (double v : photon_population_correct(bg, cal).populations) EXPECT_NEAR(v, 0.0, 1e-15);
  const std::vector<double> truth{0.05, 0.9, 0.04, 0.01};
  const auto rt = photon_population_correct(photon_population_forward(truth, cal), cal);
  for (std::size_t i = 0; i < truth.size(); ++i) EXPECT_NEAR(rt.populations[i], truth[i], 1e-12);
  EXPECT_NEAR(rt.sum, 1.0, 1e-12);
  EXPECT_FALSE(rt.out_of_range);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 0.5), w(-0.5, 1.0);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x(3), y(3), z(3, 0.0), mix(3);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    const double a = w(rng), b = w(rng);
    bool in_range = true;
    for (std::size_t i = 0; i < 3; ++i) {
      mix[i] = a * x[i] + b * y[i];
      in_range = in_range && mix[i] >= 0.0 && mix[i] <= 1.0;
    }
    if (!in_range) continue;
    const auto cx = photon_population_correct(x, cal).populations;
    const auto cy = photon_population_correct(y, cal).populations;
    const auto cz = photon_population_correct(z, cal).populations;
    const auto cm = photon_population_correct(mix, cal).populations;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(cm[i], a * cx[i] + b * cy[i] + (1 - a - b) * cz[i], 1e-12);
  }
  EXPECT_THROW(photon_population_correct(std::vector<double>{1.2}, cal), DomainError);
  EXPECT_THROW(photon_population_correct(std::vector<double>{0.2}, ReadoutCalibration{}), DomainError);
}

TEST(WignerNormalize, ScalarAndGrid) {
  const ReadoutCalibration cal;
  EXPECT_DOUBLE_EQ(wigner_normalize(cal.w0, cal), 1.0);
  EXPECT_NEAR(wigner_normalize(-0.462, cal), -0.5, 1e-12);
  ReadoutCalibration unit;
  unit.w0 = 1.0;
  EXPECT_EQ(wigner_normalize(wigner_normalize(0.3, cal), unit), wigner_normalize(0.3, cal));
  ReadoutCalibration bad;
  bad.w0 = 0.0;
  EXPECT_THROW(wigner_normalize(0.3, bad), DomainError);

  WignerGridSpec spec;
  spec.points = 21;
  const auto g = wigner(fock_state(4, 1), spec);
  const auto n = wigner_normalize(g, cal);
  for (Eigen::Index i = 0; i < g.values.rows(); ++i)
    for (Eigen::Index j = 0; j < g.values.cols(); ++j) {
      EXPECT_NEAR(n.values(i, j) * cal.w0, g.values(i, j), 1e-15);
      EXPECT_EQ(std::signbit(n.values(i, j)), std::signbit(g.values(i, j)));
    }
}

TEST(ParityContrast, IdealStates) {
  EXPECT_NEAR(simulate_parity_contrast(composite_fock(0)).contrast, 1.0, 1e-12);
  EXPECT_NEAR(simulate_parity_contrast(composite_fock(1)).contrast, -1.0, 1e-12);
  EXPECT_NEAR(simulate_parity_contrast(composite_fock(2)).contrast, 1.0, 1e-12);
  const auto mixed = DensityMatrix::from_matrix(
      composite_fock(0).layout(), 0.5 * (composite_fock(0).data() + composite_fock(1).data()));
  EXPECT_NEAR(simulate_parity_contrast(mixed).contrast, 0.0, 1e-12);
  EXPECT_THROW(simulate_parity_contrast(fock_state(3, 0)), DomainError);
}

TEST(ParityContrast, DecoherenceReducesContrast) {
  ParityNoise noise{SystemParams::device_defaults(), {}, 0.0};
  const auto c = simulate_parity_contrast(composite_fock(0), noise);
  EXPECT_LT(c.contrast, 1.0);
  EXPECT_GT(c.contrast, 0.9);
  EXPECT_NEAR(c.gate_time_us, 1.0 / (2.0 * 7.72), 1e-9);
}

}  // namespace
}  // namespace fockstab
