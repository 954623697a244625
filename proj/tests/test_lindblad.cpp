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
#include <random>

#include "fockstab/errors.hpp"
#include "fockstab/kernels.hpp"
#include "fockstab/lindblad.hpp"
#include "fockstab/rate.hpp"

namespace fockstab {
namespace {

Matrix random_density(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto n = static_cast<Eigen::Index>(d);
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx{g(rng), g(rng)};
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

Matrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto n = static_cast<Eigen::Index>(d);
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx{g(rng), g(rng)};
  return 0.5 * (a + a.adjoint());
}

TimeDependentHamiltonian static_h(const Operator& h) { return {h, {}, {}}; }

struct Cspa01 {
  SystemParams params = SystemParams::device_defaults();
  DriveComb comb = DriveComb::addition({{0, AngularRate::from_khz(86), AngularRate::from_khz(400), {}}});
  SpaceLayout layout = default_layout(comb);
  TimeDependentHamiltonian h;
  std::vector<CollapseOperator> ops;

  Cspa01() : h(build_drive(comb, params, layout)) {
    DissipationChannels ch;
    ch.qubit_relaxation = false;
    ch.qubit_dephasing = false;
    ops = collapse_ops(params, layout, ch);
  }
  DensityMatrix vacuum() const {
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    psi(0) = 1.0;
    return DensityMatrix::from_ket(layout, psi);
  }
};

TEST(LindbladRhs, ZeroWithoutDynamics) {
  const auto layout = SpaceLayout::single(3);
  const auto rho = fock_state(3, 1);
  EXPECT_EQ(lindblad_rhs(rho, Operator::zero(layout), {}).cwiseAbs().maxCoeff(), 0.0);
}

TEST(LindbladRhs, SingleDecayChannel) {
  const double kappa = 0.7;
  const std::vector<CollapseOperator> ops{{"a", annihilation(2) * cplx{std::sqrt(kappa), 0.0}}};
  const auto d = lindblad_rhs(fock_state(2, 1), Operator::zero(SpaceLayout::single(2)), ops);
  EXPECT_NEAR(d(1, 1).real(), -kappa, 1e-15);
  EXPECT_NEAR(d(0, 0).real(), kappa, 1e-15);
}

TEST(LindbladRhs, HermitianTracelessForRandomInputs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 6);
    const auto layout = SpaceLayout::single(d);
    const auto rho = DensityMatrix::from_matrix(layout, random_density(d, rng));
    std::vector<CollapseOperator> ops;
    for (int k = 0; k < 3; ++k) ops.push_back({"l", Operator{layout, random_density(d, rng) + random_hermitian(d, rng)}});
    const Matrix out = lindblad_rhs(rho, Operator{layout, random_hermitian(d, rng)}, ops);
    EXPECT_LT(std::abs(out.trace()), 1e-12);
    EXPECT_LT((out - out.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(LindbladRhs, ShapeMismatchThrows) {
  EXPECT_THROW(lindblad_rhs(fock_state(3, 0), Operator::zero(SpaceLayout::single(2)), {}), DomainError);
  const std::vector<CollapseOperator> ops{{"a", annihilation(4)}};
  EXPECT_THROW(lindblad_rhs(fock_state(3, 0), Operator::zero(SpaceLayout::single(3)), ops), DomainError);
}

TEST(Evolve, RabiOscillation) {
  const auto layout = SpaceLayout::cavity_qubit_resonator(2, 2, 2);
  const double om = 2.0 * std::numbers::pi * 0.5;
  Matrix h = Matrix::Zero(8, 8);
  h(layout.index({0, 1, 0}), layout.index({0, 0, 0})) = om;
  h(layout.index({0, 0, 0}), layout.index({0, 1, 0})) = om;
  Vector psi = Vector::Zero(8);
  psi(0) = 1.0;
  EvolveOptions o;
  o.t1_us = 3.0;
  o.dt_us = 0.004;
  o.sample_every_us = 0.1;
  const auto r = evolve(DensityMatrix::from_ket(layout, psi), static_h(Operator{layout, h}), {}, o);
  ASSERT_EQ(r.times_us.size(), 31u);
  for (std::size_t k = 0; k < r.times_us.size(); ++k) {
    const double s = std::sin(om * r.times_us[k]);
    EXPECT_NEAR(r.qubit_excited_prob[k], s * s, 1e-6);
  }
}

TEST(Evolve, CavityDecayFromThree) {
  auto p = SystemParams::device_defaults();
  const auto layout = SpaceLayout::cavity_qubit_resonator(5, 2, 2);
  DissipationChannels ch = DissipationChannels::none();
  ch.cavity_decay = true;
  const auto ops = collapse_ops(p, layout, ch);
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  psi(static_cast<Eigen::Index>(layout.index({3, 0, 0}))) = 1.0;
  EvolveOptions o;
  o.t1_us = 100.0;
  o.dt_us = 0.05;
  o.sample_every_us = 10.0;
  const auto r = evolve(DensityMatrix::from_ket(layout, psi), static_h(Operator::zero(layout)), ops, o);
  const double k = p.kappa_c.rad_per_us();
  for (Eigen::Index row = 0; row < r.cavity_populations.rows(); ++row) {
    double mean = 0.0;
    for (Eigen::Index i = 0; i < r.cavity_populations.cols(); ++i) mean += static_cast<double>(i) * r.cavity_populations(row, i);
    EXPECT_NEAR(mean, 3.0 * std::exp(-k * r.times_us[static_cast<std::size_t>(row)]), 1e-6);
  }
}

TEST(Evolve, MatchesRateModelWithDrivesOff) {
  auto p = SystemParams::device_defaults();
  const auto layout = SpaceLayout::cavity_qubit_resonator(5, 2, 2);
  DissipationChannels ch = DissipationChannels::none();
  ch.cavity_decay = true;
  const auto ops = collapse_ops(p, layout, ch);
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  psi(static_cast<Eigen::Index>(layout.index({2, 0, 0}))) = std::sqrt(0.5);
  psi(static_cast<Eigen::Index>(layout.index({4, 0, 0}))) = std::sqrt(0.5);
  EvolveOptions o;
  o.t1_us = 120.0;
  o.dt_us = 0.05;
  o.sample_every_us = 20.0;
  const auto r = evolve(DensityMatrix::from_ket(layout, psi), static_h(Operator::zero(layout)), ops, o);
  const std::vector<double> zeros(5, 0.0);
  const auto model = build_rate_matrix(zeros, p.kappa_c.khz(), 5);
  const std::vector<double> p0{0, 0, 0.5, 0, 0.5};
  const auto traj = evolve_populations(model, p0, r.times_us);
  EXPECT_LT((traj.populations - r.cavity_populations).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Evolve, RejectsOversizedStepAndEmptySpan) {
  Cspa01 s;
  EvolveOptions o;
  o.t1_us = 1.0;
  o.dt_us = 1.0;
  EXPECT_THROW(evolve(s.vacuum(), s.h, s.ops, o), DomainError);
  o.dt_us = 0.0;
  o.t1_us = 0.0;
  EXPECT_THROW(evolve(s.vacuum(), s.h, s.ops, o), DomainError);
}

TEST(Evolve, TraceAndPositivityHoldForDrivenRun) {
  Cspa01 s;
  EvolveOptions o;
  o.t1_us = 20.0;
  o.sample_every_us = 0.5;
  const auto r = evolve(s.vacuum(), s.h, s.ops, o);
  EXPECT_LE(r.diagnostics.max_trace_drift, 1e-6);
  EXPECT_GE(r.diagnostics.min_eigenvalue_floor, -1e-6);
  for (Eigen::Index row = 0; row < r.cavity_populations.rows(); ++row)
    EXPECT_NEAR(r.cavity_populations.row(row).sum(), 1.0, 1e-6);
  EXPECT_NEAR(r.times_us.back(), 20.0, 1e-12);
  EXPECT_NEAR(r.times_us[7], 3.5, 1e-12);
}

TEST(Evolve, StepHalvingConverges) {
  Cspa01 s;
  EvolveOptions o;
  o.t1_us = 10.0;
  o.sample_every_us = 10.0;
  const auto a = evolve(s.vacuum(), s.h, s.ops, o);
  o.dt_us = 0.5 * a.diagnostics.dt_us;
  const auto b = evolve(s.vacuum(), s.h, s.ops, o);
  EXPECT_LT((a.cavity_populations.bottomRows(1) - b.cavity_populations.bottomRows(1)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Evolve, KernelVariantsAgree) {
  if (!kernels::isa_available(kernels::Isa::Avx2)) GTEST_SKIP() << "AVX2 unavailable";
  Cspa01 s;
  EvolveOptions o;
  o.t1_us = 5.0;
  o.sample_every_us = 1.0;
  const auto previous = kernels::active().isa;
  kernels::set_active(kernels::Isa::Scalar);
  const auto a = evolve(s.vacuum(), s.h, s.ops, o);
  kernels::set_active(kernels::Isa::Avx2);
  const auto b = evolve(s.vacuum(), s.h, s.ops, o);
  kernels::set_active(previous);
  EXPECT_EQ(a.diagnostics.kernel, "scalar");
  EXPECT_LT((a.final_state.data() - b.final_state.data()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Evolve, IsDeterministic) {
  Cspa01 s;
  EvolveOptions o;
  o.t1_us = 3.0;
  o.sample_every_us = 1.0;
  const auto a = evolve(s.vacuum(), s.h, s.ops, o);
  const auto b = evolve(s.vacuum(), s.h, s.ops, o);
  EXPECT_EQ(a.cavity_populations, b.cavity_populations);
}

TEST(Evolve, WarnsOnTopLevelOccupancy) {
  const auto layout = SpaceLayout::cavity_qubit_resonator(2, 2, 2);
  Vector psi = Vector::Zero(8);
  psi(static_cast<Eigen::Index>(layout.index({1, 0, 0}))) = 1.0;
  EvolveOptions o;
  o.t1_us = 1.0;
  const auto r = evolve(DensityMatrix::from_ket(layout, psi), static_h(Operator::zero(layout)), {}, o);
  EXPECT_FALSE(r.diagnostics.warnings.empty());
}

TEST(Evolve, StopsWhenStationary) {
  Cspa01 s;
  EvolveOptions o;
  o.t1_us = 2000.0;
  o.sample_every_us = 5.0;
  o.stop_when_stationary = true;
  const auto r = evolve(s.vacuum(), s.h, s.ops, o);
  EXPECT_TRUE(r.diagnostics.stopped_stationary);
  EXPECT_LT(r.times_us.back(), 2000.0);
}

TEST(SteadyState, PureDecayGivesVacuum) {
  const auto p = SystemParams::device_defaults();
  const auto layout = SpaceLayout::cavity_qubit_resonator(4, 2, 2);
  const auto ss = steady_state(static_h(build_h0(p, layout)), collapse_ops(p, layout));
  EXPECT_NEAR(ss.population(0), 1.0, 1e-9);
}

TEST(SteadyState, NoDissipationIsDegenerate) {
  const auto layout = SpaceLayout::cavity_qubit_resonator(2, 2, 2);
  try {
    steady_state(static_h(Operator::zero(layout)), {});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("dimension"), std::string::npos);
  }
}

TEST(SteadyState, RejectsOscillatingTerms) {
  const auto p = SystemParams::device_defaults();
  const DriveComb c = DriveComb::addition(
      {{0, AngularRate::from_khz(86), AngularRate::from_khz(400), {}}, {1, AngularRate::from_khz(86), AngularRate::from_khz(380), {}}},
      true);
  const auto layout = default_layout(c);
  EXPECT_THROW(steady_state(build_drive(c, p, layout), collapse_ops(p, layout)), DomainError);
}

TEST(SteadyState, Cspa01MatchesRateAndLongEvolve) {
  Cspa01 s;
  const auto ss = steady_state(s.h, s.ops);
  EXPECT_LE(lindblad_rhs(ss, s.h.static_part, s.ops).cwiseAbs().maxCoeff(), 1e-8);
  const double p1 = photon_populations(ss)[1];
  EXPECT_NEAR(p1, 0.957, 0.03);
  EvolveOptions o;
  o.t1_us = 600.0;
  o.sample_every_us = 600.0;
  const auto r = evolve(s.vacuum(), s.h, s.ops, o);
  EXPECT_NEAR(photon_populations(r.final_state)[1], p1, 1e-4);
}

TEST(PhotonPopulations, Examples) {
  const auto layout = SpaceLayout::cavity_qubit_resonator(4, 2, 2);
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  psi(static_cast<Eigen::Index>(layout.index({2, 0, 0}))) = 1.0;
  EXPECT_NEAR(photon_populations(DensityMatrix::from_ket(layout, psi))[2], 1.0, 1e-15);
  const auto mixed = DensityMatrix::from_matrix(SpaceLayout::single(4), Matrix::Identity(4, 4) * 0.25);
  for (double v : photon_populations(mixed)) EXPECT_NEAR(v, 0.25, 1e-15);
  const auto d = displacement(cplx{1.0, 0.0}, 20);
  Vector vac = Vector::Zero(20);
  vac(0) = 1.0;
  const Vector coh = d.op.data() * vac;
  const auto pops = photon_populations(DensityMatrix::from_ket(SpaceLayout::single(20), coh / coh.norm()));
  double fact = 1.0, sum = 0.0;
  for (std::size_t n = 0; n < 10; ++n) {
    if (n > 0) fact *= static_cast<double>(n);
    EXPECT_NEAR(pops[n], std::exp(-1.0) / fact, 1e-6);
  }
  for (double v : pops) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(WignerGrid, BoundedAndNormalized) {
  std::mt19937_64 rng(5);
  WignerGridSpec spec;
  spec.alpha_max = 4.0;
  spec.points = 81;
  for (std::size_t n : {0u, 1u, 3u}) {
    const auto g = wigner(fock_state(6, n), spec);
    EXPECT_NEAR(g.integral(), 1.0, 2e-2);
    EXPECT_LE(g.values.cwiseAbs().maxCoeff(), 2.0 / std::numbers::pi + 1e-6);
  }
  const auto g = wigner(DensityMatrix::from_matrix(SpaceLayout::single(4), random_density(4, rng)), spec);
  EXPECT_NEAR(g.integral(), 1.0, 2e-2);
  EXPECT_LE(g.values.cwiseAbs().maxCoeff(), 2.0 / std::numbers::pi + 1e-6);
  EXPECT_NEAR(wigner_at(fock_state(4, 0), 0.0), 2.0 / std::numbers::pi, 1e-12);
  EXPECT_THROW(wigner(tensor({fock_state(2, 0), fock_state(2, 0)}), spec), DomainError);
}

TEST(StateFidelity, Examples) {
  EXPECT_NEAR(state_fidelity(fock_state(4, 2), fock_state(4, 2)), 1.0, 1e-15);
  EXPECT_NEAR(state_fidelity(fock_state(4, 1), fock_state(4, 2)), 0.0, 1e-15);
  const auto mixed = DensityMatrix::from_matrix(SpaceLayout::single(4), Matrix::Identity(4, 4) * 0.25);
  EXPECT_NEAR(state_fidelity(mixed, fock_state(4, 3)), 0.25, 1e-15);
  EXPECT_THROW(state_fidelity(fock_state(4, 3), mixed), DomainError);
}

}  // namespace
}  // namespace fockstab
