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

#include "fockstab/mitigation.hpp"

#include <cmath>
#include <numbers>

#include "fockstab/errors.hpp"

namespace fockstab {

void ReadoutCalibration::validate() const {
  if (!(f_g > 0.5 && f_g <= 1.0) || !(f_e > 0.5 && f_e <= 1.0))
    throw DomainError("ReadoutCalibration: assignment fidelities must lie in (0.5, 1]");
  if (!(f_g + f_e > 1.0)) throw DomainError("ReadoutCalibration: f_g + f_e must exceed 1");
  if (!(w0 > 0.0 && w0 <= 1.0)) throw DomainError("ReadoutCalibration: w0 must lie in (0, 1]");
  if (p_b && !(*p_b >= 0.0 && *p_b < 1.0)) throw DomainError("ReadoutCalibration: p_b must lie in [0, 1)");
  if (a0 && a1 && !(*a0 + *a1 > 0.0)) throw DomainError("ReadoutCalibration: a0 + a1 must be > 0");
}

double ReadoutCalibration::rabi_amplitude_sum() const {
  if (!a0 || !a1) throw DomainError("ReadoutCalibration: a0 and a1 are not set");
  const double s = *a0 + *a1;
  if (!(s > 0.0)) throw DomainError("ReadoutCalibration: a0 + a1 must be > 0");
  return s;
}

double ReadoutCalibration::thermal_fraction() const { return *a1 / rabi_amplitude_sum(); }

std::array<double, 2> qubit_readout_forward(std::array<double, 2> p, const ReadoutCalibration& cal) {
  return {cal.f_g * p[0] + (1.0 - cal.f_e) * p[1], (1.0 - cal.f_g) * p[0] + cal.f_e * p[1]};
}

CorrectedQubit qubit_readout_correct(std::array<double, 2> p, const ReadoutCalibration& cal) {
  const double det = cal.f_g + cal.f_e - 1.0;  // det M
  if (std::abs(det) < 1e-15) throw DomainError("qubit_readout_correct: calibration matrix is singular");
  for (double v : p)
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("qubit_readout_correct: measured probabilities must lie in [0, 1]");
  if (std::abs(p[0] + p[1] - 1.0) > 1e-6) throw DomainError("qubit_readout_correct: measured probabilities must sum to 1");
  CorrectedQubit out;
  out.p_g = (cal.f_e * p[0] - (1.0 - cal.f_e) * p[1]) / det;
  out.p_e = (cal.f_g * p[1] - (1.0 - cal.f_g) * p[0]) / det;
  out.out_of_range = out.p_g < 0.0 || out.p_g > 1.0 || out.p_e < 0.0 || out.p_e > 1.0;
  return out;
}

std::vector<double> photon_population_forward(std::span<const double> populations, const ReadoutCalibration& cal) {
  const double scale = cal.rabi_amplitude_sum();
  if (!cal.p_b) throw DomainError("ReadoutCalibration: p_b is not set");
  std::vector<double> out;
  out.reserve(populations.size());
  for (double p : populations) out.push_back(scale * p + *cal.p_b);
  return out;
}

CorrectedPopulations photon_population_correct(std::span<const double> p_excited, const ReadoutCalibration& cal) {
  const double scale = cal.rabi_amplitude_sum();
  if (!cal.p_b) throw DomainError("ReadoutCalibration: p_b is not set");
  CorrectedPopulations out;
  out.populations.reserve(p_excited.size());
  for (double v : p_excited) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("photon_population_correct: excited probabilities must lie in [0, 1]");
    const double p = (v - *cal.p_b) / scale;
    out.out_of_range = out.out_of_range || p < 0.0 || p > 1.0;
    out.sum += p;
    out.populations.push_back(p);
  }
  return out;
}

double wigner_normalize(double w, const ReadoutCalibration& cal) {
  if (!(cal.w0 > 0.0)) throw DomainError("wigner_normalize: w0 must be > 0");
  return w / cal.w0;
}

WignerGrid wigner_normalize(const WignerGrid& grid, const ReadoutCalibration& cal) {
  if (!(cal.w0 > 0.0)) throw DomainError("wigner_normalize: w0 must be > 0");
  WignerGrid out = grid;
  out.values /= cal.w0;
  return out;
}

namespace {

// exp(-i phi sigma_x / 2) on the |g>,|e> block of the qubit; identity on |f>.
Operator qubit_x_rotation(const SpaceLayout& layout, double phi) {
  const std::size_t dq = layout.dim(Subsystem::Qubit);
  const auto d = static_cast<Eigen::Index>(dq);
  Matrix u = Matrix::Identity(d, d);
  const double c = std::cos(phi / 2.0), s = std::sin(phi / 2.0);
  u(0, 0) = c;
  u(1, 1) = c;
  u(0, 1) = cplx{0.0, -s};
  u(1, 0) = cplx{0.0, -s};
  return embed(Operator{SpaceLayout::single(dq), u}, Subsystem::Qubit, layout);
}

Operator conditional_parity(const SpaceLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  Matrix u = Matrix::Identity(n, n);
  for (std::size_t idx = 0; idx < layout.total_dim(); ++idx) {
    const auto lab = layout.labels(idx);
    if (lab[1] == 1 && lab[0] % 2 == 1) u(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) = -1.0;
  }
  return {layout, std::move(u)};
}

double ground_probability(const DensityMatrix& rho) { return 1.0 - qubit_excited_probability(rho); }

DensityMatrix conjugate(const Operator& u, const DensityMatrix& rho) {
  return DensityMatrix::unchecked(rho.layout(), u.data() * rho.data() * u.data().adjoint());
}

}  // namespace

ParityContrast simulate_parity_contrast(const DensityMatrix& rho, const std::optional<ParityNoise>& noise) {
  const auto& layout = rho.layout();
  if (layout.subsystem_count() < 2 || layout.dim(Subsystem::Qubit) < 2)
    throw DomainError("simulate_parity_contrast: state needs a qubit subsystem with d_q >= 2");
  const Operator x_half = qubit_x_rotation(layout, std::numbers::pi / 2.0);
  const DensityMatrix after_first = conjugate(x_half, rho);

  ParityContrast out;
  DensityMatrix after_cpi = after_first;
  if (!noise) {
    after_cpi = conjugate(conditional_parity(layout), after_first);
  } else {
    if (layout.subsystem_count() != 3)
      throw DomainError("simulate_parity_contrast: noisy gate needs a (cavity, qubit, resonator) layout");
    const double chi = noise->params.chi_qc.rad_per_us();
    out.gate_time_us = std::numbers::pi / chi;
    TimeDependentHamiltonian h{build_h0(noise->params, layout), {}, {}};
    const auto ops = collapse_ops(noise->params, layout, noise->channels);
    EvolveOptions opts;
    opts.t1_us = out.gate_time_us;
    opts.dt_us = noise->dt_us;
    opts.check_positivity = false;
    after_cpi = evolve(after_first, h, ops, opts).final_state;
  }
  out.p_plus = ground_probability(conjugate(x_half, after_cpi));
  out.p_minus = ground_probability(conjugate(x_half.adjoint(), after_cpi));
  out.contrast = out.p_minus - out.p_plus;
  return out;
}

}  // namespace fockstab
