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

#pragma once

// Master-equation integration, steady states and observables.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fockstab/hilbert.hpp"
#include "fockstab/model.hpp"

namespace fockstab {

/// drho/dt = -i[H, rho] + sum_k (L rho L^dagger - {L^dagger L, rho} / 2)
Matrix lindblad_rhs(const DensityMatrix& rho, const Operator& hamiltonian,
                    std::span<const CollapseOperator> collapse);

/// Largest step the integrator accepts: 1 / (20 * f_max), where f_max is the
/// largest oscillating frequency plus a norm bound on the generator
/// (||H_static|| + 2 sum ||op_k|| + sum ||L^dagger L|| / 2, infinity norms).
double max_stable_dt(const TimeDependentHamiltonian& hamiltonian, std::span<const CollapseOperator> collapse);

struct EvolveOptions {
  double t0_us = 0.0;
  double t1_us = 0.0;
  double dt_us = 0.0;            // 0 selects max_stable_dt
  double sample_every_us = 0.0;  // 0 samples only the endpoints
  bool keep_states = false;
  bool check_positivity = true;
  /// Stop early once max_i |dP_i| / dt_sample drops below the threshold.
  bool stop_when_stationary = false;
  double stationarity_tol_per_us = 0.0;  // 0 selects numerics().stationarity_tol_per_us
};

struct EvolutionDiagnostics {
  double dt_us = 0.0;
  std::size_t steps = 0;
  double max_trace_drift = 0.0;
  double min_eigenvalue_floor = 0.0;
  double max_top_level_occupancy = 0.0;
  bool stopped_stationary = false;
  std::string kernel;
  std::vector<std::string> warnings;
};

struct EvolutionResult {
  std::vector<double> times_us;
  Eigen::MatrixXd cavity_populations;  // one row per sample
  std::vector<double> qubit_excited_prob;
  std::vector<DensityMatrix> full_states;  // only with keep_states
  DensityMatrix final_state = DensityMatrix::unchecked(SpaceLayout{}, Matrix::Ones(1, 1));
  EvolutionDiagnostics diagnostics;
};

/// Fixed-step fourth-order Runge-Kutta. Throws DomainError when dt exceeds
/// max_stable_dt, NumericalError when the trace drifts by more than 1e-4.
EvolutionResult evolve(const DensityMatrix& rho0, const TimeDependentHamiltonian& hamiltonian,
                       std::span<const CollapseOperator> collapse, const EvolveOptions& options);

/// Null vector of the vectorized generator, trace-normalized. Requires a
/// static Hamiltonian; throws DomainError when the stationary space is not
/// one-dimensional.
DensityMatrix steady_state(const TimeDependentHamiltonian& hamiltonian, std::span<const CollapseOperator> collapse);

/// Diagonal of the cavity-reduced state (subsystem 0).
std::vector<double> photon_populations(const DensityMatrix& rho);

/// 1 - P(qubit in |g>). Zero for single-subsystem states.
double qubit_excited_probability(const DensityMatrix& rho);

struct WignerGridSpec {
  double alpha_max = 2.5;
  std::size_t points = 61;
  std::size_t truncation_dim = 0;  // 0: pick one large enough for the grid
};

struct WignerGrid {
  std::vector<double> axis;  // shared by Re(alpha) and Im(alpha)
  Eigen::MatrixXd values;    // values(i, j) at alpha = axis[i] + i axis[j]
  std::size_t truncation_dim = 0;
  std::vector<std::string> warnings;

  cplx alpha(std::size_t i, std::size_t j) const { return {axis[i], axis[j]}; }
  /// Riemann sum of W over the grid.
  double integral() const;
};

/// W(alpha) = (2/pi) tr[D(alpha) P D(-alpha) rho] on a single-mode state.
WignerGrid wigner(const DensityMatrix& rho_cavity, const WignerGridSpec& spec);
double wigner_at(const DensityMatrix& rho_cavity, cplx alpha, std::size_t truncation_dim = 0);

/// <psi|rho|psi> for a pure target sigma = |psi><psi|.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace fockstab
