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

// Birth-death model of the cavity photon-number populations:
//   dP_i/dt = lam_{i-1} P_{i-1} - lam_i P_i - i kc P_i + (i+1) kc P_{i+1}
// Rates are accepted as nu = omega/2pi in kHz and stored angular (rad/us), so
// trajectories take times in us and decay times come out in us.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fockstab/model.hpp"

namespace fockstab {

/// 1 / (1/Omega + 1/J + 1/kappa_r). Any consistent unit; result in the same.
double stabilization_rate(double omega, double j, double kappa_r);

/// Pump rate per source level (kHz, nu units) for an addition comb, from each
/// tone's Omega and J and the resonator decay rate.
std::vector<double> pump_rates_khz(const DriveComb& comb, const SystemParams& params);

struct RateModel {
  std::vector<double> lambdas_khz;  // indexed by source level, length dim
  double kappa_c_khz = 0.0;
  std::size_t dim = 0;
  Eigen::MatrixXd gamma;            // rad/us
  Eigen::VectorXcd eigenvalues;     // rad/us
  Eigen::MatrixXcd eigenvectors;    // unit-norm columns
  double eigenvector_condition = 0.0;

  /// Highest level reached by pumping (0 when there is no pump).
  std::size_t pump_target() const;
  /// True when every level below pump_target() is pumped.
  bool pumps_contiguous_from_vacuum() const;
};

/// Throws DomainError when a pump sits on the top truncation level or a rate
/// is negative.
RateModel build_rate_matrix(std::span<const double> lambdas_khz, double kappa_c_khz, std::size_t dim);

struct PopulationTrajectory {
  std::vector<double> times_us;
  Eigen::MatrixXd populations;  // one row per time
  bool used_expm_fallback = false;
  double eigenvector_condition = 0.0;
};

/// P(t) = sum_i c_i r_i exp(eta_i t) with V c = p0. Falls back to expm(Gamma t)
/// when the eigenvector basis is numerically rank deficient.
PopulationTrajectory evolve_populations(const RateModel& model, std::span<const double> p0,
                                        std::span<const double> times_us);

/// Steady state from P_i = (i+1) kc / lam_i * P_{i+1}, normalized. Throws
/// DomainError unless pumping covers every level below the target.
std::vector<double> steady_populations(const RateModel& model);

/// Same steady state as the normalized null vector of Gamma.
std::vector<double> null_vector_populations(const RateModel& model);

/// Closed-form steady population of |n> under contiguous pumping from vacuum.
double steady_fidelity(std::span<const double> lambdas_khz, double kappa_c_khz, std::size_t n);

struct DecayMode {
  double tau_us = 0.0;
  double eta = 0.0;     // rad/us (real part)
  double weight = 0.0;  // |c_k r_k[n]| for the initial state |n>
  std::size_t index = 0;
};

/// Lifetime of |n>: among the nonzero eigenvalues, the mode carrying the
/// largest share of P_n(t) when starting from |n> (ties go to the slower mode).
DecayMode decay_time(const RateModel& model, std::size_t n);

}  // namespace fockstab
