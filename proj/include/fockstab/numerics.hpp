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

namespace fockstab {

/// Every tolerance the library checks against. One record, shared by all
/// modules and by the property tests.
struct NumericsConfig {
  double hermitian_tol = 1e-10;        // max |A - A^dagger| elementwise
  double trace_tol = 1e-9;             // |tr(rho) - 1| for a DensityMatrix
  double positivity_tol = 1e-8;        // min eigenvalue floor for a DensityMatrix
  double eig_reconstruction_tol = 1e-9;  // relative to ||A||
  double general_eig_residual_tol = 1e-8;
  double unitary_tol = 1e-8;
  double purity_tol = 1e-9;            // pure target: tr(sigma^2) >= 1 - purity_tol
  double evolve_trace_drift_warn = 1e-6;
  double evolve_trace_drift_abort = 1e-4;
  double evolve_positivity_floor = 1e-6;
  double top_level_occupancy_warn = 1e-3;
  double steady_state_residual_tol = 1e-8;
  double steady_state_rank_tol = 1e-10;  // relative pivot threshold
  double stationarity_tol_per_us = 1e-7;
  double zero_eigenvalue_tol = 1e-10;
  double rate_column_sum_tol = 1e-12;
  double populations_sum_tol = 1e-9;
  double defective_condition_limit = 1e12;
  double decay_mode_min_weight = 1e-6;
  double dt_safety_divisor = 20.0;     // dt <= 1 / (divisor * f_max)
};

const NumericsConfig& numerics();

}  // namespace fockstab
