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

// End-to-end experiments: stabilization from vacuum, lifetime protection of
// a prepared Fock state, reset of a binomial logical qubit, rate-model
// tables, and single Wigner snapshots.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fockstab/hilbert.hpp"
#include "fockstab/lindblad.hpp"
#include "fockstab/mitigation.hpp"
#include "fockstab/model.hpp"
#include "fockstab/rate.hpp"

namespace fockstab {

enum class ScenarioKind { Stabilize, Protect, Reset, RateAnalytics, WignerSnapshot };
enum class ModelLevel { Rate, LindbladIdeal, LindbladSpurious };

const char* to_string(ScenarioKind kind);
const char* to_string(ModelLevel level);
std::optional<ScenarioKind> parse_scenario_kind(const std::string& s);
std::optional<ModelLevel> parse_model_level(const std::string& s);

struct InitialState {
  enum class Kind { Fock, Logical0, Logical1, LogicalPlusI };
  Kind kind = Kind::Fock;
  std::size_t fock = 0;

  static InitialState vacuum() { return {}; }
  static InitialState number(std::size_t n) { return {Kind::Fock, n}; }
  std::string describe() const;
  /// Highest Fock level with support.
  std::size_t max_level() const;
  /// Cavity ket in a space of dimension `dim`.
  Vector cavity_ket(std::size_t dim) const;
};

/// One row of the rate-model table: a comb given either through its tones
/// or directly through per-level rates.
struct AnalyticsConfig {
  std::string label;
  DriveComb comb;
  std::vector<double> lambdas_khz;  // overrides the tones when non-empty; index = source level
};

struct ScenarioSpec {
  std::string label;
  ScenarioKind kind = ScenarioKind::Stabilize;
  SystemParams params = SystemParams::device_defaults();
  DissipationChannels channels;
  DriveComb comb;
  InitialState initial;
  ModelLevel model = ModelLevel::Rate;

  double duration_us = 100.0;
  double sample_every_us = 1.0;
  double dt_us = 0.0;               // 0 selects the solver bound
  std::size_t cavity_dim = 0;       // 0 selects a default truncation
  double steady_horizon_us = 400.0; // time budget for stroboscopic steady state of time-dependent models

  bool final_wigner = true;
  WignerGridSpec wigner;

  // protect
  double fit_drop_fraction = 0.2;
  double fit_residual_threshold = 1e-2;

  // reset
  bool include_csps = false;
  DriveComb csps;

  // rate-analytics
  std::vector<AnalyticsConfig> analytics;
  std::size_t analytics_max_n = 3;

  std::optional<ReadoutCalibration> calibration;

  /// Throws DomainError when the spec is inconsistent with its kind.
  void validate() const;
};

struct PopulationTrace {
  std::vector<double> times_us;
  Eigen::MatrixXd populations;        // one row per sample, one column per Fock level
  std::vector<double> qubit_excited;  // empty for the rate model
};

struct StabilizeResult {
  std::size_t target = 0;
  PopulationTrace trace;
  double saturation_pn = 0.0;  // mean of P_N over the last 10% of the trace
  double steady_pn = 0.0;      // steady state of the chosen model
  double rate_model_pn = 0.0;  // closed-form rate-model prediction
  std::vector<double> steady_populations;
  std::vector<double> lambdas_khz;
  std::optional<DensityMatrix> final_cavity_state;
  std::optional<WignerGrid> final_wigner;
  std::optional<EvolutionDiagnostics> diagnostics;
  std::vector<std::string> warnings;
};

struct ExponentialFit {
  double tau_us = 0.0;
  double amplitude = 0.0;
  double normalized_residual = 0.0;
  std::size_t points = 0;
  bool flagged = false;
};

/// Least-squares fit of ln y = ln A - t / tau over samples with t >= drop * t_end.
ExponentialFit fit_exponential(std::span<const double> times_us, std::span<const double> values,
                               double drop_fraction, double residual_threshold);

struct ProtectResult {
  std::size_t level = 0;
  PopulationTrace trace;
  ExponentialFit fit;
  DecayMode eigen_mode;
  std::vector<double> lambdas_khz;
  std::optional<DensityMatrix> final_cavity_state;
  std::optional<EvolutionDiagnostics> diagnostics;
  std::vector<std::string> warnings;
};

struct ResetResult {
  PopulationTrace trace;
  std::vector<double> fidelity_to_target;
  double rate_model_p2 = 0.0;
  double final_p2 = 0.0;
  double final_fidelity = 0.0;
  DensityMatrix initial_cavity_state = DensityMatrix::unchecked(SpaceLayout{}, Matrix::Ones(1, 1));
  DensityMatrix final_cavity_state = DensityMatrix::unchecked(SpaceLayout{}, Matrix::Ones(1, 1));
  WignerGrid initial_wigner;
  WignerGrid final_wigner;
  std::optional<EvolutionDiagnostics> diagnostics;
  std::vector<std::string> warnings;
};

struct AnalyticsRow {
  std::string label;
  std::size_t target = 0;
  std::vector<double> lambdas_khz;
  double fidelity = 0.0;
};

/// tau_us(r, n - 1): row 0 is the bare cavity, row k is CSPA_{n-k -> n};
/// NaN where the configuration does not exist.
struct RateAnalyticsResult {
  std::vector<AnalyticsRow> rows;
  Eigen::MatrixXd tau_us;
  std::vector<std::string> row_labels;
  std::size_t max_n = 0;
};

struct WignerSnapshotResult {
  DensityMatrix cavity_state = DensityMatrix::unchecked(SpaceLayout{}, Matrix::Ones(1, 1));
  WignerGrid grid;
  std::optional<WignerGrid> normalized;
  std::optional<ParityContrast> parity;
};

using ScenarioOutput =
    std::variant<StabilizeResult, ProtectResult, ResetResult, RateAnalyticsResult, WignerSnapshotResult>;

StabilizeResult run_stabilize(const ScenarioSpec& spec);
ProtectResult run_protect(const ScenarioSpec& spec);
ResetResult run_reset(const ScenarioSpec& spec);
RateAnalyticsResult run_rate_analytics(const ScenarioSpec& spec);
WignerSnapshotResult run_wigner_snapshot(const ScenarioSpec& spec);
ScenarioOutput run_scenario(const ScenarioSpec& spec);

/// Cavity populations at the steady state of the lindblad model for a comb.
/// Static models use the null space of the Liouvillian; time-dependent ones
/// are integrated stroboscopically until stationary.
struct LindbladSteady {
  std::vector<double> populations;
  DensityMatrix full_state = DensityMatrix::unchecked(SpaceLayout{}, Matrix::Ones(1, 1));
  bool converged = true;
  double elapsed_us = 0.0;
};
LindbladSteady lindblad_steady_state(const ScenarioSpec& spec);

/// Hamiltonian, collapse set and layout the lindblad levels use for a spec.
struct LindbladSetup {
  SpaceLayout layout;
  TimeDependentHamiltonian hamiltonian;
  std::vector<CollapseOperator> collapse;
  std::vector<std::string> warnings;
};
LindbladSetup lindblad_setup(const ScenarioSpec& spec);

}  // namespace fockstab
