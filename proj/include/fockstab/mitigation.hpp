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

// Readout-error inversion, selective-spectroscopy population extraction,
// Wigner normalization, and a model of the displaced-parity sequence.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "fockstab/hilbert.hpp"
#include "fockstab/lindblad.hpp"
#include "fockstab/model.hpp"

namespace fockstab {

struct ReadoutCalibration {
  double f_g = 0.985;
  double f_e = 0.952;
  std::optional<double> a0;   // selective-Rabi amplitude, vacuum tone
  std::optional<double> a1;   // selective-Rabi amplitude, thermal tone
  std::optional<double> p_b;  // background excited population
  double w0 = 0.924;          // measured vacuum parity contrast

  void validate() const;
  /// a0 + a1; throws DomainError if either is unset or the sum is <= 0.
  double rabi_amplitude_sum() const;
  /// a1 / (a0 + a1)
  double thermal_fraction() const;
};

struct CorrectedQubit {
  double p_g = 0.0;
  double p_e = 0.0;
  bool out_of_range = false;  // an entry left [0, 1]; values are not clipped
};

/// M = [[f_g, 1 - f_e], [1 - f_g, f_e]], p_measured = M p_true.
std::array<double, 2> qubit_readout_forward(std::array<double, 2> p_true, const ReadoutCalibration& cal);
CorrectedQubit qubit_readout_correct(std::array<double, 2> p_measured, const ReadoutCalibration& cal);

struct CorrectedPopulations {
  std::vector<double> populations;
  double sum = 0.0;
  bool out_of_range = false;
};

/// p_e = (a0 + a1) P + p_b per selective tone.
std::vector<double> photon_population_forward(std::span<const double> populations, const ReadoutCalibration& cal);
/// P = (p_e - p_b) / (a0 + a1); no renormalization.
CorrectedPopulations photon_population_correct(std::span<const double> p_excited, const ReadoutCalibration& cal);

double wigner_normalize(double w, const ReadoutCalibration& cal);
WignerGrid wigner_normalize(const WignerGrid& grid, const ReadoutCalibration& cal);

/// Decoherence applied during the conditional-phase step. When absent the
/// sequence is ideal.
struct ParityNoise {
  SystemParams params;
  DissipationChannels channels;
  double dt_us = 0.0;  // 0 selects the solver bound
};

struct ParityContrast {
  double p_plus = 0.0;   // P_g after X/2 -> C_pi -> +X/2
  double p_minus = 0.0;  // P_g after X/2 -> C_pi -> -X/2
  double contrast = 0.0; // p_minus - p_plus
  double gate_time_us = 0.0;
};

/// Qubit-based parity readout of a composite (cavity, qubit[, resonator])
/// state whose qubit starts in |g>. C_pi = |g><g| (x) I + |e><e| (x) e^{i pi n};
/// with noise it is realized by evolving under the dispersive Hamiltonian for
/// pi / chi_qc with the given collapse channels.
ParityContrast simulate_parity_contrast(const DensityMatrix& rho, const std::optional<ParityNoise>& noise = std::nullopt);
inline ParityContrast simulate_parity_contrast(const EvolutionResult& run,
                                               const std::optional<ParityNoise>& noise = std::nullopt) {
  return simulate_parity_contrast(run.final_state, noise);
}

}  // namespace fockstab
