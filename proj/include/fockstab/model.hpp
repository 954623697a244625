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

// Device parameters, drive combs and the operators they induce.

#include <cstddef>
#include <string>
#include <vector>

#include "fockstab/hilbert.hpp"
#include "fockstab/units.hpp"

namespace fockstab {

/// Stored in angular units (rad/us); times in us.
struct SystemParams {
  AngularRate omega_c;
  AngularRate omega_q;
  AngularRate omega_r;
  AngularRate chi_qc;
  AngularRate chi_qr;
  AngularRate zeta_c;  // cavity self-Kerr
  AngularRate kappa_c;
  AngularRate kappa_r;
  double qubit_t1_us = 0.0;
  double qubit_t2_us = 0.0;
  AngularRate qubit_heat_rate;
  double cavity_thermal_pop = 0.0;

  /// Measured values of the reference device (T2 is the Ramsey T2*).
  static SystemParams device_defaults();

  /// Throws DomainError on non-positive rates, T2 > 2 T1, or when the
  /// hierarchy kappa_c < kappa_r < chi_qc is broken.
  void validate() const;

  /// 1/T_phi = 1/T2 - 1/(2 T1), in 1/us. Zero when T2 == 2 T1.
  double pure_dephasing_rate() const;
};

struct DissipationChannels {
  bool cavity_decay = true;
  bool resonator_decay = true;
  bool qubit_relaxation = true;
  bool qubit_dephasing = true;
  bool qubit_heating = false;
  bool cavity_thermal = false;

  static DissipationChannels none() { return {false, false, false, false, false, false}; }
};

enum class CombKind { Addition, Subtraction };

struct Tone {
  std::size_t level = 0;  // source Fock level i
  AngularRate omega_rabi;
  AngularRate j_rate;
  AngularRate residual_detuning;  // static error on the targeted qubit transition
};

struct DriveComb {
  CombKind kind = CombKind::Addition;
  std::vector<Tone> tones;
  bool spurious = false;

  static DriveComb addition(std::vector<Tone> tones, bool spurious = false) {
    return {CombKind::Addition, std::move(tones), spurious};
  }
  static DriveComb subtraction(std::vector<Tone> tones) {
    return {CombKind::Subtraction, std::move(tones), false};
  }

  bool empty() const { return tones.empty(); }
  std::size_t lowest_level() const;
  std::size_t highest_level() const;
  /// Level the comb stabilizes: highest + 1 for addition, lowest - 1 for
  /// subtraction.
  std::size_t target_level() const;
  /// Tones sorted by level.
  std::vector<Tone> sorted_tones() const;

  /// Throws DomainError for duplicate / non-contiguous levels or non-positive
  /// rates. Returns advisory warnings (e.g. Omega >= J).
  std::vector<std::string> validate() const;
};

/// Default truncation for a comb: d_c = target + 3, d_q = 2 (3 for
/// subtraction combs), d_r = 2.
SpaceLayout default_layout(const DriveComb& comb, std::size_t min_cavity_dim = 0);

enum class DriveSet { Qubit, Mixing };

/// One coupling of a comb tone to one cavity level, in raising orientation:
/// Qubit: amplitude |i,e,0><i,g,0|,  Mixing: amplitude |i+1,g,1><i,e,0|
/// (subtraction combs: |i-1,f,0><i,g,0| and |i-1,g,1><i-1,f,0|).
/// The term appears as amplitude * op * e^{i omega t} + h.c.
struct DriveTerm {
  DriveSet set;
  std::size_t tone_level;
  std::size_t level;
  double amplitude;  // rad/us
  double omega;      // rad/us, 0 for resonant terms
};

struct OscillatingTerm {
  Operator op;   // enters as op e^{i omega t} + op^dagger e^{-i omega t}
  double omega;  // rad/us, nonzero
};

struct TimeDependentHamiltonian {
  Operator static_part;
  std::vector<OscillatingTerm> oscillating;  // merged by frequency
  std::vector<DriveTerm> terms;              // one entry per coupling

  bool is_static() const { return oscillating.empty(); }
  Operator at(double t_us) const;
  double max_frequency() const;
  std::size_t count_terms(DriveSet set) const;
};

/// Static Hamiltonian in the frame rotating at the bare mode frequencies:
/// -chi_qc n_c |e><e| - chi_qr n_r |e><e| - (zeta_c/2) a^dag a^dag a a,
/// with |f> shifted by twice the |e> dispersive shifts when d_q = 3.
Operator build_h0(const SystemParams& params, const SpaceLayout& layout);

/// Photon-addition comb in the frame where every matched transition is static.
/// With comb.spurious, tone j also couples level i (both in the tone set) at
/// relative frequency (j - i) chi_qc, the mixing amplitude carrying
/// sqrt((i+1)/(j+1)).
TimeDependentHamiltonian build_drive(const DriveComb& comb, const SystemParams& params,
                                     const SpaceLayout& layout);

/// Photon-subtraction ladder |i,g,0> -> |i-1,f,0> -> |i-1,g,1>; needs d_q = 3.
TimeDependentHamiltonian build_csps_drive(const DriveComb& comb, const SpaceLayout& layout);

/// Dispatches on comb.kind.
TimeDependentHamiltonian build_comb_hamiltonian(const DriveComb& comb, const SystemParams& params,
                                                const SpaceLayout& layout);

struct CollapseOperator {
  std::string name;
  Operator op;  // rate folded into the amplitude
};

std::vector<CollapseOperator> collapse_ops(const SystemParams& params, const SpaceLayout& layout,
                                           const DissipationChannels& channels = {});

}  // namespace fockstab
