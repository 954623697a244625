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

#include "fockstab/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "fockstab/errors.hpp"

namespace fockstab {

namespace {

constexpr std::size_t kG = 0, kE = 1, kF = 2;

Matrix ket_bra(const SpaceLayout& layout, std::size_t row, std::size_t col) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  Matrix m = Matrix::Zero(n, n);
  m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return m;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string("SystemParams: ") + what + " must be > 0");
}

void require_cqr(const SpaceLayout& layout, const char* who) {
  if (layout.subsystem_count() != 3)
    throw DomainError(std::string(who) + ": layout must be (cavity, qubit, resonator)");
}

}  // namespace

// --- SystemParams -----------------------------------------------------------

SystemParams SystemParams::device_defaults() {
  SystemParams p;
  p.omega_c = AngularRate::from_ghz(6.366);
  p.omega_q = AngularRate::from_ghz(5.682);
  p.omega_r = AngularRate::from_ghz(8.602);
  p.zeta_c = AngularRate::from_khz(150.0);
  p.chi_qc = AngularRate::from_mhz(7.72);
  p.chi_qr = AngularRate::from_mhz(2.4);
  p.kappa_c = AngularRate::from_khz(3.1);
  p.kappa_r = AngularRate::from_mhz(2.4);
  p.qubit_t1_us = 18.6;
  p.qubit_t2_us = 25.6;
  p.qubit_heat_rate = AngularRate::from_khz(0.06);
  p.cavity_thermal_pop = 0.005;
  return p;
}

void SystemParams::validate() const {
  require_positive(omega_c.rad_per_us(), "omega_c");
  require_positive(omega_q.rad_per_us(), "omega_q");
  require_positive(omega_r.rad_per_us(), "omega_r");
  require_positive(chi_qc.rad_per_us(), "chi_qc");
  require_positive(chi_qr.rad_per_us(), "chi_qr");
  require_positive(zeta_c.rad_per_us(), "zeta_c");
  require_positive(kappa_c.rad_per_us(), "kappa_c");
  require_positive(kappa_r.rad_per_us(), "kappa_r");
  require_positive(qubit_t1_us, "qubit_t1");
  require_positive(qubit_t2_us, "qubit_t2");
  require_positive(qubit_heat_rate.rad_per_us(), "qubit_heat_rate");
  if (!(cavity_thermal_pop >= 0.0)) throw DomainError("SystemParams: cavity_thermal_pop must be >= 0");
  if (qubit_t2_us > 2.0 * qubit_t1_us) throw DomainError("SystemParams: qubit_t2 exceeds 2 * qubit_t1");
  if (!(kappa_c < kappa_r && kappa_r < chi_qc))
    throw DomainError("SystemParams: regime kappa_c < kappa_r < chi_qc violated");
}

double SystemParams::pure_dephasing_rate() const {
  if (qubit_t2_us > 2.0 * qubit_t1_us) throw DomainError("SystemParams: qubit_t2 exceeds 2 * qubit_t1");
  const double g = 1.0 / qubit_t2_us - 1.0 / (2.0 * qubit_t1_us);
  return std::max(0.0, g);
}

// --- DriveComb --------------------------------------------------------------

std::size_t DriveComb::lowest_level() const {
  if (tones.empty()) throw DomainError("DriveComb: no tones");
  return std::min_element(tones.begin(), tones.end(), [](auto& a, auto& b) { return a.level < b.level; })->level;
}

std::size_t DriveComb::highest_level() const {
  if (tones.empty()) throw DomainError("DriveComb: no tones");
  return std::max_element(tones.begin(), tones.end(), [](auto& a, auto& b) { return a.level < b.level; })->level;
}

std::size_t DriveComb::target_level() const {
  if (kind == CombKind::Addition) return highest_level() + 1;
  const std::size_t low = lowest_level();
  if (low == 0) throw DomainError("DriveComb: subtraction tone at level 0");
  return low - 1;
}

std::vector<Tone> DriveComb::sorted_tones() const {
  std::vector<Tone> out = tones;
  std::sort(out.begin(), out.end(), [](const Tone& a, const Tone& b) { return a.level < b.level; });
  return out;
}

std::vector<std::string> DriveComb::validate() const {
  std::vector<std::string> warnings;
  if (tones.empty()) return warnings;
  const auto sorted = sorted_tones();
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const Tone& t = sorted[k];
    if (k > 0 && sorted[k - 1].level == t.level) throw DomainError("DriveComb: duplicate tone level");
    if (k > 0 && sorted[k - 1].level + 1 != t.level) throw DomainError("DriveComb: tone levels are not contiguous");
    if (!(t.omega_rabi.rad_per_us() > 0.0) || !(t.j_rate.rad_per_us() > 0.0))
      throw DomainError("DriveComb: tone rates must be > 0");
    if (kind == CombKind::Subtraction && t.level == 0)
      throw DomainError("DriveComb: subtraction tones need level >= 1");
    if (!(t.omega_rabi < t.j_rate)) {
      std::ostringstream os;
      os << "tone " << t.level << ": Omega >= J, outside the intended Omega < J regime";
      warnings.push_back(os.str());
    }
  }
  return warnings;
}

SpaceLayout default_layout(const DriveComb& comb, std::size_t min_cavity_dim) {
  std::size_t dc = 4, dq = 2;
  if (!comb.empty()) {
    if (comb.kind == CombKind::Addition) {
      dc = comb.target_level() + 3;
    } else {
      dc = comb.highest_level() + 3;
      dq = 3;
    }
  }
  return SpaceLayout::cavity_qubit_resonator(std::max(dc, min_cavity_dim), dq, 2);
}

// --- Hamiltonians -----------------------------------------------------------

Operator TimeDependentHamiltonian::at(double t_us) const {
  Matrix h = static_part.data();
  for (const auto& term : oscillating) {
    const cplx phase = std::polar(1.0, term.omega * t_us);
    h += phase * term.op.data() + std::conj(phase) * term.op.data().adjoint();
  }
  return {static_part.layout(), std::move(h)};
}

double TimeDependentHamiltonian::max_frequency() const {
  double w = 0.0;
  for (const auto& term : oscillating) w = std::max(w, std::abs(term.omega));
  return w;
}

std::size_t TimeDependentHamiltonian::count_terms(DriveSet set) const {
  return static_cast<std::size_t>(std::count_if(terms.begin(), terms.end(), [set](const DriveTerm& t) { return t.set == set; }));
}

Operator build_h0(const SystemParams& params, const SpaceLayout& layout) {
  require_cqr(layout, "build_h0");
  const std::size_t dc = layout.dim(Subsystem::Cavity);
  const std::size_t dq = layout.dim(Subsystem::Qubit);
  const std::size_t dr = layout.dim(Subsystem::Resonator);
  if (dc < 2 || dq < 2 || dr < 2) throw DomainError("build_h0: every subsystem needs dim >= 2");
  if (dq > 3) throw DomainError("build_h0: qubit truncation above |f> is not modeled");

  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  Matrix h = Matrix::Zero(n, n);
  const double chi_qc = params.chi_qc.rad_per_us();
  const double chi_qr = params.chi_qr.rad_per_us();
  const double zeta = params.zeta_c.rad_per_us();
  for (std::size_t idx = 0; idx < layout.total_dim(); ++idx) {
    const auto lab = layout.labels(idx);
    const double nc = static_cast<double>(lab[0]);
    const double q = static_cast<double>(lab[1]);  // 0, 1, 2 = g, e, f
    const double nr = static_cast<double>(lab[2]);
    const double e = -q * (chi_qc * nc + chi_qr * nr) - 0.5 * zeta * nc * (nc - 1.0);
    h(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) = e;
  }
  return {layout, std::move(h)};
}

namespace {

struct TermBuilder {
  const SpaceLayout& layout;
  Matrix static_h;
  std::map<long, Matrix> by_multiple;  // oscillating ops keyed by integer multiple of chi
  double chi = 0.0;
  std::vector<DriveTerm> terms;

  explicit TermBuilder(const SpaceLayout& l, double chi_qc)
      : layout(l),
        static_h(Matrix::Zero(static_cast<Eigen::Index>(l.total_dim()), static_cast<Eigen::Index>(l.total_dim()))),
        chi(chi_qc) {}

  // amplitude * |to><from| * e^{i k chi t} + h.c.
  void add(DriveSet set, std::size_t tone, std::size_t level, double amplitude, long k, std::size_t to,
           std::size_t from) {
    terms.push_back({set, tone, level, amplitude, static_cast<double>(k) * chi});
    const Matrix m = amplitude * ket_bra(layout, to, from);
    if (k == 0) {
      static_h += m + m.adjoint();
    } else {
      auto [it, inserted] = by_multiple.try_emplace(k, m);
      if (!inserted) it->second += m;
    }
  }

  TimeDependentHamiltonian finish() {
    TimeDependentHamiltonian out{Operator{layout, static_h}, {}, std::move(terms)};
    for (auto& [k, m] : by_multiple) out.oscillating.push_back({Operator{layout, m}, static_cast<double>(k) * chi});
    return out;
  }
};

}  // namespace

TimeDependentHamiltonian build_drive(const DriveComb& comb, const SystemParams& params, const SpaceLayout& layout) {
  require_cqr(layout, "build_drive");
  if (comb.kind != CombKind::Addition) throw DomainError("build_drive: comb is not a photon-addition comb");
  const std::size_t dc = layout.dim(Subsystem::Cavity);
  if (layout.dim(Subsystem::Qubit) < 2 || layout.dim(Subsystem::Resonator) < 2)
    throw DomainError("build_drive: qubit and resonator need dim >= 2");
  TermBuilder b{layout, params.chi_qc.rad_per_us()};
  if (comb.empty()) return b.finish();
  comb.validate();
  if (comb.highest_level() + 1 >= dc) throw DomainError("build_drive: tone level outside cavity truncation");

  const auto tones = comb.sorted_tones();
  for (const Tone& tone : tones) {
    const std::size_t j = tone.level;
    const double omega = tone.omega_rabi.rad_per_us();
    const double jr = tone.j_rate.rad_per_us();
    std::vector<std::size_t> levels;
    if (comb.spurious) {
      for (const Tone& t : tones) levels.push_back(t.level);
    } else {
      levels.push_back(j);
    }
    for (std::size_t i : levels) {
      const long k = static_cast<long>(j) - static_cast<long>(i);
      b.add(DriveSet::Qubit, j, i, omega, k, layout.index({i, kE, 0}), layout.index({i, kG, 0}));
      const double ratio = std::sqrt(static_cast<double>(i + 1) / static_cast<double>(j + 1));
      b.add(DriveSet::Mixing, j, i, jr * ratio, -k, layout.index({i + 1, kG, 1}), layout.index({i, kE, 0}));
    }
    if (const double det = tone.residual_detuning.rad_per_us(); det != 0.0) {
      const auto idx = static_cast<Eigen::Index>(layout.index({j, kE, 0}));
      b.static_h(idx, idx) += det;
    }
  }
  return b.finish();
}

TimeDependentHamiltonian build_csps_drive(const DriveComb& comb, const SpaceLayout& layout) {
  require_cqr(layout, "build_csps_drive");
  if (layout.dim(Subsystem::Qubit) != 3) throw DomainError("build_csps_drive: qubit dimension must be 3 (|g>,|e>,|f>)");
  if (layout.dim(Subsystem::Resonator) < 2) throw DomainError("build_csps_drive: resonator needs dim >= 2");
  if (comb.kind != CombKind::Subtraction) throw DomainError("build_csps_drive: comb is not a subtraction comb");
  TermBuilder b{layout, 0.0};
  if (comb.empty()) return b.finish();
  comb.validate();
  if (comb.highest_level() >= layout.dim(Subsystem::Cavity))
    throw DomainError("build_csps_drive: tone level outside cavity truncation");
  for (const Tone& tone : comb.sorted_tones()) {
    const std::size_t i = tone.level;
    b.add(DriveSet::Qubit, i, i, tone.omega_rabi.rad_per_us(), 0, layout.index({i - 1, kF, 0}), layout.index({i, kG, 0}));
    b.add(DriveSet::Mixing, i, i, tone.j_rate.rad_per_us(), 0, layout.index({i - 1, kG, 1}), layout.index({i - 1, kF, 0}));
    if (const double det = tone.residual_detuning.rad_per_us(); det != 0.0) {
      const auto idx = static_cast<Eigen::Index>(layout.index({i - 1, kF, 0}));
      b.static_h(idx, idx) += det;
    }
  }
  return b.finish();
}

TimeDependentHamiltonian build_comb_hamiltonian(const DriveComb& comb, const SystemParams& params,
                                                const SpaceLayout& layout) {
  return comb.kind == CombKind::Addition ? build_drive(comb, params, layout) : build_csps_drive(comb, layout);
}

std::vector<CollapseOperator> collapse_ops(const SystemParams& params, const SpaceLayout& layout,
                                           const DissipationChannels& channels) {
  require_cqr(layout, "collapse_ops");
  if (params.qubit_t2_us > 2.0 * params.qubit_t1_us)
    throw DomainError("collapse_ops: qubit_t2 exceeds 2 * qubit_t1");
  const std::size_t dc = layout.dim(Subsystem::Cavity);
  const std::size_t dq = layout.dim(Subsystem::Qubit);
  const std::size_t dr = layout.dim(Subsystem::Resonator);

  std::vector<CollapseOperator> out;
  auto push = [&](std::string name, double rate, const Operator& single, Subsystem s) {
    if (rate <= 0.0) return;
    out.push_back({std::move(name), embed(single, s, layout) * cplx{std::sqrt(rate), 0.0}});
  };
  if (channels.cavity_decay && dc >= 2)
    push("cavity_decay", params.kappa_c.rad_per_us(), annihilation(dc), Subsystem::Cavity);
  if (channels.resonator_decay && dr >= 2)
    push("resonator_decay", params.kappa_r.rad_per_us(), annihilation(dr), Subsystem::Resonator);
  if (dq >= 2) {
    if (channels.qubit_relaxation)
      push("qubit_relaxation", 1.0 / params.qubit_t1_us, projector(dq, kG, kE), Subsystem::Qubit);
    if (channels.qubit_dephasing)
      push("qubit_dephasing", 2.0 * params.pure_dephasing_rate(), projector(dq, kE, kE), Subsystem::Qubit);
    if (channels.qubit_heating)
      push("qubit_heating", params.qubit_heat_rate.rad_per_us(), projector(dq, kE, kG), Subsystem::Qubit);
  }
  if (channels.cavity_thermal && dc >= 2)
    push("cavity_thermal", params.kappa_c.rad_per_us() * params.cavity_thermal_pop, creation(dc), Subsystem::Cavity);
  return out;
}

}  // namespace fockstab
