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

#include "fockstab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fockstab/errors.hpp"

namespace fockstab {

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Stabilize: return "stabilize";
    case ScenarioKind::Protect: return "protect";
    case ScenarioKind::Reset: return "reset";
    case ScenarioKind::RateAnalytics: return "rate-analytics";
    case ScenarioKind::WignerSnapshot: return "wigner-snapshot";
  }
  return "?";
}

const char* to_string(ModelLevel level) {
  switch (level) {
    case ModelLevel::Rate: return "rate";
    case ModelLevel::LindbladIdeal: return "lindblad-ideal";
    case ModelLevel::LindbladSpurious: return "lindblad-spurious";
  }
  return "?";
}

std::optional<ScenarioKind> parse_scenario_kind(const std::string& s) {
  for (auto k : {ScenarioKind::Stabilize, ScenarioKind::Protect, ScenarioKind::Reset, ScenarioKind::RateAnalytics,
                 ScenarioKind::WignerSnapshot})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

std::optional<ModelLevel> parse_model_level(const std::string& s) {
  for (auto m : {ModelLevel::Rate, ModelLevel::LindbladIdeal, ModelLevel::LindbladSpurious})
    if (s == to_string(m)) return m;
  return std::nullopt;
}

// --- initial states ----------------------------------------------------------

std::string InitialState::describe() const {
  switch (kind) {
    case Kind::Fock: return "fock:" + std::to_string(fock);
    case Kind::Logical0: return "logical0";
    case Kind::Logical1: return "logical1";
    case Kind::LogicalPlusI: return "logical_plus_i";
  }
  return "?";
}

std::size_t InitialState::max_level() const {
  switch (kind) {
    case Kind::Fock: return fock;
    case Kind::Logical1: return 2;
    case Kind::Logical0:
    case Kind::LogicalPlusI: return 4;
  }
  return 0;
}

Vector InitialState::cavity_ket(std::size_t dim) const {
  if (max_level() >= dim) throw DomainError("initial state " + describe() + " does not fit the cavity truncation");
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dim));
  const double h = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case Kind::Fock: psi(static_cast<Eigen::Index>(fock)) = 1.0; break;
    case Kind::Logical1: psi(2) = 1.0; break;
    case Kind::Logical0:
      psi(0) = h;
      psi(4) = h;
      break;
    case Kind::LogicalPlusI:
      // (|0>_L + i |1>_L) / sqrt 2
      psi(0) = 0.5;
      psi(4) = 0.5;
      psi(2) = cplx{0.0, h};
      break;
  }
  return psi;
}

// --- validation --------------------------------------------------------------

namespace {

bool is_addition(const DriveComb& c) { return c.kind == CombKind::Addition && !c.empty(); }

void require(bool ok, const std::string& label, const std::string& what) {
  if (!ok) throw DomainError("scenario '" + label + "': " + what);
}

}  // namespace

void ScenarioSpec::validate() const {
  params.validate();
  if (!comb.empty()) comb.validate();
  const bool timed = kind == ScenarioKind::Stabilize || kind == ScenarioKind::Protect || kind == ScenarioKind::Reset;
  if (timed) {
    require(duration_us > 0.0, label, "duration_us must be > 0");
    require(sample_every_us > 0.0 && sample_every_us <= duration_us, label, "sample_every_us must lie in (0, duration]");
  }
  require(dt_us >= 0.0, label, "dt_us must be >= 0");
  require(model != ModelLevel::LindbladSpurious || is_addition(comb), label,
          "lindblad-spurious needs a photon-addition comb");
  switch (kind) {
    case ScenarioKind::Stabilize:
      require(initial.kind == InitialState::Kind::Fock && initial.fock == 0, label, "stabilize starts from vacuum");
      require(is_addition(comb), label, "stabilize needs a non-empty photon-addition comb");
      require(comb.lowest_level() == 0, label, "stabilize needs a comb starting at level 0");
      break;
    case ScenarioKind::Protect:
      require(initial.kind == InitialState::Kind::Fock && initial.fock >= 1, label,
              "protect starts from a Fock state |n>, n >= 1");
      require(comb.empty() || (comb.kind == CombKind::Addition && comb.target_level() == initial.fock), label,
              "protect comb must end at the initial Fock level");
      break;
    case ScenarioKind::Reset:
      require(is_addition(comb) && comb.lowest_level() == 0 && comb.target_level() == 2, label,
              "reset needs the comb 0 -> 2");
      require(cavity_dim == 0 || cavity_dim >= 6, label, "reset needs a cavity dimension >= 6");
      require(!include_csps || (csps.kind == CombKind::Subtraction && !csps.empty()), label,
              "include_csps needs a non-empty photon-subtraction comb");
      require(!include_csps || model != ModelLevel::Rate, label, "the subtraction arm needs a lindblad model");
      break;
    case ScenarioKind::RateAnalytics:
      for (const auto& c : analytics) {
        if (c.lambdas_khz.empty()) require(is_addition(c.comb), label, "analytics config '" + c.label + "' is empty");
        for (double l : c.lambdas_khz) require(l >= 0.0, label, "analytics rates must be >= 0");
      }
      break;
    case ScenarioKind::WignerSnapshot:
      require(comb.empty() || comb.kind == CombKind::Addition, label, "wigner-snapshot comb must add photons");
      break;
  }
  require(wigner.alpha_max > 0.0 && wigner.points >= 2, label, "wigner grid needs alpha_max > 0 and >= 2 points");
  if (calibration) calibration->validate();
}

// --- shared helpers ----------------------------------------------------------

namespace {

std::vector<double> time_grid(double duration, double step) {
  std::vector<double> t;
  const auto n = static_cast<std::size_t>(std::floor(duration / step + 1e-9));
  t.reserve(n + 2);
  for (std::size_t k = 0; k <= n; ++k) t.push_back(static_cast<double>(k) * step);
  if (duration - t.back() > 1e-9 * duration) t.push_back(duration);
  return t;
}

DensityMatrix diagonal_state(std::span<const double> pops) {
  const auto d = static_cast<Eigen::Index>(pops.size());
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = pops[static_cast<std::size_t>(i)];
  return DensityMatrix::unchecked(SpaceLayout::single(pops.size()), m);
}

std::vector<double> row(const Eigen::MatrixXd& m, Eigen::Index r) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(c)] = m(r, c);
  return out;
}

DensityMatrix composite_initial(const SpaceLayout& layout, const InitialState& init) {
  const Vector cav = init.cavity_ket(layout.dim(Subsystem::Cavity));
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  for (std::size_t n = 0; n < layout.dim(Subsystem::Cavity); ++n)
    psi(static_cast<Eigen::Index>(layout.index({n, 0, 0}))) = cav(static_cast<Eigen::Index>(n));
  return DensityMatrix::from_ket(layout, psi);
}

PopulationTrace trace_from(const EvolutionResult& r) {
  return {r.times_us, r.cavity_populations, r.qubit_excited_prob};
}

EvolutionResult run_lindblad(const ScenarioSpec& spec, const LindbladSetup& setup, const DensityMatrix& rho0) {
  EvolveOptions opts;
  opts.t1_us = spec.duration_us;
  opts.dt_us = spec.dt_us;
  opts.sample_every_us = spec.sample_every_us;
  return evolve(rho0, setup.hamiltonian, setup.collapse, opts);
}

double tail_mean(const PopulationTrace& tr, std::size_t level, double from_fraction) {
  const double t_end = tr.times_us.back();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < tr.times_us.size(); ++k)
    if (tr.times_us[k] >= from_fraction * t_end) {
      sum += tr.populations(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(level));
      ++count;
    }
  return count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

std::size_t rate_dim(const ScenarioSpec& spec, std::size_t needed) {
  if (spec.cavity_dim == 0) return needed;
  require(spec.cavity_dim >= needed, spec.label, "cavity_dim is below the levels the scenario touches");
  return spec.cavity_dim;
}

void append(std::vector<std::string>& into, const std::vector<std::string>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

}  // namespace

LindbladSetup lindblad_setup(const ScenarioSpec& spec) {
  std::vector<std::string> warnings;
  DriveComb comb = spec.comb;
  comb.spurious = spec.model == ModelLevel::LindbladSpurious;
  if (!comb.empty()) append(warnings, comb.validate());

  std::size_t min_dc = spec.initial.max_level() + 2;
  if (spec.kind == ScenarioKind::Reset) min_dc = std::max<std::size_t>(min_dc, 6);
  if (spec.include_csps) min_dc = std::max(min_dc, spec.csps.highest_level() + 3);
  const SpaceLayout base = default_layout(comb, min_dc);
  std::size_t dc = base.dim(Subsystem::Cavity);
  if (spec.cavity_dim != 0) {
    require(spec.cavity_dim >= min_dc && (comb.empty() || spec.cavity_dim > comb.highest_level() + 1), spec.label,
            "cavity_dim is below the levels the scenario touches");
    dc = spec.cavity_dim;
  }
  const std::size_t dq = spec.include_csps ? 3 : base.dim(Subsystem::Qubit);
  const auto layout = SpaceLayout::cavity_qubit_resonator(dc, dq, base.dim(Subsystem::Resonator));

  auto h = comb.kind == CombKind::Addition ? build_drive(comb, spec.params, layout) : build_csps_drive(comb, layout);
  if (spec.include_csps) {
    const auto sub = build_csps_drive(spec.csps, layout);
    h.static_part += sub.static_part;
    h.terms.insert(h.terms.end(), sub.terms.begin(), sub.terms.end());
  }
  auto collapse = collapse_ops(spec.params, layout, spec.channels);
  return {layout, std::move(h), std::move(collapse), std::move(warnings)};
}

LindbladSteady lindblad_steady_state(const ScenarioSpec& spec) {
  const LindbladSetup setup = lindblad_setup(spec);
  LindbladSteady out;
  const TimeDependentHamiltonian static_h{setup.hamiltonian.static_part, {}, {}};
  out.full_state = steady_state(static_h, setup.collapse);
  if (!setup.hamiltonian.is_static()) {
    // The drive is periodic in 2 pi / chi_qc: sample stroboscopically from the
    // static-part steady state until the populations stop moving.
    const double period = 2.0 * std::numbers::pi / spec.params.chi_qc.rad_per_us();
    const double dt_limit = max_stable_dt(setup.hamiltonian, setup.collapse);
    const double dt_req = spec.dt_us > 0.0 ? std::min(spec.dt_us, dt_limit) : dt_limit;
    const double steps_per_period = std::ceil(period / dt_req - 1e-9);
    const double per_sample = std::max(1.0, std::round(1.0 / period));
    const double sample_us = per_sample * period;
    const double samples = std::max(2.0, std::ceil(spec.steady_horizon_us / sample_us));
    EvolveOptions opts;
    opts.t1_us = samples * sample_us;
    opts.dt_us = period / steps_per_period;
    opts.sample_every_us = sample_us;
    opts.stop_when_stationary = true;
    opts.check_positivity = false;
    const auto run = evolve(out.full_state, setup.hamiltonian, setup.collapse, opts);
    out.full_state = run.final_state;
    out.converged = run.diagnostics.stopped_stationary;
    out.elapsed_us = run.times_us.back();
  }
  out.populations = photon_populations(out.full_state);
  return out;
}

// --- stabilize ---------------------------------------------------------------

StabilizeResult run_stabilize(const ScenarioSpec& spec) {
  spec.validate();
  StabilizeResult out;
  out.target = spec.comb.target_level();
  out.lambdas_khz = pump_rates_khz(spec.comb, spec.params);
  const double kappa_khz = spec.params.kappa_c.khz();
  out.rate_model_pn = steady_fidelity(out.lambdas_khz, kappa_khz, out.target);

  if (spec.model == ModelLevel::Rate) {
    const std::size_t dim = rate_dim(spec, out.target + 2);
    const RateModel model = build_rate_matrix(out.lambdas_khz, kappa_khz, dim);
    std::vector<double> p0(dim, 0.0);
    p0[0] = 1.0;
    const auto times = time_grid(spec.duration_us, spec.sample_every_us);
    const auto traj = evolve_populations(model, p0, times);
    out.trace = {traj.times_us, traj.populations, {}};
    out.steady_populations = steady_populations(model);
    out.final_cavity_state = diagonal_state(row(traj.populations, traj.populations.rows() - 1));
  } else {
    const LindbladSetup setup = lindblad_setup(spec);
    append(out.warnings, setup.warnings);
    const auto run = run_lindblad(spec, setup, composite_initial(setup.layout, spec.initial));
    out.trace = trace_from(run);
    out.diagnostics = run.diagnostics;
    append(out.warnings, run.diagnostics.warnings);
    const auto steady = lindblad_steady_state(spec);
    if (!steady.converged) out.warnings.push_back("stroboscopic steady state did not reach the stationarity tolerance");
    out.steady_populations = steady.populations;
    out.final_cavity_state = partial_trace(run.final_state, Subsystem::Cavity);
  }
  out.steady_pn = out.steady_populations.at(out.target);
  out.saturation_pn = tail_mean(out.trace, out.target, 0.9);
  if (spec.final_wigner) {
    out.final_wigner = wigner(*out.final_cavity_state, spec.wigner);
    append(out.warnings, out.final_wigner->warnings);
  }
  return out;
}

// --- protect -----------------------------------------------------------------

ExponentialFit fit_exponential(std::span<const double> t, std::span<const double> y, double drop_fraction,
                               double residual_threshold) {
  if (t.size() != y.size() || t.empty()) throw DomainError("fit_exponential: mismatched or empty samples");
  const double t_start = t.front() + drop_fraction * (t.back() - t.front());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < t_start || !(y[k] > 0.0)) continue;
    const double ly = std::log(y[k]);
    sx += t[k];
    sy += ly;
    sxx += t[k] * t[k];
    sxy += t[k] * ly;
    ++n;
  }
  if (n < 3) throw DomainError("fit_exponential: fewer than 3 positive samples in the fit window");
  const double nn = static_cast<double>(n);
  const double denom = nn * sxx - sx * sx;
  const double slope = (nn * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / nn;

  ExponentialFit fit;
  fit.points = n;
  fit.amplitude = std::exp(intercept);
  fit.tau_us = slope < 0.0 ? -1.0 / slope : std::numeric_limits<double>::infinity();
  double ss = 0.0, mean = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < t_start || !(y[k] > 0.0)) continue;
    const double r = y[k] - fit.amplitude * std::exp(slope * t[k]);
    ss += r * r;
    mean += y[k];
  }
  mean /= nn;
  fit.normalized_residual = std::sqrt(ss / nn) / mean;
  fit.flagged = !(slope < 0.0) || fit.normalized_residual > residual_threshold;
  return fit;
}

ProtectResult run_protect(const ScenarioSpec& spec) {
  spec.validate();
  ProtectResult out;
  out.level = spec.initial.fock;
  const std::size_t n = out.level;
  if (!spec.comb.empty()) out.lambdas_khz = pump_rates_khz(spec.comb, spec.params);
  const double kappa_khz = spec.params.kappa_c.khz();
  out.eigen_mode = decay_time(build_rate_matrix(out.lambdas_khz, kappa_khz, n + 1), n);

  if (spec.model == ModelLevel::Rate) {
    const std::size_t dim = rate_dim(spec, n + 1);
    const RateModel model = build_rate_matrix(out.lambdas_khz, kappa_khz, dim);
    std::vector<double> p0(dim, 0.0);
    p0[n] = 1.0;
    const auto traj = evolve_populations(model, p0, time_grid(spec.duration_us, spec.sample_every_us));
    out.trace = {traj.times_us, traj.populations, {}};
    out.final_cavity_state = diagonal_state(row(traj.populations, traj.populations.rows() - 1));
  } else {
    const LindbladSetup setup = lindblad_setup(spec);
    append(out.warnings, setup.warnings);
    const auto run = run_lindblad(spec, setup, composite_initial(setup.layout, spec.initial));
    out.trace = trace_from(run);
    out.diagnostics = run.diagnostics;
    append(out.warnings, run.diagnostics.warnings);
    out.final_cavity_state = partial_trace(run.final_state, Subsystem::Cavity);
  }
  const auto col = out.trace.populations.col(static_cast<Eigen::Index>(n));
  std::vector<double> pn(col.data(), col.data() + col.size());
  out.fit = fit_exponential(out.trace.times_us, pn, spec.fit_drop_fraction, spec.fit_residual_threshold);
  if (out.fit.flagged) out.warnings.push_back("exponential fit flagged: tail is not single-exponential");
  return out;
}

// --- reset -------------------------------------------------------------------

ResetResult run_reset(const ScenarioSpec& spec) {
  spec.validate();
  ResetResult out;
  const auto lambdas = pump_rates_khz(spec.comb, spec.params);
  const double kappa_khz = spec.params.kappa_c.khz();
  out.rate_model_p2 = steady_fidelity(lambdas, kappa_khz, 2);

  if (spec.model == ModelLevel::Rate) {
    const std::size_t dim = rate_dim(spec, 6);
    const Vector psi = spec.initial.cavity_ket(dim);
    out.initial_cavity_state = DensityMatrix::from_ket(SpaceLayout::single(dim), psi);
    std::vector<double> p0(dim);
    for (std::size_t k = 0; k < dim; ++k) p0[k] = std::norm(psi(static_cast<Eigen::Index>(k)));
    const RateModel model = build_rate_matrix(lambdas, kappa_khz, dim);
    const auto traj = evolve_populations(model, p0, time_grid(spec.duration_us, spec.sample_every_us));
    out.trace = {traj.times_us, traj.populations, {}};
    out.final_cavity_state = diagonal_state(row(traj.populations, traj.populations.rows() - 1));
  } else {
    const LindbladSetup setup = lindblad_setup(spec);
    append(out.warnings, setup.warnings);
    const DensityMatrix rho0 = composite_initial(setup.layout, spec.initial);
    out.initial_cavity_state = partial_trace(rho0, Subsystem::Cavity);
    const auto run = run_lindblad(spec, setup, rho0);
    out.trace = trace_from(run);
    out.diagnostics = run.diagnostics;
    append(out.warnings, run.diagnostics.warnings);
    out.final_cavity_state = partial_trace(run.final_state, Subsystem::Cavity);
  }
  // The target |2> is a Fock state, so the fidelity equals P_2.
  const auto col = out.trace.populations.col(2);
  out.fidelity_to_target.assign(col.data(), col.data() + col.size());
  out.final_p2 = out.fidelity_to_target.back();
  out.final_fidelity = state_fidelity(out.final_cavity_state, fock_state(out.final_cavity_state.dim(), 2));
  out.initial_wigner = wigner(out.initial_cavity_state, spec.wigner);
  out.final_wigner = wigner(out.final_cavity_state, spec.wigner);
  append(out.warnings, out.final_wigner.warnings);
  return out;
}

// --- rate analytics ----------------------------------------------------------

RateAnalyticsResult run_rate_analytics(const ScenarioSpec& spec) {
  spec.validate();
  RateAnalyticsResult out;
  const double kappa_khz = spec.params.kappa_c.khz();
  std::size_t max_n = spec.analytics_max_n;
  for (const auto& cfg : spec.analytics) {
    AnalyticsRow r;
    r.lambdas_khz = cfg.lambdas_khz.empty() ? pump_rates_khz(cfg.comb, spec.params) : cfg.lambdas_khz;
    const RateModel probe = build_rate_matrix(r.lambdas_khz, kappa_khz, r.lambdas_khz.size() + 1);
    if (!probe.pumps_contiguous_from_vacuum() || probe.pump_target() == 0)
      throw DomainError("rate-analytics: config '" + cfg.label + "' does not pump contiguously from vacuum");
    r.target = probe.pump_target();
    r.label = cfg.label.empty() ? "0->" + std::to_string(r.target) : cfg.label;
    r.fidelity = steady_fidelity(r.lambdas_khz, kappa_khz, r.target);
    max_n = std::max(max_n, r.target);
    out.rows.push_back(std::move(r));
  }
  out.max_n = max_n;

  const std::size_t nrows = out.rows.empty() ? 1 : max_n;
  out.tau_us = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(max_n),
                                         std::numeric_limits<double>::quiet_NaN());
  out.row_labels.push_back("without");
  for (std::size_t k = 1; k < nrows; ++k) out.row_labels.push_back("N-" + std::to_string(k) + "->N");
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto ci = static_cast<Eigen::Index>(n - 1);
    out.tau_us(0, ci) = decay_time(build_rate_matrix({}, kappa_khz, n + 1), n).tau_us;
    const auto source = std::find_if(out.rows.begin(), out.rows.end(), [n](const AnalyticsRow& r) { return r.target == n; });
    if (source == out.rows.end()) continue;
    for (std::size_t k = 1; k < n && k < nrows; ++k) {
      std::vector<double> sub(n, 0.0);
      for (std::size_t i = n - k; i < n; ++i) sub[i] = source->lambdas_khz[i];
      out.tau_us(static_cast<Eigen::Index>(k), ci) = decay_time(build_rate_matrix(sub, kappa_khz, n + 1), n).tau_us;
    }
  }
  return out;
}

// --- wigner snapshot ---------------------------------------------------------

WignerSnapshotResult run_wigner_snapshot(const ScenarioSpec& spec) {
  spec.validate();
  WignerSnapshotResult out;
  const ParityNoise noise{spec.params, spec.channels, spec.dt_us};
  if (spec.comb.empty()) {
    const std::size_t dc = spec.cavity_dim ? spec.cavity_dim : spec.initial.max_level() + 3;
    const auto layout = SpaceLayout::cavity_qubit_resonator(dc, 2, 2);
    const DensityMatrix full = composite_initial(layout, spec.initial);
    out.cavity_state = partial_trace(full, Subsystem::Cavity);
    out.parity = simulate_parity_contrast(full, noise);
  } else if (spec.model == ModelLevel::Rate) {
    const std::size_t target = spec.comb.target_level();
    const std::size_t dim = rate_dim(spec, target + 2);
    const auto model = build_rate_matrix(pump_rates_khz(spec.comb, spec.params), spec.params.kappa_c.khz(), dim);
    out.cavity_state = diagonal_state(steady_populations(model));
  } else {
    const auto steady = lindblad_steady_state(spec);
    out.cavity_state = partial_trace(steady.full_state, Subsystem::Cavity);
    out.parity = simulate_parity_contrast(steady.full_state, noise);
  }
  out.grid = wigner(out.cavity_state, spec.wigner);
  if (spec.calibration) out.normalized = wigner_normalize(out.grid, *spec.calibration);
  return out;
}

ScenarioOutput run_scenario(const ScenarioSpec& spec) {
  switch (spec.kind) {
    case ScenarioKind::Stabilize: return run_stabilize(spec);
    case ScenarioKind::Protect: return run_protect(spec);
    case ScenarioKind::Reset: return run_reset(spec);
    case ScenarioKind::RateAnalytics: return run_rate_analytics(spec);
    case ScenarioKind::WignerSnapshot: return run_wigner_snapshot(spec);
  }
  throw DomainError("unknown scenario kind");
}

}  // namespace fockstab
