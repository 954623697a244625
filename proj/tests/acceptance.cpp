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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fockstab/lindblad.hpp"
#include "fockstab/mitigation.hpp"
#include "fockstab/rate.hpp"
#include "fockstab/scenarios.hpp"

using namespace fockstab;

namespace {

constexpr double kKappaC = 3.1;
constexpr double kKappaR = 2400.0;
const double kTwoPiKhz = 2.0 * std::numbers::pi * 1e-3;

struct Outcome {
  bool pass;
  std::string detail;
};

Tone tone(std::size_t level, double omega_khz, double j_khz) {
  return {level, AngularRate::from_khz(omega_khz), AngularRate::from_khz(j_khz), {}};
}

DriveComb comb_0_to(std::size_t n) {
  switch (n) {
    case 1: return DriveComb::addition({tone(0, 86, 400)});
    case 2: return DriveComb::addition({tone(0, 86, 400), tone(1, 86, 380)});
    default: return DriveComb::addition({tone(0, 86, 330), tone(1, 86, 341), tone(2, 87, 356)});
  }
}

std::vector<double> lambdas(std::size_t n) { return pump_rates_khz(comb_0_to(n), SystemParams::device_defaults()); }

ScenarioSpec stabilize_spec(std::size_t n, ModelLevel model) {
  ScenarioSpec s;
  s.label = "acceptance";
  s.kind = ScenarioKind::Stabilize;
  s.comb = comb_0_to(n);
  s.model = model;
  return s;
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

Outcome stabilizing_rates() {
  const double expect[3][3] = {{68.7, 0, 0}, {68.7, 68.1, 0}, {66.3, 66.7, 67.9}};
  bool ok = true;
  std::string d;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto l = lambdas(n);
    for (std::size_t i = 0; i < n; ++i) {
      ok = ok && std::abs(l[i] - expect[n - 1][i]) <= 0.1;
      d += fmt(l[i], 5) + (i + 1 < n ? "," : n < 3 ? "; " : "");
    }
  }
  return {ok, "lambda/2pi kHz = " + d};
}

Outcome steady_fidelities() {
  const double expect[] = {0.957, 0.913, 0.869};
  bool ok = true;
  std::string d;
  for (std::size_t n = 1; n <= 3; ++n) {
    const double f = steady_fidelity(lambdas(n), kKappaC, n);
    ok = ok && std::abs(f - expect[n - 1]) <= 0.001;
    d += fmt(f, 5) + (n < 3 ? ", " : "");
  }
  return {ok, "F = " + d};
}

Outcome decay_times() {
  const auto l2 = lambdas(2);
  const auto l3 = lambdas(3);
  struct Cell {
    std::vector<double> lam;
    std::size_t n;
    double expect;
  };
  const std::vector<Cell> cells{{{}, 1, 51}, {{}, 2, 26}, {{}, 3, 17}, {{0, l2[1]}, 2, 639},
                                {{0, 0, l3[2]}, 3, 228}, {{0, l3[1], l3[2]}, 3, 4862}};
  bool ok = true;
  std::string d;
  for (const auto& c : cells) {
    const double tau = decay_time(build_rate_matrix(c.lam, kKappaC, c.n + 1), c.n).tau_us;
    ok = ok && std::abs(tau - c.expect) <= 0.02 * c.expect;
    d += fmt(tau, 5) + " ";
  }
  return {ok, "tau us = " + d};
}

// dP_i/dt = l_{i-1} P_{i-1} - (l_i + i k) P_i + (i+1) k P_{i+1}, integrated directly.
std::vector<double> rk4_rate(const std::vector<double>& lam_khz, std::size_t dim, std::vector<double> p, double t_end,
                             double h) {
  std::vector<double> l(dim, 0.0);
  for (std::size_t i = 0; i < lam_khz.size(); ++i) l[i] = kTwoPiKhz * lam_khz[i];
  const double k = kTwoPiKhz * kKappaC;
  auto f = [&](const std::vector<double>& x) {
    std::vector<double> d(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      d[i] = -(l[i] + static_cast<double>(i) * k) * x[i];
      if (i > 0) d[i] += l[i - 1] * x[i - 1];
      if (i + 1 < dim) d[i] += static_cast<double>(i + 1) * k * x[i + 1];
    }
    return d;
  };
  const auto steps = static_cast<std::size_t>(std::llround(t_end / h));
  std::vector<double> y(dim);
  for (std::size_t s = 0; s < steps; ++s) {
    const auto k1 = f(p);
    for (std::size_t i = 0; i < dim; ++i) y[i] = p[i] + 0.5 * h * k1[i];
    const auto k2 = f(y);
    for (std::size_t i = 0; i < dim; ++i) y[i] = p[i] + 0.5 * h * k2[i];
    const auto k3 = f(y);
    for (std::size_t i = 0; i < dim; ++i) y[i] = p[i] + h * k3[i];
    const auto k4 = f(y);
    for (std::size_t i = 0; i < dim; ++i) p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return p;
}

Outcome rate_oracle() {
  double worst = 0.0;
  const double h = 0.01;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto l = lambdas(n);
    const std::size_t dim = n + 2;
    const auto model = build_rate_matrix(l, kKappaC, dim);
    for (std::size_t start = 0; start < dim; ++start) {
      std::vector<double> p0(dim, 0.0);
      p0[start] = 1.0;
      for (double t : {25.0, 100.0, 300.0}) {
        const std::vector<double> times{t};
        const auto traj = evolve_populations(model, p0, times);
        const auto ref = rk4_rate(l, dim, p0, t, h);
        for (std::size_t i = 0; i < dim; ++i)
          worst = std::max(worst, std::abs(traj.populations(0, static_cast<Eigen::Index>(i)) - ref[i]));
      }
    }
  }
  return {worst <= 1e-8, "max |dP| = " + fmt(worst, 3)};
}

std::vector<double> g_ideal_pn;

Outcome lindblad_cross() {
  bool ok = true;
  std::string d;
  g_ideal_pn.assign(4, 0.0);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto ss = lindblad_steady_state(stabilize_spec(n, ModelLevel::LindbladIdeal));
    const double f = steady_fidelity(lambdas(n), kKappaC, n);
    g_ideal_pn[n] = ss.populations[n];
    ok = ok && ss.converged && std::abs(ss.populations[n] - f) <= 0.03;
    d += "N=" + std::to_string(n) + ": " + fmt(ss.populations[n], 5) + " vs " + fmt(f, 5) + (n < 3 ? "; " : "");
  }
  return {ok, d};
}

Outcome analytic_suite() {
  double rabi = 0.0, decay = 0.0, wig = 0.0;
  {
    const auto layout = SpaceLayout::cavity_qubit_resonator(2, 2, 2);
    const double om = AngularRate::from_mhz(0.5).rad_per_us();
    Matrix h = Matrix::Zero(8, 8);
    h(layout.index({0, 1, 0}), layout.index({0, 0, 0})) = om;
    h(layout.index({0, 0, 0}), layout.index({0, 1, 0})) = om;
    Vector psi = Vector::Zero(8);
    psi(0) = 1.0;
    EvolveOptions o;
    o.t1_us = 3.0;
    o.dt_us = 0.004;
    o.sample_every_us = 0.05;
    const auto r = evolve(DensityMatrix::from_ket(layout, psi), {Operator{layout, h}, {}, {}}, {}, o);
    for (std::size_t k = 0; k < r.times_us.size(); ++k) {
      const double s = std::sin(om * r.times_us[k]);
      rabi = std::max(rabi, std::abs(r.qubit_excited_prob[k] - s * s));
    }
  }
  {
    const auto p = SystemParams::device_defaults();
    const auto layout = SpaceLayout::cavity_qubit_resonator(5, 2, 2);
    DissipationChannels ch = DissipationChannels::none();
    ch.cavity_decay = true;
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    psi(static_cast<Eigen::Index>(layout.index({3, 0, 0}))) = 1.0;
    EvolveOptions o;
    o.t1_us = 150.0;
    o.dt_us = 0.05;
    o.sample_every_us = 5.0;
    const auto r = evolve(DensityMatrix::from_ket(layout, psi), {Operator::zero(layout), {}, {}},
                          collapse_ops(p, layout, ch), o);
    for (Eigen::Index row = 0; row < r.cavity_populations.rows(); ++row) {
      double mean = 0.0;
      for (Eigen::Index i = 0; i < r.cavity_populations.cols(); ++i) mean += static_cast<double>(i) * r.cavity_populations(row, i);
      decay = std::max(decay, std::abs(mean - 3.0 * std::exp(-p.kappa_c.rad_per_us() * r.times_us[static_cast<std::size_t>(row)])));
    }
  }
  for (unsigned n = 0; n <= 3; ++n) {
    const auto rho = fock_state(30, n);
    for (double re = -1.4; re <= 1.41; re += 0.2)
      for (double im = -1.4; im <= 1.41; im += 0.2) {
        const double a2 = re * re + im * im;
        if (a2 > 4.0) continue;
        const double exact = 2.0 / std::numbers::pi * (n % 2 ? -1.0 : 1.0) * std::exp(-2.0 * a2) * std::laguerre(n, 4.0 * a2);
        wig = std::max(wig, std::abs(wigner_at(rho, {re, im}, 30) - exact));
      }
  }
  const double w1 = wigner_at(fock_state(30, 1), 0.0, 30) + 2.0 / std::numbers::pi;
  const bool ok = rabi <= 1e-6 && decay <= 1e-6 && wig <= 1e-6 && std::abs(w1) <= 1e-12;
  return {ok, "rabi " + fmt(rabi, 2) + ", decay " + fmt(decay, 2) + ", laguerre " + fmt(wig, 2) + ", W1(0)+2/pi " +
                  fmt(w1, 2)};
}

Outcome mitigation_suite() {
  ReadoutCalibration cal;
  double m = 0.0;
  for (double pg = 0.0; pg <= 1.0; pg += 0.05) {
    const auto f = qubit_readout_forward({pg, 1.0 - pg}, cal);
    const auto b = qubit_readout_correct(f, cal);
    m = std::max({m, std::abs(b.p_g - pg), std::abs(b.p_e - (1.0 - pg))});
  }
  cal.a0 = 0.82;
  cal.a1 = 0.004;
  cal.p_b = 0.03;
  const std::vector<double> truth{0.02, 0.91, 0.05, 0.02};
  const auto back = photon_population_correct(photon_population_forward(truth, cal), cal);
  double s = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) s = std::max(s, std::abs(back.populations[i] - truth[i]));
  const double w = wigner_normalize(0.924, cal);
  return {m <= 1e-12 && s <= 1e-12 && w == 1.0,
          "M^-1 M " + fmt(m, 2) + ", populations " + fmt(s, 2) + ", w0 -> " + fmt(w, 17)};
}

Outcome property_suite() {
  const auto p = SystemParams::device_defaults();
  double drift = 0.0, floor = 1.0, halving = 0.0, columns = 0.0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto setup = lindblad_setup(stabilize_spec(n, ModelLevel::LindbladIdeal));
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(setup.layout.total_dim()));
    psi(0) = 1.0;
    const auto rho0 = DensityMatrix::from_ket(setup.layout, psi);
    EvolveOptions o;
    o.t1_us = 20.0;
    o.sample_every_us = 1.0;
    const auto a = evolve(rho0, setup.hamiltonian, setup.collapse, o);
    o.dt_us = 0.5 * a.diagnostics.dt_us;
    const auto b = evolve(rho0, setup.hamiltonian, setup.collapse, o);
    drift = std::max({drift, a.diagnostics.max_trace_drift, b.diagnostics.max_trace_drift});
    floor = std::min({floor, a.diagnostics.min_eigenvalue_floor, b.diagnostics.min_eigenvalue_floor});
    halving = std::max(halving, (a.cavity_populations.bottomRows(1) - b.cavity_populations.bottomRows(1)).cwiseAbs().maxCoeff());
    const auto model = build_rate_matrix(lambdas(n), p.kappa_c.khz(), n + 2);
    columns = std::max(columns, model.gamma.colwise().sum().cwiseAbs().maxCoeff());
  }
  const bool ok = drift <= 1e-6 && floor >= -1e-6 && columns <= 1e-12 && halving < 1e-6;
  return {ok, "trace drift " + fmt(drift, 2) + ", min eig " + fmt(floor, 2) + ", column sum " + fmt(columns, 2) +
                  ", dt halving " + fmt(halving, 2)};
}

Outcome experimental_bracket() {
  const double measured[] = {0.0, 0.93, 0.86, 0.77};
  bool ok = true;
  std::string d;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto spur = lindblad_steady_state(stabilize_spec(n, ModelLevel::LindbladSpurious));
    const double sim = std::min(g_ideal_pn[n], spur.populations[n]);
    ok = ok && spur.converged && sim >= measured[n];
    d += "N=" + std::to_string(n) + ": " + fmt(sim, 4) + " >= " + fmt(measured[n], 2) + (n < 3 ? "; " : "");
  }
  return {ok, d};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"stabilizing rates", stabilizing_rates},
      {"steady fidelities", steady_fidelities},
      {"decay times", decay_times},
      {"rate model vs direct RK4", rate_oracle},
      {"lindblad vs rate steady state", lindblad_cross},
      {"analytic physics", analytic_suite},
      {"mitigation", mitigation_suite},
      {"properties", property_suite},
      {"bracket measured fidelities", experimental_bracket},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s criterion %zu: %s | %s | %.1f s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
