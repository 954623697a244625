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

#include "fockstab/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fockstab/errors.hpp"
#include "fockstab/kernels.hpp"
#include "fockstab/numerics.hpp"

namespace fockstab {

namespace {

double inf_norm(const Matrix& m) { return m.rows() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff(); }

void check_shapes(const Operator& h, std::span<const CollapseOperator> collapse, std::size_t dim) {
  if (h.dim() != dim) throw DomainError("lindblad: Hamiltonian dimension does not match the state");
  for (const auto& c : collapse)
    if (c.op.dim() != dim) throw DomainError("lindblad: collapse operator '" + c.name + "' has the wrong dimension");
}

// Right-hand side evaluator with preallocated workspace. The coherent part
// uses H_eff = H - (i/2) sum L^dagger L, so that
//   drho/dt = -i H_eff rho + i (H_eff rho)^dagger + sum L rho L^dagger
// for Hermitian rho: one product for the commutator-anticommutator pair and
// two per collapse channel.
class RhsEvaluator {
 public:
  RhsEvaluator(const TimeDependentHamiltonian& h, std::span<const CollapseOperator> collapse)
      : n_(static_cast<Eigen::Index>(h.static_part.dim())), kernels_(kernels::active()) {
    heff_static_ = h.static_part.data();
    for (const auto& c : collapse) {
      heff_static_ -= cplx{0.0, 0.5} * (c.op.data().adjoint() * c.op.data());
      jumps_.push_back(c.op.data());
    }
    for (const auto& t : h.oscillating) osc_.push_back({t.op.data(), t.op.data().adjoint(), t.omega});
    heff_ = heff_static_;
    x_.resize(n_, n_);
    y_.resize(n_, n_);
  }

  const kernels::KernelTable& kernels() const { return kernels_; }

  void set_time(double t) {
    if (osc_.empty()) return;
    heff_ = heff_static_;
    for (const auto& o : osc_) {
      const cplx ph = std::polar(1.0, o.omega * t);
      heff_ += ph * o.op + std::conj(ph) * o.op_adj;
    }
  }

  // out = L(rho) at the time last passed to set_time().
  void apply(const Matrix& rho, Matrix& out) {
    const auto n = static_cast<std::size_t>(n_);
    kernels_.gemm(n, heff_.data(), rho.data(), x_.data());
    kernels_.skew_hermitian(n, x_.data(), out.data());
    for (const auto& l : jumps_) {
      kernels_.gemm(n, l.data(), rho.data(), y_.data());
      kernels_.gemm_adj_acc(n, y_.data(), l.data(), out.data());
    }
  }

 private:
  struct Osc {
    Matrix op, op_adj;
    double omega;
  };
  Eigen::Index n_;
  const kernels::KernelTable& kernels_;
  Matrix heff_static_, heff_, x_, y_;
  std::vector<Matrix> jumps_;
  std::vector<Osc> osc_;
};

std::vector<double> cavity_diagonal(const SpaceLayout& layout, const Matrix& rho) {
  const std::size_t dc = layout.dim(0);
  const std::size_t rest = layout.total_dim() / dc;
  std::vector<double> p(dc, 0.0);
  for (std::size_t i = 0; i < dc; ++i)
    for (std::size_t r = 0; r < rest; ++r) {
      const auto k = static_cast<Eigen::Index>(i * rest + r);
      p[i] += rho(k, k).real();
    }
  return p;
}

double qubit_ground_population(const SpaceLayout& layout, const Matrix& rho) {
  if (layout.subsystem_count() < 2) return 1.0;
  double pg = 0.0;
  for (std::size_t idx = 0; idx < layout.total_dim(); ++idx) {
    if (layout.labels(idx)[1] == 0) {
      const auto k = static_cast<Eigen::Index>(idx);
      pg += rho(k, k).real();
    }
  }
  return pg;
}

double min_eig(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

Matrix lindblad_rhs(const DensityMatrix& rho, const Operator& hamiltonian, std::span<const CollapseOperator> collapse) {
  check_shapes(hamiltonian, collapse, rho.dim());
  const Matrix& r = rho.data();
  const cplx iu{0.0, 1.0};
  Matrix out = -iu * (hamiltonian.data() * r - r * hamiltonian.data());
  for (const auto& c : collapse) {
    const Matrix& l = c.op.data();
    const Matrix ldl = l.adjoint() * l;
    out += l * r * l.adjoint() - 0.5 * (ldl * r + r * ldl);
  }
  return out;
}

double max_stable_dt(const TimeDependentHamiltonian& hamiltonian, std::span<const CollapseOperator> collapse) {
  double scale = inf_norm(hamiltonian.static_part.data());
  for (const auto& t : hamiltonian.oscillating) scale += 2.0 * inf_norm(t.op.data());
  for (const auto& c : collapse) scale += 0.5 * inf_norm(c.op.data().adjoint() * c.op.data());
  const double f_max = hamiltonian.max_frequency() + scale;
  if (f_max <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (numerics().dt_safety_divisor * f_max);
}

EvolutionResult evolve(const DensityMatrix& rho0, const TimeDependentHamiltonian& hamiltonian,
                       std::span<const CollapseOperator> collapse, const EvolveOptions& options) {
  const auto& tol = numerics();
  const std::size_t dim = rho0.dim();
  check_shapes(hamiltonian.static_part, collapse, dim);
  if (!(options.t1_us > options.t0_us)) throw DomainError("evolve: t1 must exceed t0");

  const double span_us = options.t1_us - options.t0_us;
  const double dt_limit = max_stable_dt(hamiltonian, collapse);
  double dt = options.dt_us > 0.0 ? options.dt_us : std::min(dt_limit, span_us);
  if (dt > dt_limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "evolve: dt = " << dt << " us exceeds the stability bound " << dt_limit << " us";
    throw DomainError(os.str());
  }
  // Uniform steps that land on every sample time; only the final step may be shorter.
  std::size_t steps = 0, steps_per_sample = 0;
  if (options.sample_every_us > 0.0 && options.sample_every_us < span_us) {
    steps_per_sample = static_cast<std::size_t>(std::ceil(options.sample_every_us / dt - 1e-9));
    dt = options.sample_every_us / static_cast<double>(steps_per_sample);
    steps = static_cast<std::size_t>(std::ceil(span_us / dt - 1e-9));
  } else {
    steps = static_cast<std::size_t>(std::ceil(span_us / dt - 1e-9));
    dt = span_us / static_cast<double>(steps);
    steps_per_sample = steps;
  }
  const double stationarity_tol =
      options.stationarity_tol_per_us > 0.0 ? options.stationarity_tol_per_us : tol.stationarity_tol_per_us;

  RhsEvaluator rhs{hamiltonian, collapse};
  const auto& kern = rhs.kernels();
  const auto n = static_cast<Eigen::Index>(dim);
  const std::size_t len = dim * dim;
  Matrix rho = rho0.data();
  Matrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);

  EvolutionResult result;
  auto& diag = result.diagnostics;
  diag.dt_us = dt;
  diag.kernel = kern.name;
  diag.min_eigenvalue_floor = std::numeric_limits<double>::infinity();
  const std::size_t dc = rho0.layout().dim(0);
  std::vector<std::vector<double>> pops;
  std::vector<double> prev_pops;
  double prev_time = options.t0_us;
  bool warned_top = false;

  auto record = [&](double t) {
    const double drift = std::abs(rho.trace().real() - 1.0);
    diag.max_trace_drift = std::max(diag.max_trace_drift, drift);
    if (drift > tol.evolve_trace_drift_abort) {
      std::ostringstream os;
      os << "t = " << t << " us, |tr(rho) - 1| = " << drift;
      throw NumericalError("evolve: trace drift above abort threshold", os.str());
    }
    if (options.check_positivity) diag.min_eigenvalue_floor = std::min(diag.min_eigenvalue_floor, min_eig(rho));
    auto p = cavity_diagonal(rho0.layout(), rho);
    if (dc >= 2) {
      diag.max_top_level_occupancy = std::max(diag.max_top_level_occupancy, p.back());
      if (p.back() > tol.top_level_occupancy_warn && !warned_top) {
        warned_top = true;
        std::ostringstream os;
        os << "top cavity level occupancy " << p.back() << " at t = " << t << " us exceeds "
           << tol.top_level_occupancy_warn << "; consider a larger truncation";
        diag.warnings.push_back(os.str());
      }
    }
    result.times_us.push_back(t);
    result.qubit_excited_prob.push_back(1.0 - qubit_ground_population(rho0.layout(), rho));
    if (options.keep_states) result.full_states.push_back(DensityMatrix::unchecked(rho0.layout(), rho));
    pops.push_back(std::move(p));
  };

  record(options.t0_us);
  prev_pops = pops.back();
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = options.t0_us + static_cast<double>(s) * dt;
    const double h = (s + 1 == steps) ? options.t1_us - t : dt;
    rhs.set_time(t);
    rhs.apply(rho, k1);
    tmp = rho;
    kern.axpy(len, 0.5 * h, k1.data(), tmp.data());
    rhs.set_time(t + 0.5 * h);
    rhs.apply(tmp, k2);
    tmp = rho;
    kern.axpy(len, 0.5 * h, k2.data(), tmp.data());
    rhs.apply(tmp, k3);
    tmp = rho;
    kern.axpy(len, h, k3.data(), tmp.data());
    rhs.set_time(t + h);
    rhs.apply(tmp, k4);
    kern.axpy(len, h / 6.0, k1.data(), rho.data());
    kern.axpy(len, h / 3.0, k2.data(), rho.data());
    kern.axpy(len, h / 3.0, k3.data(), rho.data());
    kern.axpy(len, h / 6.0, k4.data(), rho.data());
    kern.hermitize(dim, rho.data());
    ++diag.steps;

    const bool last = (s + 1 == steps);
    if ((s + 1) % steps_per_sample == 0 || last) {
      const double t_now = last                      ? options.t1_us
                           : steps_per_sample < steps ? options.t0_us + static_cast<double>((s + 1) / steps_per_sample) *
                                                                            options.sample_every_us
                                                      : options.t0_us + static_cast<double>(s + 1) * dt;
      record(t_now);
      if (options.stop_when_stationary) {
        double change = 0.0;
        for (std::size_t i = 0; i < dc; ++i) change = std::max(change, std::abs(pops.back()[i] - prev_pops[i]));
        const double rate = change / (t_now - prev_time);
        if (rate < stationarity_tol) {
          diag.stopped_stationary = true;
          break;
        }
      }
      prev_pops = pops.back();
      prev_time = t_now;
    }
  }

  if (diag.max_trace_drift > tol.evolve_trace_drift_warn) {
    std::ostringstream os;
    os << "trace drift " << diag.max_trace_drift << " exceeds " << tol.evolve_trace_drift_warn;
    diag.warnings.push_back(os.str());
  }
  if (options.check_positivity && diag.min_eigenvalue_floor < -tol.evolve_positivity_floor) {
    std::ostringstream os;
    os << "minimum eigenvalue " << diag.min_eigenvalue_floor << " below " << -tol.evolve_positivity_floor;
    diag.warnings.push_back(os.str());
  }
  if (!options.check_positivity) diag.min_eigenvalue_floor = std::numeric_limits<double>::quiet_NaN();

  result.cavity_populations.resize(static_cast<Eigen::Index>(pops.size()), static_cast<Eigen::Index>(dc));
  for (std::size_t r = 0; r < pops.size(); ++r)
    for (std::size_t i = 0; i < dc; ++i)
      result.cavity_populations(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = pops[r][i];
  result.final_state = DensityMatrix::unchecked(rho0.layout(), rho);
  return result;
}

DensityMatrix steady_state(const TimeDependentHamiltonian& hamiltonian, std::span<const CollapseOperator> collapse) {
  if (!hamiltonian.is_static())
    throw DomainError("steady_state: Hamiltonian has oscillating terms; use evolve with stop_when_stationary");
  const auto& layout = hamiltonian.static_part.layout();
  const std::size_t dim = layout.total_dim();
  check_shapes(hamiltonian.static_part, collapse, dim);
  const auto n = static_cast<Eigen::Index>(dim);
  const cplx iu{0.0, 1.0};
  const Matrix id = Matrix::Identity(n, n);
  const Matrix& h = hamiltonian.static_part.data();

  // Column-major vec: vec(A X B) = (B^T kron A) vec(X).
  auto kron = [](const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  Matrix liou = -iu * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& c : collapse) {
    const Matrix& l = c.op.data();
    const Matrix ldl = l.adjoint() * l;
    liou += kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id);
  }

  Eigen::FullPivLU<Matrix> lu(liou);
  lu.setThreshold(numerics().steady_state_rank_tol);
  const Eigen::Index nullity = liou.cols() - lu.rank();
  if (nullity != 1) {
    std::ostringstream os;
    os << "steady_state: stationary space has dimension " << nullity << " (expected 1)";
    throw DomainError(os.str());
  }

  // Unique null vector: replace one equation by the trace condition.
  Matrix sys = liou;
  Vector rhs = Vector::Zero(liou.rows());
  sys.row(0).setZero();
  for (Eigen::Index j = 0; j < n; ++j) sys(0, j * n + j) = 1.0;
  rhs(0) = 1.0;
  const Vector x = sys.partialPivLu().solve(rhs);
  Matrix rho = Eigen::Map<const Matrix>(x.data(), n, n);
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();

  const DensityMatrix out = DensityMatrix::unchecked(layout, rho);
  const double residual = lindblad_rhs(out, hamiltonian.static_part, collapse).cwiseAbs().maxCoeff();
  if (residual > numerics().steady_state_residual_tol) {
    std::ostringstream os;
    os << "max |L(rho_ss)| = " << residual;
    throw NumericalError("steady_state: residual above tolerance", os.str());
  }
  return out;
}

std::vector<double> photon_populations(const DensityMatrix& rho) { return cavity_diagonal(rho.layout(), rho.data()); }

double qubit_excited_probability(const DensityMatrix& rho) {
  if (rho.layout().subsystem_count() < 2) return 0.0;
  return 1.0 - qubit_ground_population(rho.layout(), rho.data());
}

// --- Wigner -----------------------------------------------------------------

namespace {

std::size_t auto_truncation(std::size_t state_dim, double max_abs_alpha) {
  const double guard = max_abs_alpha * max_abs_alpha + 6.0 * max_abs_alpha + 15.0;
  return std::max<std::size_t>(state_dim + static_cast<std::size_t>(std::ceil(guard)), 25);
}

double wigner_value(const DisplacementGenerator& gen, const Matrix& rho, cplx alpha) {
  // tr[D(a) P D(-a) rho] = sum_n (-1)^n (D(-a) rho D(a))_nn, and rho lives on
  // the first d levels, so only d columns of D(-a) are needed.
  const auto d = rho.rows();
  const Matrix m = gen.columns(-alpha, static_cast<std::size_t>(d));
  const Matrix mr = m * rho;
  double w = 0.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    double xnn = 0.0;
    for (Eigen::Index c = 0; c < d; ++c) xnn += (mr(k, c) * std::conj(m(k, c))).real();
    w += (k % 2 == 0) ? xnn : -xnn;
  }
  return 2.0 / std::numbers::pi * w;
}

void require_single_mode(const DensityMatrix& rho) {
  if (rho.layout().subsystem_count() != 1) throw DomainError("wigner: expects a single-mode (cavity-reduced) state");
}

}  // namespace

double WignerGrid::integral() const {
  if (axis.size() < 2) return 0.0;
  const double h = axis[1] - axis[0];
  return values.sum() * h * h;
}

WignerGrid wigner(const DensityMatrix& rho_cavity, const WignerGridSpec& spec) {
  require_single_mode(rho_cavity);
  if (spec.points < 1) throw DomainError("wigner: need at least one grid point");
  if (!(spec.alpha_max >= 0.0)) throw DomainError("wigner: alpha_max must be >= 0");
  const std::size_t d = rho_cavity.dim();
  const double corner = spec.alpha_max * std::numbers::sqrt2;
  WignerGrid grid;
  grid.truncation_dim = spec.truncation_dim > 0 ? spec.truncation_dim : auto_truncation(d, corner);
  if (grid.truncation_dim < d) throw DomainError("wigner: truncation_dim smaller than the state dimension");
  if (!displacement_within_guard(corner, grid.truncation_dim)) {
    std::ostringstream os;
    os << "grid corner |alpha| = " << corner << " exceeds the displacement guard for truncation "
       << grid.truncation_dim;
    grid.warnings.push_back(os.str());
  }
  grid.axis.resize(spec.points);
  for (std::size_t i = 0; i < spec.points; ++i)
    grid.axis[i] = spec.points == 1 ? 0.0
                                    : -spec.alpha_max + 2.0 * spec.alpha_max * static_cast<double>(i) /
                                                            static_cast<double>(spec.points - 1);
  const DisplacementGenerator gen{grid.truncation_dim};
  const auto np = static_cast<Eigen::Index>(spec.points);
  grid.values.resize(np, np);
  for (Eigen::Index i = 0; i < np; ++i)
    for (Eigen::Index j = 0; j < np; ++j)
      grid.values(i, j) = wigner_value(gen, rho_cavity.data(), grid.alpha(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  return grid;
}

double wigner_at(const DensityMatrix& rho_cavity, cplx alpha, std::size_t truncation_dim) {
  require_single_mode(rho_cavity);
  const std::size_t dim = truncation_dim > 0 ? truncation_dim : auto_truncation(rho_cavity.dim(), std::abs(alpha));
  if (dim < rho_cavity.dim()) throw DomainError("wigner_at: truncation_dim smaller than the state dimension");
  return wigner_value(DisplacementGenerator{dim}, rho_cavity.data(), alpha);
}

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("state_fidelity: dimension mismatch");
  if (sigma.purity() < 1.0 - numerics().purity_tol) throw DomainError("state_fidelity: target state is not pure");
  const double f = (rho.data() * sigma.data()).trace().real();
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace fockstab
