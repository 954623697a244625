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

#include "fockstab/rate.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fockstab/errors.hpp"
#include "fockstab/numerics.hpp"

namespace fockstab {

namespace {

double khz_to_angular(double nu_khz) { return 2.0 * std::numbers::pi * nu_khz * 1e-3; }

}  // namespace

double stabilization_rate(double omega, double j, double kappa_r) {
  if (!(omega > 0.0) || !(j > 0.0) || !(kappa_r > 0.0))
    throw DomainError("stabilization_rate: all rates must be > 0");
  return 1.0 / (1.0 / omega + 1.0 / j + 1.0 / kappa_r);
}

std::vector<double> pump_rates_khz(const DriveComb& comb, const SystemParams& params) {
  if (comb.kind != CombKind::Addition) throw DomainError("pump_rates_khz: comb is not a photon-addition comb");
  if (comb.empty()) return {};
  comb.validate();
  std::vector<double> out(comb.highest_level() + 1, 0.0);
  for (const Tone& t : comb.tones)
    out[t.level] = stabilization_rate(t.omega_rabi.khz(), t.j_rate.khz(), params.kappa_r.khz());
  return out;
}

std::size_t RateModel::pump_target() const {
  std::size_t target = 0;
  for (std::size_t i = 0; i < lambdas_khz.size(); ++i)
    if (lambdas_khz[i] > 0.0) target = i + 1;
  return target;
}

bool RateModel::pumps_contiguous_from_vacuum() const {
  const std::size_t target = pump_target();
  for (std::size_t i = 0; i < target; ++i)
    if (!(lambdas_khz[i] > 0.0)) return false;
  return true;
}

RateModel build_rate_matrix(std::span<const double> lambdas_khz, double kappa_c_khz, std::size_t dim) {
  if (dim < 1) throw DomainError("build_rate_matrix: dim must be >= 1");
  if (!(kappa_c_khz >= 0.0)) throw DomainError("build_rate_matrix: kappa_c must be >= 0");
  RateModel m;
  m.dim = dim;
  m.kappa_c_khz = kappa_c_khz;
  m.lambdas_khz.assign(dim, 0.0);
  for (std::size_t i = 0; i < lambdas_khz.size(); ++i) {
    const double l = lambdas_khz[i];
    if (!(l >= 0.0)) throw DomainError("build_rate_matrix: pump rates must be >= 0");
    if (l > 0.0 && i + 1 >= dim) {
      std::ostringstream os;
      os << "build_rate_matrix: pump from level " << i << " leaves the truncation (dim " << dim << ")";
      throw DomainError(os.str());
    }
    if (i < dim) m.lambdas_khz[i] = l;
  }
  const double kc = khz_to_angular(kappa_c_khz);
  const auto d = static_cast<Eigen::Index>(dim);
  m.gamma = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lam_i = khz_to_angular(m.lambdas_khz[static_cast<std::size_t>(i)]);
    m.gamma(i, i) = -(lam_i + static_cast<double>(i) * kc);
    if (i > 0) m.gamma(i, i - 1) = khz_to_angular(m.lambdas_khz[static_cast<std::size_t>(i - 1)]);
    if (i + 1 < d) m.gamma(i, i + 1) = static_cast<double>(i + 1) * kc;
  }
  const GeneralEig eig = general_eig(m.gamma.cast<cplx>());
  m.eigenvalues = eig.values;
  m.eigenvectors = eig.vectors;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.eigenvectors);
  const auto& sv = svd.singularValues();
  m.eigenvector_condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  return m;
}

PopulationTrajectory evolve_populations(const RateModel& model, std::span<const double> p0,
                                        std::span<const double> times_us) {
  const auto& tol = numerics();
  if (p0.size() != model.dim) throw DomainError("evolve_populations: p0 length does not match the model");
  double sum = 0.0;
  for (double p : p0) {
    if (p < 0.0) throw DomainError("evolve_populations: negative initial population");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol.populations_sum_tol) throw DomainError("evolve_populations: p0 does not sum to 1");

  const auto d = static_cast<Eigen::Index>(model.dim);
  const Eigen::VectorXd p0v = Eigen::Map<const Eigen::VectorXd>(p0.data(), d);
  PopulationTrajectory out;
  out.times_us.assign(times_us.begin(), times_us.end());
  out.populations.resize(static_cast<Eigen::Index>(times_us.size()), d);
  out.eigenvector_condition = model.eigenvector_condition;

  if (model.eigenvector_condition > tol.defective_condition_limit) {
    out.used_expm_fallback = true;
    for (std::size_t k = 0; k < times_us.size(); ++k) {
      const Eigen::MatrixXd prop = (model.gamma * times_us[k]).exp();
      out.populations.row(static_cast<Eigen::Index>(k)) = (prop * p0v).transpose();
    }
    return out;
  }
  const Eigen::VectorXcd c = model.eigenvectors.partialPivLu().solve(p0v.cast<cplx>());
  for (std::size_t k = 0; k < times_us.size(); ++k) {
    Eigen::VectorXcd p = Eigen::VectorXcd::Zero(d);
    for (Eigen::Index m = 0; m < d; ++m) p += c(m) * std::exp(model.eigenvalues(m) * times_us[k]) * model.eigenvectors.col(m);
    out.populations.row(static_cast<Eigen::Index>(k)) = p.real().transpose();
  }
  return out;
}

std::vector<double> steady_populations(const RateModel& model) {
  if (!model.pumps_contiguous_from_vacuum())
    throw DomainError(
        "steady_populations: pumping leaves a gap below the target, so the steady state is not unique; "
        "use evolve_populations");
  const std::size_t n = model.pump_target();
  const double kc = model.kappa_c_khz;
  std::vector<double> p(model.dim, 0.0);
  p[n] = 1.0;
  for (std::size_t i = n; i-- > 0;) p[i] = static_cast<double>(i + 1) * kc / model.lambdas_khz[i] * p[i + 1];
  double sum = 0.0;
  for (double v : p) sum += v;
  for (double& v : p) v /= sum;
  return p;
}

std::vector<double> null_vector_populations(const RateModel& model) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(model.gamma);
  lu.setThreshold(1e-10);
  const Eigen::MatrixXd ker = lu.kernel();
  if (ker.cols() != 1) {
    std::ostringstream os;
    os << "null_vector_populations: null space of Gamma has dimension " << ker.cols();
    throw DomainError(os.str());
  }
  Eigen::VectorXd v = ker.col(0);
  v /= v.sum();
  return {v.data(), v.data() + v.size()};
}

double steady_fidelity(std::span<const double> lambdas_khz, double kappa_c_khz, std::size_t n) {
  if (n < 1) throw DomainError("steady_fidelity: target level must be >= 1");
  if (lambdas_khz.size() < n) throw DomainError("steady_fidelity: missing pump rates below the target");
  for (std::size_t i = 0; i < n; ++i)
    if (!(lambdas_khz[i] > 0.0)) throw DomainError("steady_fidelity: pump rates must be > 0");
  if (kappa_c_khz == 0.0) return 1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double prod = 1.0;
    for (std::size_t m = n - i; m <= n; ++m) prod *= static_cast<double>(m) * kappa_c_khz / lambdas_khz[m - 1];
    s += prod;
  }
  return 1.0 / (1.0 + s);
}

DecayMode decay_time(const RateModel& model, std::size_t n) {
  if (n >= model.dim) throw DomainError("decay_time: protected level outside the truncation");
  const auto d = static_cast<Eigen::Index>(model.dim);
  Eigen::VectorXcd e_n = Eigen::VectorXcd::Zero(d);
  e_n(static_cast<Eigen::Index>(n)) = 1.0;
  const Eigen::VectorXcd c = model.eigenvectors.partialPivLu().solve(e_n);

  DecayMode best;
  bool found = false;
  for (Eigen::Index k = 0; k < d; ++k) {
    const cplx eta = model.eigenvalues(k);
    if (std::abs(eta) <= numerics().zero_eigenvalue_tol) continue;
    const double w = std::abs(c(k) * model.eigenvectors(static_cast<Eigen::Index>(n), k));
    const bool better = !found || w > best.weight * (1.0 + 1e-12) ||
                        (std::abs(w - best.weight) <= 1e-12 * std::max(w, best.weight) && std::abs(eta.real()) < std::abs(best.eta));
    if (better) {
      best = {-1.0 / eta.real(), eta.real(), w, static_cast<std::size_t>(k)};
      found = true;
    }
  }
  if (!found || best.weight < numerics().decay_mode_min_weight)
    throw DomainError("decay_time: no decaying mode overlaps the protected level");
  return best;
}

}  // namespace fockstab
