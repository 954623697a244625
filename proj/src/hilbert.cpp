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

#include "fockstab/hilbert.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fockstab/errors.hpp"
#include "fockstab/numerics.hpp"

namespace fockstab {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace

SpaceLayout::SpaceLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DomainError("SpaceLayout: at least one subsystem required");
  for (std::size_t d : dims_)
    if (d < 1) throw DomainError("SpaceLayout: subsystem dimensions must be >= 1");
  total_ = std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t SpaceLayout::index(std::initializer_list<std::size_t> labels) const {
  return index(std::span<const std::size_t>(labels.begin(), labels.size()));
}

std::size_t SpaceLayout::index(std::span<const std::size_t> labels) const {
  if (labels.size() != dims_.size()) throw DomainError("SpaceLayout::index: label count mismatch");
  std::size_t idx = 0;
  for (std::size_t s = 0; s < dims_.size(); ++s) {
    if (labels[s] >= dims_[s]) throw DomainError("SpaceLayout::index: label out of range");
    idx = idx * dims_[s] + labels[s];
  }
  return idx;
}

std::vector<std::size_t> SpaceLayout::labels(std::size_t index) const {
  if (index >= total_) throw DomainError("SpaceLayout::labels: index out of range");
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t s = dims_.size(); s-- > 0;) {
    out[s] = index % dims_[s];
    index /= dims_[s];
  }
  return out;
}

// --- Operator ---------------------------------------------------------------

Operator::Operator(SpaceLayout layout, Matrix data) : layout_(std::move(layout)), data_(std::move(data)) {
  const auto n = static_cast<Eigen::Index>(layout_.total_dim());
  if (data_.rows() != n || data_.cols() != n)
    throw DomainError("Operator: matrix shape does not match layout dimension");
}

Operator Operator::identity(const SpaceLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  return {layout, Matrix::Identity(n, n)};
}

Operator Operator::zero(const SpaceLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  return {layout, Matrix::Zero(n, n)};
}

bool Operator::is_hermitian(double tol) const { return hermitian_defect(data_) <= tol; }

Operator Operator::operator+(const Operator& o) const {
  if (!(layout_ == o.layout_)) throw DomainError("Operator +: layout mismatch");
  return {layout_, data_ + o.data_};
}

Operator Operator::operator-(const Operator& o) const {
  if (!(layout_ == o.layout_)) throw DomainError("Operator -: layout mismatch");
  return {layout_, data_ - o.data_};
}

Operator Operator::operator*(const Operator& o) const {
  if (!(layout_ == o.layout_)) throw DomainError("Operator *: layout mismatch");
  return {layout_, data_ * o.data_};
}

Operator& Operator::operator+=(const Operator& o) {
  if (!(layout_ == o.layout_)) throw DomainError("Operator +=: layout mismatch");
  data_ += o.data_;
  return *this;
}

double hermitian_defect(const Matrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(a - a.adjoint());
}

// --- DensityMatrix ----------------------------------------------------------

DensityMatrix DensityMatrix::from_matrix(SpaceLayout layout, Matrix data) {
  const auto& tol = numerics();
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  if (data.rows() != n || data.cols() != n)
    throw DomainError("DensityMatrix: matrix shape does not match layout dimension");
  if (const double h = hermitian_defect(data); h > tol.hermitian_tol) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian (max |rho - rho^dagger| = " << h << ")";
    throw DomainError(os.str());
  }
  if (const double tr = data.trace().real(); std::abs(tr - 1.0) > tol.trace_tol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw DomainError(os.str());
  }
  DensityMatrix rho{std::move(layout), std::move(data)};
  if (const double m = rho.min_eigenvalue(); m < -tol.positivity_tol) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << m;
    throw DomainError(os.str());
  }
  return rho;
}

DensityMatrix DensityMatrix::from_ket(SpaceLayout layout, const Vector& psi) {
  if (psi.size() != static_cast<Eigen::Index>(layout.total_dim()))
    throw DomainError("DensityMatrix::from_ket: vector length does not match layout");
  if (std::abs(psi.squaredNorm() - 1.0) > numerics().trace_tol)
    throw DomainError("DensityMatrix::from_ket: state vector is not normalized");
  return DensityMatrix{std::move(layout), psi * psi.adjoint()};
}

DensityMatrix DensityMatrix::unchecked(SpaceLayout layout, Matrix data) {
  return DensityMatrix{std::move(layout), std::move(data)};
}

double DensityMatrix::purity() const { return (data_ * data_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(data_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

cplx DensityMatrix::expectation(const Operator& op) const {
  if (!(op.layout() == layout_)) throw DomainError("expectation: layout mismatch");
  return (op.data() * data_).trace();
}

// --- constructors -----------------------------------------------------------

DensityMatrix fock_state(std::size_t dim, std::size_t n) {
  if (dim < 1) throw DomainError("fock_state: dim must be >= 1");
  if (n >= dim) throw DomainError("fock_state: level index out of range");
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = 1.0;
  return DensityMatrix::unchecked(SpaceLayout::single(dim), std::move(m));
}

Operator annihilation(std::size_t dim) {
  if (dim < 2) throw DomainError("annihilation: dim must be >= 2");
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {SpaceLayout::single(dim), std::move(m)};
}

Operator creation(std::size_t dim) { return annihilation(dim).adjoint(); }

Operator number_operator(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) m(n, n) = static_cast<double>(n);
  return {SpaceLayout::single(dim), std::move(m)};
}

Operator identity(std::size_t dim) { return Operator::identity(SpaceLayout::single(dim)); }

Operator projector(std::size_t dim, std::size_t row, std::size_t col) {
  if (row >= dim || col >= dim) throw DomainError("projector: index out of range");
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return {SpaceLayout::single(dim), std::move(m)};
}

Operator tensor(std::span<const Operator> ops) {
  if (ops.empty()) throw DomainError("tensor: empty operator list");
  std::vector<std::size_t> dims;
  Matrix acc = Matrix::Identity(1, 1);
  for (const auto& op : ops) {
    dims.insert(dims.end(), op.layout().dims().begin(), op.layout().dims().end());
    acc = kron(acc, op.data());
  }
  return {SpaceLayout(std::move(dims)), std::move(acc)};
}

Operator tensor(std::initializer_list<Operator> ops) {
  return tensor(std::span<const Operator>(ops.begin(), ops.size()));
}

DensityMatrix tensor(std::span<const DensityMatrix> states) {
  if (states.empty()) throw DomainError("tensor: empty state list");
  std::vector<std::size_t> dims;
  Matrix acc = Matrix::Identity(1, 1);
  for (const auto& s : states) {
    dims.insert(dims.end(), s.layout().dims().begin(), s.layout().dims().end());
    acc = kron(acc, s.data());
  }
  return DensityMatrix::unchecked(SpaceLayout(std::move(dims)), std::move(acc));
}

DensityMatrix tensor(std::initializer_list<DensityMatrix> states) {
  return tensor(std::span<const DensityMatrix>(states.begin(), states.size()));
}

Operator embed(const Operator& single, std::size_t index, const SpaceLayout& layout) {
  if (index >= layout.subsystem_count()) throw DomainError("embed: subsystem index out of range");
  if (single.dim() != layout.dim(index)) throw DomainError("embed: operator dimension mismatch");
  std::vector<Operator> factors;
  factors.reserve(layout.subsystem_count());
  for (std::size_t s = 0; s < layout.subsystem_count(); ++s)
    factors.push_back(s == index ? single : identity(layout.dim(s)));
  Operator out = tensor(factors);
  return {layout, out.data()};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep) {
  const auto& layout = rho.layout();
  if (keep >= layout.subsystem_count()) throw DomainError("partial_trace: subsystem index out of range");
  std::size_t left = 1, right = 1;
  for (std::size_t s = 0; s < keep; ++s) left *= layout.dim(s);
  for (std::size_t s = keep + 1; s < layout.subsystem_count(); ++s) right *= layout.dim(s);
  const std::size_t dk = layout.dim(keep);
  const auto d = static_cast<Eigen::Index>(dk);
  Matrix out = Matrix::Zero(d, d);
  const Matrix& m = rho.data();
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      cplx s{};
      for (std::size_t l = 0; l < left; ++l)
        for (std::size_t r = 0; r < right; ++r)
          s += m(static_cast<Eigen::Index>((l * dk + a) * right + r),
                 static_cast<Eigen::Index>((l * dk + b) * right + r));
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
    }
  return DensityMatrix::unchecked(SpaceLayout::single(dk), std::move(out));
}

// --- spectral ---------------------------------------------------------------

HermitianEig hermitian_eig(const Matrix& a) {
  if (a.rows() != a.cols()) throw DomainError("hermitian_eig: matrix is not square");
  const double scale = std::max(1.0, max_abs(a));
  if (hermitian_defect(a) > numerics().hermitian_tol * scale)
    throw DomainError("hermitian_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eig: solver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

GeneralEig general_eig(const Matrix& a) {
  if (a.rows() != a.cols()) throw DomainError("general_eig: matrix is not square");
  Eigen::ComplexEigenSolver<Matrix> es(a, true);
  if (es.info() != Eigen::Success) throw NumericalError("general_eig: solver did not converge");
  GeneralEig out{es.eigenvalues(), es.eigenvectors(), 0.0};
  const double scale = std::max(1.0, a.operatorNorm());
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
    const double nrm = out.vectors.col(k).norm();
    if (nrm > 0.0) out.vectors.col(k) /= nrm;
    const double res = (a * out.vectors.col(k) - out.values(k) * out.vectors.col(k)).norm() / scale;
    out.max_residual = std::max(out.max_residual, res);
  }
  if (out.max_residual > numerics().general_eig_residual_tol) {
    std::ostringstream os;
    os << "max eigenpair residual " << out.max_residual;
    throw NumericalError("general_eig: eigenpair residual above tolerance", os.str());
  }
  return out;
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw DomainError("expm: matrix is not square");
  Matrix out = a.exp();
  if (!out.allFinite()) throw NumericalError("expm: overflow (non-finite result)");
  return out;
}

Operator expm(const Operator& a) { return {a.layout(), expm(a.data())}; }

bool displacement_within_guard(double abs_alpha, std::size_t dim) {
  return abs_alpha * abs_alpha + 3.0 * abs_alpha < static_cast<double>(dim);
}

Displacement displacement(cplx alpha, std::size_t dim) {
  const Operator a = annihilation(dim);
  const Operator gen{a.layout(), alpha * a.data().adjoint() - std::conj(alpha) * a.data()};
  Displacement out{expm(gen), false, {}};
  if (!displacement_within_guard(std::abs(alpha), dim)) {
    out.truncation_warning = true;
    std::ostringstream os;
    os << "displacement |alpha| = " << std::abs(alpha) << " exceeds truncation guard for dim " << dim;
    out.warning = os.str();
  }
  return out;
}

DisplacementGenerator::DisplacementGenerator(std::size_t dim) : dim_(dim) {
  const Matrix a = annihilation(dim).data();
  const Matrix k = cplx{0.0, 1.0} * (a.adjoint() - a);  // Hermitian
  Eigen::SelfAdjointEigenSolver<Matrix> es(k);
  mu_ = es.eigenvalues();
  v_ = es.eigenvectors();
}

Matrix DisplacementGenerator::columns(cplx alpha, std::size_t ncols) const {
  if (ncols > dim_) throw DomainError("DisplacementGenerator::columns: too many columns");
  const double r = std::abs(alpha);
  const double theta = std::arg(alpha);
  const auto d = static_cast<Eigen::Index>(dim_);
  const auto c = static_cast<Eigen::Index>(ncols);
  // (V^dagger U^dagger)[:, :c]: U^dagger column k is e^{-i theta k} e_k.
  Matrix right = v_.adjoint().leftCols(c);
  for (Eigen::Index k = 0; k < c; ++k) right.col(k) *= std::polar(1.0, -theta * static_cast<double>(k));
  for (Eigen::Index m = 0; m < d; ++m) right.row(m) *= std::polar(1.0, -r * mu_(m));
  Matrix out = v_ * right;
  for (Eigen::Index n = 0; n < d; ++n) out.row(n) *= std::polar(1.0, theta * static_cast<double>(n));
  return out;
}

Operator parity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return {SpaceLayout::single(dim), std::move(m)};
}

}  // namespace fockstab
