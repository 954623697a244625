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

// Dense quantum linear algebra on the cavity (x) qubit (x) resonator space.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fockstab {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Subsystem slots of the composite space. The order is fixed.
enum class Subsystem : std::size_t { Cavity = 0, Qubit = 1, Resonator = 2 };

/// Ordered subsystem dimensions. Basis index of |i, q, r> is row-major in the
/// labels, matching the Kronecker product of factors in the same order.
class SpaceLayout {
 public:
  SpaceLayout() : dims_{1} {}
  explicit SpaceLayout(std::vector<std::size_t> dims);

  static SpaceLayout single(std::size_t dim) { return SpaceLayout({dim}); }
  static SpaceLayout cavity_qubit_resonator(std::size_t dc, std::size_t dq, std::size_t dr) {
    return SpaceLayout({dc, dq, dr});
  }

  std::size_t total_dim() const { return total_; }
  std::size_t subsystem_count() const { return dims_.size(); }
  std::size_t dim(std::size_t index) const { return dims_.at(index); }
  std::size_t dim(Subsystem s) const { return dim(static_cast<std::size_t>(s)); }
  const std::vector<std::size_t>& dims() const { return dims_; }

  /// Basis index of a product label, one entry per subsystem.
  std::size_t index(std::initializer_list<std::size_t> labels) const;
  std::size_t index(std::span<const std::size_t> labels) const;
  /// Inverse of index().
  std::vector<std::size_t> labels(std::size_t index) const;

  bool operator==(const SpaceLayout&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

class Operator {
 public:
  Operator(SpaceLayout layout, Matrix data);

  static Operator identity(const SpaceLayout& layout);
  static Operator zero(const SpaceLayout& layout);

  const SpaceLayout& layout() const { return layout_; }
  const Matrix& data() const { return data_; }
  std::size_t dim() const { return layout_.total_dim(); }

  Operator adjoint() const { return {layout_, data_.adjoint()}; }
  bool is_hermitian(double tol) const;

  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  Operator operator*(cplx s) const { return {layout_, data_ * s}; }
  Operator& operator+=(const Operator& o);

  cplx element(std::size_t row, std::size_t col) const { return data_(row, col); }

 private:
  SpaceLayout layout_;
  Matrix data_;
};

inline Operator operator*(cplx s, const Operator& op) { return op * s; }

/// Hermitian, unit-trace, positive semidefinite within numerics() tolerances.
class DensityMatrix {
 public:
  /// Validates every invariant; throws DomainError naming the violated one.
  static DensityMatrix from_matrix(SpaceLayout layout, Matrix data);
  /// |psi><psi|; psi must be normalized within trace_tol.
  static DensityMatrix from_ket(SpaceLayout layout, const Vector& psi);
  /// Skips validation. For solver internals whose output is checked elsewhere.
  static DensityMatrix unchecked(SpaceLayout layout, Matrix data);

  const SpaceLayout& layout() const { return layout_; }
  const Matrix& data() const { return data_; }
  std::size_t dim() const { return layout_.total_dim(); }

  double trace() const { return data_.trace().real(); }
  double purity() const;
  double min_eigenvalue() const;
  cplx expectation(const Operator& op) const;
  double population(std::size_t basis_index) const { return data_(basis_index, basis_index).real(); }

 private:
  DensityMatrix(SpaceLayout layout, Matrix data) : layout_(std::move(layout)), data_(std::move(data)) {}
  SpaceLayout layout_;
  Matrix data_;
};

/// Largest elementwise |A - A^dagger|.
double hermitian_defect(const Matrix& a);

DensityMatrix fock_state(std::size_t dim, std::size_t n);
Operator annihilation(std::size_t dim);
Operator creation(std::size_t dim);
Operator number_operator(std::size_t dim);
Operator identity(std::size_t dim);
/// |row><col| on a single subsystem.
Operator projector(std::size_t dim, std::size_t row, std::size_t col);

/// Kronecker product in list order; the result layout concatenates factor dims.
Operator tensor(std::span<const Operator> ops);
Operator tensor(std::initializer_list<Operator> ops);
DensityMatrix tensor(std::span<const DensityMatrix> states);
DensityMatrix tensor(std::initializer_list<DensityMatrix> states);

/// Single-subsystem operator lifted onto `layout` at slot `index`.
Operator embed(const Operator& single, std::size_t index, const SpaceLayout& layout);
inline Operator embed(const Operator& single, Subsystem s, const SpaceLayout& layout) {
  return embed(single, static_cast<std::size_t>(s), layout);
}

/// Reduced state of subsystem `keep`.
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep);
inline DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  return partial_trace(rho, static_cast<std::size_t>(keep));
}

struct HermitianEig {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // unitary, columns are eigenvectors
};
HermitianEig hermitian_eig(const Matrix& a);
inline HermitianEig hermitian_eig(const Operator& a) { return hermitian_eig(a.data()); }

struct GeneralEig {
  Eigen::VectorXcd values;
  Matrix vectors;  // right eigenvectors, unit 2-norm columns
  double max_residual = 0.0;  // max ||A v - eta v|| / max(1, ||A||)
};
GeneralEig general_eig(const Matrix& a);

Matrix expm(const Matrix& a);
Operator expm(const Operator& a);

struct Displacement {
  Operator op;
  bool truncation_warning = false;
  std::string warning;
};

/// True when |alpha|^2 + 3|alpha| < dim.
bool displacement_within_guard(double abs_alpha, std::size_t dim);

/// D(alpha) = expm(alpha a^dagger - conj(alpha) a) on a `dim`-level truncation.
Displacement displacement(cplx alpha, std::size_t dim);

/// D(alpha) for many alphas on one truncation. Diagonalizes i(a^dagger - a)
/// once, then D(r e^{i theta}) = U_theta V exp(-i r mu) V^dagger U_theta^dagger
/// with U_theta = exp(i theta n). Same matrix as displacement(), O(dim^2) per
/// column instead of a fresh exponential.
class DisplacementGenerator {
 public:
  explicit DisplacementGenerator(std::size_t dim);
  std::size_t dim() const { return dim_; }
  Matrix operator()(cplx alpha) const { return columns(alpha, dim_); }
  /// First `ncols` columns of D(alpha).
  Matrix columns(cplx alpha, std::size_t ncols) const;

 private:
  std::size_t dim_;
  Eigen::VectorXd mu_;
  Matrix v_;
};

/// diag((-1)^n)
Operator parity(std::size_t dim);

}  // namespace fockstab
