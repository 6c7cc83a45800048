// Copyright 2026 The gaugenoise Authors
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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace gaugenoise {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Largest Hilbert-space dimension any builder will produce unless told otherwise.
inline constexpr std::size_t kDefaultMaxDim = 4096;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested Hilbert space (or tensor, or enumeration) exceeds a configured bound.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented contract (non-Hermitian, bad parameter, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A square complex operator on a tensor-product space.
///
/// Storage is compressed sparse; all builders assemble through this form and
/// callers densify when they need a factorization. `local_dims` records the
/// factor dimensions the operator was built for; their product is `dim()`.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  OperatorMatrix(SparseMatrix m, std::vector<int> local_dims, bool hermitian_hint = false);

  static OperatorMatrix identity(std::vector<int> local_dims);
  static OperatorMatrix zero(std::vector<int> local_dims);
  static OperatorMatrix from_dense(const DenseMatrix& m, std::vector<int> local_dims,
                                   bool hermitian_hint = false);

  Eigen::Index dim() const { return m_.rows(); }
  const SparseMatrix& sparse() const { return m_; }
  DenseMatrix dense() const { return DenseMatrix(m_); }
  std::span<const int> local_dims() const { return dims_; }
  bool hermitian_hint() const { return hermitian_; }

  /// max_ij |M_ij - conj(M_ji)|
  double max_asymmetry() const;
  double frobenius_norm() const { return m_.norm(); }
  Complex trace() const;

  OperatorMatrix adjoint() const;

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(Complex s);

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator*(OperatorMatrix a, Complex s) { return a *= s; }
  friend OperatorMatrix operator*(Complex s, OperatorMatrix a) { return a *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  SparseMatrix m_;
  std::vector<int> dims_;
  bool hermitian_ = false;
};

/// Single-factor operator from a small dense matrix (Pauli matrices and friends).
OperatorMatrix local_operator(const DenseMatrix& m, bool hermitian_hint = false);

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b,
                    std::size_t max_dim = kDefaultMaxDim);

/// Places `op` on factor `position` of a product space with identities elsewhere.
OperatorMatrix embed_site_operator(const OperatorMatrix& op, std::size_t position,
                                   std::span<const int> local_dims,
                                   std::size_t max_dim = kDefaultMaxDim);

/// Eigenvalues ascending, eigenvectors as unitary columns.
///
/// Each eigenvector has its largest-magnitude component (first one on ties)
/// made real and positive, so bases are reproducible run to run.
struct HermitianEigensystem {
  std::vector<double> eigenvalues;
  DenseMatrix eigenvectors;
  Eigen::Index source_dim = 0;

  Eigen::Index dim() const { return source_dim; }
  /// omega_ab = e_a - e_b
  double bohr(Eigen::Index a, Eigen::Index b) const {
    return eigenvalues[static_cast<std::size_t>(a)] - eigenvalues[static_cast<std::size_t>(b)];
  }
};

/// Diagonalizes a Hermitian operator.
///
/// The matrix is first split into the connected components of its sparsity
/// graph and each block is diagonalized densely. Eigenvectors therefore never
/// mix basis states that the operator does not connect, which keeps operators
/// expressed in this eigenbasis sparse.
HermitianEigensystem hermitian_eig(const OperatorMatrix& h, double tolerance = 1e-10);

/// Re Tr(rho * obs). Dimensions must match and rho must have unit trace
/// within 1e-6. A warning goes to the diagnostic sink if |Im| > 1e-8.
double expectation(const DenseMatrix& rho, const OperatorMatrix& obs);
double expectation(const DenseMatrix& rho, const DenseMatrix& obs);

/// Tr(a * b) without forming the product.
Complex trace_product(const DenseMatrix& a, const DenseMatrix& b);

/// ||ab - ba||_F
double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b);

/// Pure product state |psi><psi| with psi = psi_1 (x) psi_2 (x) ...
DenseMatrix product_density_matrix(std::span<const Eigen::VectorXcd> local_states);

// Local operators. Spin basis index 0 = up (sigma^z = +1).
namespace pauli {
DenseMatrix identity(int d = 2);
DenseMatrix x();
DenseMatrix y();
DenseMatrix z();
DenseMatrix plus();   // sigma^+ = |0><1|
DenseMatrix minus();  // sigma^- = |1><0|
}  // namespace pauli

}  // namespace gaugenoise
