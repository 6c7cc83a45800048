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

#include "gaugenoise/operator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "gaugenoise/diagnostics.hpp"

namespace gaugenoise {
namespace {

std::size_t product(std::span<const int> dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(os.str());
  }
}

// Union-find over basis indices, joined wherever the matrix has a nonzero.
std::vector<std::vector<Eigen::Index>> connected_blocks(const SparseMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value() == Complex(0.0)) continue;
      auto a = find(static_cast<std::size_t>(it.row()));
      auto b = find(static_cast<std::size_t>(it.col()));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  // Roots are the smallest index of their component, so iterating i upward
  // yields blocks ordered by their first basis state.
  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = find(i);
    if (slot[r] == n) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(static_cast<Eigen::Index>(i));
  }
  return blocks;
}

}  // namespace

OperatorMatrix::OperatorMatrix(SparseMatrix m, std::vector<int> local_dims, bool hermitian_hint)
    : m_(std::move(m)), dims_(std::move(local_dims)), hermitian_(hermitian_hint) {
  if (m_.rows() != m_.cols()) throw DimensionError("OperatorMatrix must be square");
  if (dims_.empty()) dims_.push_back(static_cast<int>(m_.rows()));
  if (product(dims_) != static_cast<std::size_t>(m_.rows())) {
    throw DimensionError("OperatorMatrix: local dimensions do not multiply to the matrix size");
  }
  m_.makeCompressed();
}

OperatorMatrix OperatorMatrix::identity(std::vector<int> local_dims) {
  const auto n = static_cast<Eigen::Index>(product(local_dims));
  SparseMatrix id(n, n);
  id.setIdentity();
  return {std::move(id), std::move(local_dims), true};
}

OperatorMatrix OperatorMatrix::zero(std::vector<int> local_dims) {
  const auto n = static_cast<Eigen::Index>(product(local_dims));
  return {SparseMatrix(n, n), std::move(local_dims), true};
}

OperatorMatrix OperatorMatrix::from_dense(const DenseMatrix& m, std::vector<int> local_dims,
                                          bool hermitian_hint) {
  return {m.sparseView(), std::move(local_dims), hermitian_hint};
}

double OperatorMatrix::max_asymmetry() const {
  SparseMatrix diff = m_ - SparseMatrix(m_.adjoint());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

Complex OperatorMatrix::trace() const {
  Complex t = 0.0;
  for (Eigen::Index i = 0; i < m_.rows(); ++i) t += m_.coeff(i, i);
  return t;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return {SparseMatrix(m_.adjoint()), dims_, hermitian_};
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  require_same_dim(dim(), other.dim(), "operator+");
  m_ = m_ + other.m_;
  hermitian_ = hermitian_ && other.hermitian_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  require_same_dim(dim(), other.dim(), "operator-");
  m_ = m_ - other.m_;
  hermitian_ = hermitian_ && other.hermitian_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex s) {
  m_ *= s;
  hermitian_ = hermitian_ && s.imag() == 0.0;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "operator*");
  SparseMatrix p = a.m_ * b.m_;
  p.prune(Complex(0.0));
  return {std::move(p), a.dims_, false};
}

OperatorMatrix local_operator(const DenseMatrix& m, bool hermitian_hint) {
  return OperatorMatrix::from_dense(m, {static_cast<int>(m.rows())}, hermitian_hint);
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b, std::size_t max_dim) {
  const auto n = static_cast<std::size_t>(a.dim()) * static_cast<std::size_t>(b.dim());
  if (n > max_dim) {
    std::ostringstream os;
    os << "kron: dimension " << n << " exceeds the configured maximum " << max_dim;
    throw CapacityError(os.str());
  }
  SparseMatrix k = Eigen::kroneckerProduct(a.sparse(), b.sparse());
  std::vector<int> dims(a.local_dims().begin(), a.local_dims().end());
  dims.insert(dims.end(), b.local_dims().begin(), b.local_dims().end());
  return {std::move(k), std::move(dims), a.hermitian_hint() && b.hermitian_hint()};
}

OperatorMatrix embed_site_operator(const OperatorMatrix& op, std::size_t position,
                                   std::span<const int> local_dims, std::size_t max_dim) {
  if (position >= local_dims.size()) {
    std::ostringstream os;
    os << "embed_site_operator: position " << position << " out of range for " << local_dims.size()
       << " factors";
    throw DimensionError(os.str());
  }
  if (op.dim() != local_dims[position]) {
    throw DimensionError("embed_site_operator: operator dimension does not match the local factor");
  }
  if (product(local_dims) > max_dim) {
    std::ostringstream os;
    os << "embed_site_operator: dimension " << product(local_dims) << " exceeds the configured maximum "
       << max_dim;
    throw CapacityError(os.str());
  }
  std::vector<int> left(local_dims.begin(), local_dims.begin() + static_cast<std::ptrdiff_t>(position));
  std::vector<int> right(local_dims.begin() + static_cast<std::ptrdiff_t>(position) + 1, local_dims.end());
  OperatorMatrix out = op;
  if (!left.empty()) out = kron(OperatorMatrix::identity(left), out, max_dim);
  if (!right.empty()) out = kron(out, OperatorMatrix::identity(right), max_dim);
  return out;
}

HermitianEigensystem hermitian_eig(const OperatorMatrix& h, double tolerance) {
  const double asym = h.max_asymmetry();
  if (asym > tolerance) {
    std::ostringstream os;
    os << "hermitian_eig: input is not Hermitian (max |H - H^dag| = " << asym << ")";
    throw ValidationError(os.str());
  }
  const Eigen::Index n = h.dim();
  const SparseMatrix& m = h.sparse();

  struct Level {
    double value;
    Eigen::VectorXcd vector;
  };
  std::vector<Level> levels;
  levels.reserve(static_cast<std::size_t>(n));

  for (const auto& block : connected_blocks(m)) {
    const auto bn = static_cast<Eigen::Index>(block.size());
    DenseMatrix sub(bn, bn);
    for (Eigen::Index i = 0; i < bn; ++i) {
      for (Eigen::Index j = 0; j < bn; ++j) sub(i, j) = m.coeff(block[i], block[j]);
    }
    // Average with the adjoint so tiny asymmetries do not bias the solver.
    sub = (0.5 * (sub + sub.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(sub);
    if (solver.info() != Eigen::Success) throw Error("hermitian_eig: eigensolver did not converge");
    for (Eigen::Index k = 0; k < bn; ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
      for (Eigen::Index i = 0; i < bn; ++i) v(block[i]) = solver.eigenvectors()(i, k);
      levels.push_back({solver.eigenvalues()(k), std::move(v)});
    }
  }

  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& a, const Level& b) { return a.value < b.value; });

  HermitianEigensystem eig;
  eig.source_dim = n;
  eig.eigenvalues.reserve(levels.size());
  eig.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    auto& lv = levels[static_cast<std::size_t>(k)];
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mag = std::abs(lv.vector(i));
      if (mag > best * (1.0 + 1e-12)) {
        best = mag;
        pivot = i;
      }
    }
    const Complex phase = std::conj(lv.vector(pivot)) / std::abs(lv.vector(pivot));
    eig.eigenvectors.col(k) = lv.vector * phase;
    eig.eigenvectors(pivot, k) = Complex(eig.eigenvectors(pivot, k).real(), 0.0);
    eig.eigenvalues.push_back(lv.value);
  }
  return eig;
}

Complex trace_product(const DenseMatrix& a, const DenseMatrix& b) {
  // Tr(ab) = sum_ij a_ij b_ji
  return (a.array() * b.transpose().array()).sum();
}

namespace {

double checked_expectation(const DenseMatrix& rho, Complex value, Eigen::Index obs_dim) {
  require_same_dim(rho.rows(), obs_dim, "expectation");
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "expectation: density matrix trace " << tr.real() << " is not 1 within 1e-6";
    throw ValidationError(os.str());
  }
  if (std::abs(value.imag()) > 1e-8) {
    std::ostringstream os;
    os << "expectation: imaginary part " << value.imag() << " discarded";
    warn(os.str());
  }
  return value.real();
}

}  // namespace

double expectation(const DenseMatrix& rho, const OperatorMatrix& obs) {
  require_same_dim(rho.rows(), obs.dim(), "expectation");
  Complex tr = 0.0;
  const SparseMatrix& m = obs.sparse();
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) tr += rho(it.col(), it.row()) * it.value();
  }
  return checked_expectation(rho, tr, obs.dim());
}

double expectation(const DenseMatrix& rho, const DenseMatrix& obs) {
  require_same_dim(rho.rows(), obs.rows(), "expectation");
  return checked_expectation(rho, trace_product(rho, obs), obs.rows());
}

double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "commutator_norm");
  SparseMatrix c = a.sparse() * b.sparse() - b.sparse() * a.sparse();
  return c.norm();
}

DenseMatrix product_density_matrix(std::span<const Eigen::VectorXcd> local_states) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (const auto& v : local_states) {
    Eigen::VectorXcd next = Eigen::kroneckerProduct(psi, v);
    psi = std::move(next);
  }
  psi /= psi.norm();
  return psi * psi.adjoint();
}

namespace pauli {

DenseMatrix identity(int d) { return DenseMatrix::Identity(d, d); }

DenseMatrix x() {
  DenseMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

DenseMatrix y() {
  DenseMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

DenseMatrix z() {
  DenseMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

DenseMatrix plus() {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

DenseMatrix minus() {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

}  // namespace pauli
}  // namespace gaugenoise
