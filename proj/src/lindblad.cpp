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

#include "gaugenoise/lindblad.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include <Eigen/SVD>

namespace gaugenoise {

LindbladDissipator::LindbladDissipator(HermitianEigensystem eig, std::vector<LindbladChannel> channels,
                                       double bin_tolerance)
    : eig_(std::move(eig)), channels_(std::move(channels)), tol_(bin_tolerance) {
  const Eigen::Index n = eig_.dim();
  anticommutator_.resize(n, n);
  std::map<std::tuple<int, int, int, int>, Complex> acc;
  for (const auto& ch : channels_) {
    if (ch.rate == 0.0) continue;
    SparseMatrix a(n, n);
    a.setFromTriplets(ch.entries.begin(), ch.entries.end());
    anticommutator_ += ch.rate * SparseMatrix(a.adjoint() * a);
    for (const auto& p : ch.entries) {
      for (const auto& q : ch.entries) {
        acc[{static_cast<int>(p.row()), static_cast<int>(q.row()), static_cast<int>(p.col()),
             static_cast<int>(q.col())}] += ch.rate * p.value() * std::conj(q.value());
      }
    }
  }
  sandwich_.reserve(acc.size());
  for (const auto& [k, v] : acc) {
    if (v != Complex(0.0, 0.0)) sandwich_.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), v});
  }
}

void LindbladDissipator::apply(const DenseMatrix& rho, DenseMatrix& out) const {
  out.noalias() = anticommutator_ * rho;
  out.noalias() += rho * anticommutator_;
  out *= -0.5;
  for (const auto& s : sandwich_) out(s.a, s.b) += s.value * rho(s.c, s.d);
}

DenseMatrix LindbladDissipator::apply(const DenseMatrix& rho) const {
  DenseMatrix out;
  apply(rho, out);
  return out;
}

LindbladDissipator build_lindblad_dissipator(const HermitianEigensystem& eig, const CouplingSet& couplings,
                                             const NoiseSpec& noise, double bin_tolerance) {
  noise.validate();
  if (!(bin_tolerance >= 0.0)) throw ValidationError("bin tolerance must be >= 0");
  std::vector<LindbladChannel> channels;
  if (couplings.empty()) return LindbladDissipator(eig, std::move(channels), bin_tolerance);
  couplings.validate();
  const auto ae = eigenbasis_couplings(couplings, eig);
  for (std::size_t alpha = 0; alpha < ae.size(); ++alpha) {
    struct Item {
      double omega;
      Eigen::Triplet<Complex> t;
    };
    std::vector<Item> items;
    for (Eigen::Index col = 0; col < ae[alpha].outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(ae[alpha], col); it; ++it) {
        items.push_back({eig.bohr(it.row(), it.col()), {static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()}});
      }
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.omega < y.omega; });
    for (std::size_t i = 0; i < items.size();) {
      std::size_t j = i + 1;
      while (j < items.size() && items[j].omega - items[j - 1].omega <= bin_tolerance) ++j;
      LindbladChannel ch;
      ch.coupling = alpha;
      double sum = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        sum += items[k].omega;
        ch.entries.push_back(items[k].t);
      }
      ch.omega = sum / static_cast<double>(j - i);
      ch.rate = bath_rate(noise, ch.omega);
      channels.push_back(std::move(ch));
      i = j;
    }
  }
  return LindbladDissipator(eig, std::move(channels), bin_tolerance);
}

LindbladDissipator build_lindblad_dissipator(const ModelSystem& model, const CouplingSet& couplings,
                                             const NoiseSpec& noise, double bin_tolerance) {
  return build_lindblad_dissipator(hermitian_eig(model.system_hamiltonian()), couplings, noise, bin_tolerance);
}

DenseMatrix apply_lindblad_generator(const LindbladDissipator& d, const DenseMatrix& rho) {
  if (rho.rows() != d.dim() || rho.cols() != d.dim()) throw DimensionError("lindblad: state dimension mismatch");
  DenseMatrix out = d.apply(rho);
  const auto& eig = d.eigensystem();
  for (Eigen::Index b = 0; b < rho.cols(); ++b) {
    for (Eigen::Index a = 0; a < rho.rows(); ++a) out(a, b) += Complex(0.0, -eig.bohr(a, b)) * rho(a, b);
  }
  return out;
}

DenseMatrix superoperator_matrix(const std::function<DenseMatrix(const DenseMatrix&)>& map, Eigen::Index dim) {
  const Eigen::Index n2 = dim * dim;
  DenseMatrix out(n2, n2);
  DenseMatrix basis = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < n2; ++k) {
    basis(k % dim, k / dim) = 1.0;
    const DenseMatrix img = map(basis);
    out.col(k) = Eigen::Map<const Eigen::VectorXcd>(img.data(), n2);
    basis(k % dim, k / dim) = 0.0;
  }
  return out;
}

double induced_frobenius_norm(const DenseMatrix& superop) {
  if (superop.size() == 0) return 0.0;
  Eigen::BDCSVD<DenseMatrix> svd(superop);
  return svd.singularValues()(0);
}

}  // namespace gaugenoise
