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

#include <functional>
#include <span>
#include <vector>

#include "gaugenoise/redfield.hpp"

namespace gaugenoise {

/// One Lindblad channel A_alpha(w): the part of coupling alpha that moves
/// energy by w (within the binning tolerance).
struct LindbladChannel {
  std::size_t coupling = 0;
  double omega = 0.0;  // mean Bohr frequency of the bin
  double rate = 0.0;   // S(omega)
  std::vector<Eigen::Triplet<Complex>> entries;  // eigenbasis (row, col, value)
};

/// D[rho] = sum_{alpha, w} S(w) [A(w) rho A(w)^dag - 1/2 {A(w)^dag A(w), rho}]
/// in the eigenbasis of H_S.
class LindbladDissipator {
 public:
  LindbladDissipator(HermitianEigensystem eig, std::vector<LindbladChannel> channels, double bin_tolerance);

  const HermitianEigensystem& eigensystem() const { return eig_; }
  Eigen::Index dim() const { return eig_.dim(); }
  std::span<const LindbladChannel> channels() const { return channels_; }
  double bin_tolerance() const { return tol_; }

  /// out = D[rho]; overwritten.
  void apply(const DenseMatrix& rho, DenseMatrix& out) const;
  DenseMatrix apply(const DenseMatrix& rho) const;

 private:
  HermitianEigensystem eig_;
  std::vector<LindbladChannel> channels_;
  double tol_;
  SparseMatrix anticommutator_;       // sum S A^dag A
  std::vector<TensorEntry> sandwich_;  // (a, b, c, d): out_ab += v rho_cd
};

/// Groups Bohr frequencies of each coupling into bins (single linkage at
/// `bin_tolerance`) and evaluates the spectrum once per bin.
LindbladDissipator build_lindblad_dissipator(const HermitianEigensystem& eig, const CouplingSet& couplings,
                                             const NoiseSpec& noise, double bin_tolerance = kDegeneracyTolerance);
LindbladDissipator build_lindblad_dissipator(const ModelSystem& model, const CouplingSet& couplings,
                                             const NoiseSpec& noise, double bin_tolerance = kDegeneracyTolerance);

/// -i w_ab rho_ab + D[rho]_ab
DenseMatrix apply_lindblad_generator(const LindbladDissipator& d, const DenseMatrix& rho);

/// Matrix of a linear map on dim x dim matrices, acting on column-major vec(rho).
DenseMatrix superoperator_matrix(const std::function<DenseMatrix(const DenseMatrix&)>& map, Eigen::Index dim);

/// Operator norm of a superoperator matrix with respect to the Frobenius
/// norm on density matrices: its largest singular value.
double induced_frobenius_norm(const DenseMatrix& superop);

}  // namespace gaugenoise
