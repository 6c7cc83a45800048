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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gaugenoise/models.hpp"
#include "gaugenoise/noise.hpp"
#include "gaugenoise/operator.hpp"

namespace gaugenoise {

/// Bohr frequencies at or below this magnitude (units of J) count as exactly
/// zero, and Bohr frequencies closer than this are the same bin.
inline constexpr double kDegeneracyTolerance = 1e-9;

inline constexpr double kDefaultSecularCutoff = 0.1;
inline constexpr std::size_t kDefaultMaxTensorEntries = 25'000'000;

/// Noise spectrum evaluated at a Bohr frequency; |omega| <= kDegeneracyTolerance
/// is snapped to zero first so numerically split degeneracies do not pick up
/// the 1/|omega|^beta divergence.
double bath_rate(const NoiseSpec& noise, double omega);

DenseMatrix to_eigenbasis(const OperatorMatrix& op, const HermitianEigensystem& eig);
DenseMatrix to_eigenbasis(const DenseMatrix& op, const HermitianEigensystem& eig);
DenseMatrix from_eigenbasis(const DenseMatrix& op, const HermitianEigensystem& eig);

/// Coupling operators in the eigenbasis, sparse, with numerical zeros removed.
std::vector<SparseMatrix> eigenbasis_couplings(const CouplingSet& couplings, const HermitianEigensystem& eig);

/// R_abcd entry of the materialized tensor.
struct TensorEntry {
  int a, b, c, d;
  Complex value;
};

/// Secular Bloch-Redfield relaxation tensor in the system eigenbasis.
///
/// R_abcd = -1/2 sum_alpha [ delta_bd K_ac + delta_ac K^dag_db
///                            - A_ac A_db (S(w_ca) + S(w_db)) ]
/// with K_ac = sum_n A_an A_nc S(w_cn), keeping only quadruples with
/// |w_ab - w_cd| <= secular_cutoff. The two delta terms are stored once as
/// the masked matrix K (a "decay" entry (a, c) stands for every b); the rest
/// are explicit quadruples ("jump" entries). `entries()` expands both.
class RedfieldTensor {
 public:
  struct DecayEntry {
    std::int32_t row, col;
    double omega;  // w_row,col
    Complex value;
  };
  struct JumpEntry {
    std::int32_t a, b, c, d;
    double delta_omega;  // w_ab - w_cd
    Complex value;
  };

  RedfieldTensor(HermitianEigensystem eig, std::vector<DecayEntry> decay, std::vector<JumpEntry> jumps,
                 double secular_cutoff, std::size_t coupling_count);

  const HermitianEigensystem& eigensystem() const { return eig_; }
  Eigen::Index dim() const { return eig_.dim(); }
  double secular_cutoff() const { return cutoff_; }
  std::size_t coupling_count() const { return coupling_count_; }
  std::span<const DecayEntry> decay_entries() const { return decay_; }
  std::span<const JumpEntry> jump_entries() const { return jumps_; }
  bool empty() const { return decay_.empty() && jumps_.empty(); }

  /// Every nonzero R_abcd, sorted by (a, b, c, d). Size grows like dim^3;
  /// meant for inspection of small systems.
  std::vector<TensorEntry> entries() const;

  /// Interaction-picture derivative. With rho~_ab = e^{i w_ab t} rho_ab,
  ///   d rho~_ab / dt = sum_cd R_abcd e^{i (w_ab - w_cd) t} rho~_cd.
  /// `out` is overwritten.
  void apply_interaction(double t, const DenseMatrix& rho_tilde, DenseMatrix& out) const;

  /// sum_cd R_abcd rho_cd, without the coherent -i w_ab rho_ab part.
  void apply_dissipator(const DenseMatrix& rho, DenseMatrix& out) const;

 private:
  HermitianEigensystem eig_;
  std::vector<DecayEntry> decay_;
  std::vector<JumpEntry> jumps_;
  double cutoff_;
  std::size_t coupling_count_;
  SparseMatrix decay_matrix_;
  SparseMatrix decay_adjoint_;
};

/// Assembles the secular tensor for H_S = eig's source operator.
RedfieldTensor build_redfield_tensor(const HermitianEigensystem& eig, const CouplingSet& couplings,
                                     const NoiseSpec& noise, double secular_cutoff = kDefaultSecularCutoff,
                                     std::size_t max_entries = kDefaultMaxTensorEntries);

/// Diagonalizes model.system_hamiltonian() and assembles the tensor.
RedfieldTensor build_redfield_tensor(const ModelSystem& model, const CouplingSet& couplings,
                                     const NoiseSpec& noise, double secular_cutoff = kDefaultSecularCutoff,
                                     std::size_t max_entries = kDefaultMaxTensorEntries);

/// Schroedinger-picture master-equation generator in the eigenbasis:
///   d rho_ab / dt = -i w_ab rho_ab + sum_cd R_abcd rho_cd.
DenseMatrix apply_superoperator(const RedfieldTensor& tensor, const DenseMatrix& rho);

struct RatePair {
  int initial, final;
  double rate;   // Gamma_if
  double omega;  // w_if
  double ratio;  // Gamma_if / |w_if|
};

/// Golden-rule validity of the weak-coupling treatment.
struct ValidityReport {
  std::vector<RatePair> pairs;  // nonzero rates, sorted by descending ratio
  double max_ratio = 0.0;
  double threshold = 0.1;
  bool pass = true;
  static constexpr const char* kConvention =
      "Gamma_if = sum_alpha |<i|A_alpha|f>|^2 S(w_if), the population-transfer rate of the secular tensor";
};

ValidityReport golden_rule_rates(const HermitianEigensystem& eig, const CouplingSet& couplings,
                                 const NoiseSpec& noise, double threshold = 0.1);

}  // namespace gaugenoise
