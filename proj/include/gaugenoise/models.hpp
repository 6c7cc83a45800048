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

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gaugenoise/operator.hpp"
#include "gaugenoise/rational.hpp"

namespace gaugenoise {

// Lattice layout
// --------------
// Periodic chain of L matter sites. Tensor factors are ordered
//   site 1, link (1,2), site 2, link (2,3), ..., site L, link (L,1)
// with the first factor most significant. Internally sites are 0-based:
// site j lives on factor 2j and link (j, j+1) on factor 2j+1.
//
// U(1) matter and links are spin-1/2 (index 0 = up). Z2 matter is a boson
// truncated at n_max (index = occupation); Z2 links are written in the
// tau^x eigenbasis (index 0 = tau^x = +1), so Gauss's law is diagonal.

enum class ModelKind { U1QuantumLink, Z2Gauge };
enum class GeneratorKind { Full, Pseudo };

struct LatticeSpec {
  int L = 4;
  int matter_dim = 2;
  int link_dim = 2;
  std::size_t max_dim = kDefaultMaxDim;

  /// Throws ValidationError for odd or too small L, CapacityError above max_dim.
  void validate() const;
  std::vector<int> local_dims() const;
  std::size_t dim() const;
  std::size_t site_factor(int j) const { return static_cast<std::size_t>(2 * wrap(j)); }
  std::size_t link_factor(int j) const { return static_cast<std::size_t>(2 * wrap(j) + 1); }
  int wrap(int j) const { return ((j % L) + L) % L; }
};

/// Paper-style sign (-1)^j for the 0-based site index j (site numbering starts at 1).
inline int staggered_sign(int j) { return (j % 2 == 0) ? -1 : 1; }

struct U1Params {
  double J = 1.0;
  double mu = 0.0;
};

struct Z2Params {
  double J = 1.0;
  double h = 0.0;
  int n_max = 1;
};

struct ProtectionSpec {
  double V = 0.0;
  std::vector<Rational> sequence;
  GeneratorKind generator_kind = GeneratorKind::Full;
};

/// An assembled gauge theory. Immutable once built; share freely.
struct ModelSystem {
  LatticeSpec lattice;
  std::variant<U1Params, Z2Params> params;
  OperatorMatrix hamiltonian;                  // H_0, no protection
  std::vector<OperatorMatrix> generators;      // G_j
  std::vector<OperatorMatrix> pseudogenerators;  // W_j (Z2 only)
  std::vector<int> target_sector;
  /// Eigenvalues of each G_j (and W_j) on its local factors, ascending.
  std::vector<std::vector<int>> generator_spectra;
  std::vector<std::vector<int>> pseudogenerator_spectra;
  ProtectionSpec protection;
  OperatorMatrix protection_term;              // V sum_j c_j G_j (or W_j)

  ModelKind kind() const {
    return std::holds_alternative<U1Params>(params) ? ModelKind::U1QuantumLink : ModelKind::Z2Gauge;
  }
  /// H_S = H_0 + protection term.
  OperatorMatrix system_hamiltonian() const { return hamiltonian + protection_term; }
};

ModelSystem build_u1_qlm(const LatticeSpec& lattice, double J, double mu);
std::vector<OperatorMatrix> build_u1_generators(const LatticeSpec& lattice);

ModelSystem build_z2_lgt(const LatticeSpec& lattice, double J, double h, int n_max = 1);
std::vector<OperatorMatrix> build_z2_generators(const LatticeSpec& lattice);
/// W_j = tau^x_{j-1,j} tau^x_{j,j+1} + 2 g_j^tar n_j; targets must be +-1.
std::vector<OperatorMatrix> build_z2_pseudogenerators(const LatticeSpec& lattice,
                                                      const std::vector<int>& target);

/// V sum_j c_j O_j
OperatorMatrix build_protection_term(const std::vector<OperatorMatrix>& ops, const ProtectionSpec& spec);

/// Returns a copy of `model` with `spec` installed as its protection term.
ModelSystem with_protection(const ModelSystem& model, const ProtectionSpec& spec);

struct ComplianceResult {
  bool compliant = true;
  std::optional<std::vector<int>> witness;
  std::size_t tuples_checked = 0;
};

/// Exhaustively checks sum_j c_j (g_j - g_j^tar) = 0  =>  g = g^tar over
/// every tuple in the product of the per-site spectra, in exact arithmetic.
/// The first violating tuple in lexicographic order is returned as witness.
ComplianceResult check_sequence_compliance(const std::vector<Rational>& sequence,
                                           const std::vector<std::vector<int>>& spectra,
                                           const std::vector<int>& target,
                                           std::size_t max_tuples = 10'000'000);

enum class InitialStateKind { U1Vacuum, U1ChargeProliferated, Z2ChargeDensityWave };

struct InitialState {
  InitialStateKind kind;
  /// One normalized vector per tensor factor.
  std::vector<Eigen::VectorXcd> factors;
  DenseMatrix rho;
};

InitialState build_initial_state(InitialStateKind kind, const ModelSystem& model);

/// (1/L) sum_j (G_j - g_j^tar)^2
OperatorMatrix violation_operator(const ModelSystem& model);

/// 1/2 + (1/2L) sum_j sigma^z_j; U(1) models only.
OperatorMatrix condensate_operator(const ModelSystem& model);

std::string to_string(ModelKind kind);
std::string to_string(GeneratorKind kind);
std::string to_string(InitialStateKind kind);
InitialStateKind parse_initial_state_kind(const std::string& name);
GeneratorKind parse_generator_kind(const std::string& name);

}  // namespace gaugenoise
