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

#include <string>
#include <vector>

#include "gaugenoise/models.hpp"
#include "gaugenoise/operator.hpp"

namespace gaugenoise {

/// How the divergent S(0) of a 1/f^beta spectrum is regularized.
enum class ZeroFrequencyMode {
  Zero,    // S(0) = 0: zero-frequency channels are dropped
  Cutoff,  // S(w) = gamma / max(|w|, omega_min)^beta
};

struct NoiseSpec {
  double gamma = 0.0;
  double beta = 1.0;
  ZeroFrequencyMode zero_freq_mode = ZeroFrequencyMode::Zero;
  double omega_min = 0.01;

  /// gamma >= 0, 0 < beta < 2, omega_min > 0.
  void validate() const;
};

/// Symmetric noise power spectrum S(w) = gamma / |w|^beta with the configured
/// zero-frequency regularization. Even in w.
double spectrum_eval(const NoiseSpec& spec, double omega);

/// One bath channel: a Hermitian system operator with its own uncorrelated bath.
struct Coupling {
  std::string label;
  OperatorMatrix op;
};

struct CouplingSet {
  std::vector<Coupling> operators;

  /// Every operator Hermitian to 1e-12, labels unique, dimensions equal.
  void validate() const;
  std::size_t size() const { return operators.size(); }
  bool empty() const { return operators.empty(); }
};

/// sigma^x on each site ("m<j>") and s^x = sigma^x/2 on each link ("g<j>-<j+1>").
CouplingSet build_u1_couplings(const LatticeSpec& lattice);
/// a + a^dag on each site and tau^z on each link.
CouplingSet build_z2_couplings(const LatticeSpec& lattice);
/// Picks the coupling preset matching the model kind.
CouplingSet build_default_couplings(const ModelSystem& model);

std::string to_string(ZeroFrequencyMode mode);
ZeroFrequencyMode parse_zero_frequency_mode(const std::string& name);

}  // namespace gaugenoise
