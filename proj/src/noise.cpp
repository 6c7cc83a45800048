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

#include "gaugenoise/noise.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace gaugenoise {

void NoiseSpec::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ValidationError("noise: gamma must be finite and >= 0");
  if (!(beta > 0.0 && beta < 2.0)) throw ValidationError("noise: beta must lie in (0, 2)");
  if (zero_freq_mode == ZeroFrequencyMode::Cutoff && !(omega_min > 0.0)) {
    throw ValidationError("noise: omega_min must be > 0 in cutoff mode");
  }
}

double spectrum_eval(const NoiseSpec& spec, double omega) {
  double w = std::abs(omega);
  if (spec.zero_freq_mode == ZeroFrequencyMode::Cutoff) {
    w = std::max(w, spec.omega_min);
  } else if (w == 0.0) {
    return 0.0;
  }
  return spec.gamma / std::pow(w, spec.beta);
}

void CouplingSet::validate() const {
  std::set<std::string> labels;
  for (const auto& c : operators) {
    if (!labels.insert(c.label).second) throw ValidationError("couplings: duplicate label '" + c.label + "'");
    const double asym = c.op.max_asymmetry();
    if (asym > 1e-12) {
      std::ostringstream os;
      os << "couplings: operator '" << c.label << "' is not Hermitian (max asymmetry " << asym << ")";
      throw ValidationError(os.str());
    }
    if (c.op.dim() != operators.front().op.dim()) throw DimensionError("couplings: operators differ in dimension");
  }
}

namespace {

std::string link_label(const LatticeSpec& lat, int j) {
  return "g" + std::to_string(j + 1) + "-" + std::to_string(lat.wrap(j + 1) + 1);
}

}  // namespace

CouplingSet build_u1_couplings(const LatticeSpec& lattice) {
  lattice.validate();
  const auto dims = lattice.local_dims();
  CouplingSet set;
  for (int j = 0; j < lattice.L; ++j) {
    set.operators.push_back({"m" + std::to_string(j + 1),
                             embed_site_operator(local_operator(pauli::x(), true), lattice.site_factor(j), dims,
                                                 lattice.max_dim)});
  }
  for (int j = 0; j < lattice.L; ++j) {
    set.operators.push_back({link_label(lattice, j),
                             embed_site_operator(local_operator(0.5 * pauli::x(), true), lattice.link_factor(j),
                                                 dims, lattice.max_dim)});
  }
  return set;
}

CouplingSet build_z2_couplings(const LatticeSpec& lattice) {
  lattice.validate();
  const auto dims = lattice.local_dims();
  const int n_max = lattice.matter_dim - 1;
  DenseMatrix a = DenseMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const DenseMatrix field = a + a.adjoint();
  CouplingSet set;
  for (int j = 0; j < lattice.L; ++j) {
    set.operators.push_back({"m" + std::to_string(j + 1),
                             embed_site_operator(local_operator(field, true), lattice.site_factor(j), dims,
                                                 lattice.max_dim)});
  }
  // tau^z is off-diagonal in the tau^x eigenbasis used for Z2 links.
  for (int j = 0; j < lattice.L; ++j) {
    set.operators.push_back({link_label(lattice, j),
                             embed_site_operator(local_operator(pauli::x(), true), lattice.link_factor(j), dims,
                                                 lattice.max_dim)});
  }
  return set;
}

CouplingSet build_default_couplings(const ModelSystem& model) {
  return model.kind() == ModelKind::U1QuantumLink ? build_u1_couplings(model.lattice)
                                                  : build_z2_couplings(model.lattice);
}

std::string to_string(ZeroFrequencyMode mode) { return mode == ZeroFrequencyMode::Zero ? "zero" : "cutoff"; }

ZeroFrequencyMode parse_zero_frequency_mode(const std::string& name) {
  if (name == "zero") return ZeroFrequencyMode::Zero;
  if (name == "cutoff") return ZeroFrequencyMode::Cutoff;
  throw ValidationError("unknown zero_freq_mode '" + name + "'");
}

}  // namespace gaugenoise
