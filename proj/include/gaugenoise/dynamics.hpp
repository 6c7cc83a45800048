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
#include <optional>
#include <string>
#include <vector>

#include "gaugenoise/lindblad.hpp"
#include "gaugenoise/models.hpp"
#include "gaugenoise/redfield.hpp"

namespace gaugenoise {

enum class IntegratorMethod {
  RungeKutta,        // adaptive Dormand-Prince 5(4)
  DenseExponential,  // exp(L dt) of the full superoperator; dim <= 64
};

inline constexpr Eigen::Index kDenseExponentialMaxDim = 64;

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::RungeKutta;
  double rtol = 1e-8;
  double atol = 1e-10;
  double max_step = 0.0;  // 0: unbounded

  void validate(Eigen::Index dim) const;
};

/// 0 followed by `samples_per_decade` log-spaced points per decade from
/// t_min up to t_max; t_max itself is always the last sample.
std::vector<double> log_time_grid(double t_max, int samples_per_decade = 200, double t_min = 1e-2);

/// Observables already expressed in the H_S eigenbasis.
struct ObservableSet {
  DenseMatrix violation;
  std::optional<DenseMatrix> condensate;
  bool sample_min_eigenvalue = false;
};

/// Violation (and, for U(1), condensate) operators rotated into `eig`.
ObservableSet make_observables(const ModelSystem& model, const HermitianEigensystem& eig,
                               bool sample_min_eigenvalue = false);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> violation;
  std::vector<double> condensate;      // empty for Z2
  std::vector<double> trace_error;
  std::vector<double> min_eigenvalue;  // empty unless sampled
  double max_symmetrization = 0.0;     // largest ||rho - (rho + rho^dag)/2||_F applied at a sample
  std::size_t steps = 0;               // accepted integrator steps
};

/// Generic dissipator in the eigenbasis: out = D[rho].
using DissipatorFn = std::function<void(const DenseMatrix&, DenseMatrix&)>;

/// Integrates d rho/dt = -i[H_S, rho] + D[rho] in the interaction picture of
/// H_S. rho0 is given in the eigenbasis. Aborts if |Tr rho - 1| exceeds 1e-4.
Trajectory evolve_master(const DenseMatrix& rho0, const HermitianEigensystem& eig, const DissipatorFn& dissipator,
                         const std::vector<double>& times, const ObservableSet& obs, const IntegratorConfig& config);

Trajectory evolve_redfield(const DenseMatrix& rho0, const RedfieldTensor& tensor, const std::vector<double>& times,
                           const ObservableSet& obs, const IntegratorConfig& config = {});

Trajectory evolve_lindblad(const DenseMatrix& rho0, const LindbladDissipator& d, const std::vector<double>& times,
                           const ObservableSet& obs, const IntegratorConfig& config = {});

/// rho(t) = e^{-iHt} rho0 e^{iHt}; rho0 in the eigenbasis of H.
Trajectory evolve_unitary(const DenseMatrix& rho0, const HermitianEigensystem& eig, const std::vector<double>& times,
                          const ObservableSet& obs);

/// |O_noisy(t) - O_ideal(t)| for observable "epsilon" or "condensate".
std::vector<double> deviation_from_ideal(const Trajectory& noisy, const Trajectory& ideal,
                                         const std::string& observable);

std::string to_string(IntegratorMethod method);
IntegratorMethod parse_integrator_method(const std::string& name);

}  // namespace gaugenoise
