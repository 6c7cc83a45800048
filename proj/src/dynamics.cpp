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

#include "gaugenoise/dynamics.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "gaugenoise/diagnostics.hpp"

namespace gaugenoise {

namespace odeint = boost::numeric::odeint;

void IntegratorConfig::validate(Eigen::Index dim) const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw ValidationError("integrator: tolerances must be positive");
  if (!(max_step >= 0.0)) throw ValidationError("integrator: max_step must be >= 0");
  if (method == IntegratorMethod::DenseExponential && dim > kDenseExponentialMaxDim) {
    std::ostringstream os;
    os << "integrator: dense-exponential method needs dim <= " << kDenseExponentialMaxDim << ", got " << dim;
    throw ValidationError(os.str());
  }
}

std::vector<double> log_time_grid(double t_max, int samples_per_decade, double t_min) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("time grid: t_max must be positive");
  if (samples_per_decade < 1) throw ValidationError("time grid: samples_per_decade must be >= 1");
  if (!(t_min > 0.0)) throw ValidationError("time grid: t_min must be positive");
  std::vector<double> out{0.0};
  for (int k = 0;; ++k) {
    const double t = t_min * std::pow(10.0, static_cast<double>(k) / samples_per_decade);
    if (t >= t_max * (1.0 - 1e-12)) break;
    out.push_back(t);
  }
  out.push_back(t_max);
  return out;
}

ObservableSet make_observables(const ModelSystem& model, const HermitianEigensystem& eig,
                               bool sample_min_eigenvalue) {
  ObservableSet obs;
  obs.violation = to_eigenbasis(violation_operator(model), eig);
  if (model.kind() == ModelKind::U1QuantumLink) obs.condensate = to_eigenbasis(condensate_operator(model), eig);
  obs.sample_min_eigenvalue = sample_min_eigenvalue;
  return obs;
}

namespace {

void check_times(const std::vector<double>& times) {
  if (times.empty()) throw ValidationError("time grid is empty");
  if (times.front() != 0.0) throw ValidationError("time grid must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ValidationError("time grid must be strictly increasing");
  }
}

void check_state(const DenseMatrix& rho0, Eigen::Index dim) {
  if (rho0.rows() != dim || rho0.cols() != dim) throw DimensionError("initial state dimension mismatch");
  if (std::abs(rho0.trace() - 1.0) > 1e-6) throw ValidationError("initial state must have unit trace");
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw ValidationError("initial state must be Hermitian");
}

// rho_ab = e^{-i w_ab t} rho~_ab; sign = -1 undoes it.
void rotate(const HermitianEigensystem& eig, double t, const DenseMatrix& in, DenseMatrix& out, double sign) {
  const Eigen::Index n = eig.dim();
  Eigen::VectorXcd ph(n);
  for (Eigen::Index a = 0; a < n; ++a) ph(a) = std::polar(1.0, -sign * eig.eigenvalues[static_cast<std::size_t>(a)] * t);
  out.resize(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) out(a, b) = ph(a) * std::conj(ph(b)) * in(a, b);
  }
}

void record(Trajectory& tr, double t, const DenseMatrix& rho, const ObservableSet& obs) {
  tr.times.push_back(t);
  tr.violation.push_back(trace_product(rho, obs.violation).real());
  if (obs.condensate) tr.condensate.push_back(trace_product(rho, *obs.condensate).real());
  tr.trace_error.push_back(std::abs(rho.trace() - 1.0));
  if (obs.sample_min_eigenvalue) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho, Eigen::EigenvaluesOnly);
    tr.min_eigenvalue.push_back(es.eigenvalues()(0));
  }
}

void check_trace(double t, const DenseMatrix& rho) {
  const double drift = std::abs(rho.trace() - 1.0);
  if (drift > 1e-4) {
    std::ostringstream os;
    os << "integration aborted: trace drift " << drift << " at t = " << t;
    throw Error(os.str());
  }
}

using State = std::vector<Complex>;

Trajectory evolve_runge_kutta(const DenseMatrix& rho0, const HermitianEigensystem& eig,
                              const DissipatorFn& dissipator, const std::vector<double>& times,
                              const ObservableSet& obs, const IntegratorConfig& config) {
  const Eigen::Index n = eig.dim();
  const auto n2 = static_cast<std::size_t>(n * n);
  Trajectory tr;
  State x(rho0.data(), rho0.data() + n2);
  DenseMatrix rho_tilde(n, n), rho(n, n), drho(n, n);
  auto rhs = [&](const State& in, State& out, double t) {
    rotate(eig, t, Eigen::Map<const DenseMatrix>(in.data(), n, n), rho, 1.0);
    dissipator(rho, drho);
    rotate(eig, t, drho, rho_tilde, -1.0);
    out.assign(rho_tilde.data(), rho_tilde.data() + n2);
  };
  using Stepper = odeint::runge_kutta_dopri5<State>;
  auto stepper = config.max_step > 0.0 ? odeint::make_controlled(config.atol, config.rtol, config.max_step, Stepper())
                                       : odeint::make_controlled(config.atol, config.rtol, Stepper());
  record(tr, 0.0, rho0, obs);
  double t = 0.0;
  double dt = std::min(1e-3, times.size() > 1 ? times[1] : 1e-3);
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double target = times[k];
    while (t < target) {
      double h = std::min(dt, target - t);
      const bool clipped = h < dt;
      if (h < 1e-14 * std::max(1.0, t)) {
        std::ostringstream os;
        os << "integration aborted: step size underflow at t = " << t;
        throw Error(os.str());
      }
      if (stepper.try_step(rhs, x, t, h) == odeint::success) {
        ++tr.steps;
        if (target - t < 1e-12 * std::max(1.0, target)) t = target;
        if (!clipped) dt = h;
      } else {
        dt = h;
      }
    }
    Eigen::Map<DenseMatrix> xt(x.data(), n, n);
    const DenseMatrix herm = 0.5 * (xt + xt.adjoint());
    tr.max_symmetrization = std::max(tr.max_symmetrization, (xt - herm).norm());
    xt = herm;
    stepper.reset();
    rotate(eig, target, xt, rho, 1.0);
    check_trace(target, rho);
    record(tr, target, rho, obs);
  }
  if (tr.max_symmetrization > 1e-8) {
    std::ostringstream os;
    os << "hermiticity correction up to " << tr.max_symmetrization << " applied at sample points";
    warn(os.str());
  }
  return tr;
}

Trajectory evolve_dense_exponential(const DenseMatrix& rho0, const HermitianEigensystem& eig,
                                    const DissipatorFn& dissipator, const std::vector<double>& times,
                                    const ObservableSet& obs) {
  const Eigen::Index n = eig.dim();
  const DenseMatrix gen = superoperator_matrix(
      [&](const DenseMatrix& r) {
        DenseMatrix out;
        dissipator(r, out);
        for (Eigen::Index b = 0; b < n; ++b) {
          for (Eigen::Index a = 0; a < n; ++a) out(a, b) += Complex(0.0, -eig.bohr(a, b)) * r(a, b);
        }
        return out;
      },
      n);
  Trajectory tr;
  record(tr, 0.0, rho0, obs);
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), n * n);
  for (std::size_t k = 1; k < times.size(); ++k) {
    const DenseMatrix step = (gen * (times[k] - times[k - 1])).exp();
    v = step * v;
    DenseMatrix rho = Eigen::Map<const DenseMatrix>(v.data(), n, n);
    const DenseMatrix herm = 0.5 * (rho + rho.adjoint());
    tr.max_symmetrization = std::max(tr.max_symmetrization, (rho - herm).norm());
    v = Eigen::Map<const Eigen::VectorXcd>(herm.data(), n * n);
    check_trace(times[k], herm);
    record(tr, times[k], herm, obs);
    ++tr.steps;
  }
  return tr;
}

}  // namespace

Trajectory evolve_master(const DenseMatrix& rho0, const HermitianEigensystem& eig, const DissipatorFn& dissipator,
                         const std::vector<double>& times, const ObservableSet& obs, const IntegratorConfig& config) {
  config.validate(eig.dim());
  check_times(times);
  check_state(rho0, eig.dim());
  if (config.method == IntegratorMethod::DenseExponential) {
    return evolve_dense_exponential(rho0, eig, dissipator, times, obs);
  }
  return evolve_runge_kutta(rho0, eig, dissipator, times, obs, config);
}

Trajectory evolve_redfield(const DenseMatrix& rho0, const RedfieldTensor& tensor, const std::vector<double>& times,
                           const ObservableSet& obs, const IntegratorConfig& config) {
  return evolve_master(
      rho0, tensor.eigensystem(), [&tensor](const DenseMatrix& r, DenseMatrix& out) { tensor.apply_dissipator(r, out); },
      times, obs, config);
}

Trajectory evolve_lindblad(const DenseMatrix& rho0, const LindbladDissipator& d, const std::vector<double>& times,
                           const ObservableSet& obs, const IntegratorConfig& config) {
  return evolve_master(
      rho0, d.eigensystem(), [&d](const DenseMatrix& r, DenseMatrix& out) { d.apply(r, out); }, times, obs, config);
}

Trajectory evolve_unitary(const DenseMatrix& rho0, const HermitianEigensystem& eig, const std::vector<double>& times,
                          const ObservableSet& obs) {
  check_times(times);
  check_state(rho0, eig.dim());
  Trajectory tr;
  DenseMatrix rho;
  for (double t : times) {
    rotate(eig, t, rho0, rho, 1.0);
    record(tr, t, rho, obs);
  }
  return tr;
}

std::vector<double> deviation_from_ideal(const Trajectory& noisy, const Trajectory& ideal,
                                         const std::string& observable) {
  if (noisy.times != ideal.times) throw ValidationError("deviation_from_ideal: time grids differ");
  const std::vector<double>* a = nullptr;
  const std::vector<double>* b = nullptr;
  if (observable == "epsilon") {
    a = &noisy.violation;
    b = &ideal.violation;
  } else if (observable == "condensate") {
    a = &noisy.condensate;
    b = &ideal.condensate;
  } else {
    throw ValidationError("deviation_from_ideal: unknown observable '" + observable + "'");
  }
  if (a->size() != noisy.times.size() || b->size() != ideal.times.size()) {
    throw ValidationError("deviation_from_ideal: observable '" + observable + "' not recorded");
  }
  std::vector<double> out(a->size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs((*a)[i] - (*b)[i]);
  return out;
}

std::string to_string(IntegratorMethod method) {
  return method == IntegratorMethod::RungeKutta ? "rk45" : "dense-exponential";
}

IntegratorMethod parse_integrator_method(const std::string& name) {
  if (name == "rk45") return IntegratorMethod::RungeKutta;
  if (name == "dense-exponential") return IntegratorMethod::DenseExponential;
  throw ValidationError("unknown integrator method '" + name + "'");
}

}  // namespace gaugenoise
