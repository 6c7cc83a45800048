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


#include <cmath>

#include <doctest.h>

#include "gaugenoise/dynamics.hpp"

using namespace gaugenoise;

namespace {

struct Setup {
  ModelSystem model;
  HermitianEigensystem eig;
  DenseMatrix rho0;
  ObservableSet obs;
};

Setup small_u1(double V) {
  LatticeSpec lat;
  lat.L = 2;
  Setup s;
  s.model = with_protection(build_u1_qlm(lat, 1.0, 0.5), {V, {Rational(1), Rational(-1, 3)}, GeneratorKind::Full});
  s.eig = hermitian_eig(s.model.system_hamiltonian());
  s.rho0 = to_eigenbasis(build_initial_state(InitialStateKind::U1Vacuum, s.model).rho, s.eig);
  s.obs = make_observables(s.model, s.eig, true);
  return s;
}

}  // namespace

TEST_CASE("log time grid") {
  const auto g = log_time_grid(1.0, 2, 0.01);
  REQUIRE(g.size() == 6);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(0.01));
  CHECK(g[2] == doctest::Approx(0.0316227766));
  CHECK(g[5] == 1.0);
  CHECK_THROWS_AS(log_time_grid(0.0), ValidationError);
  CHECK_THROWS_AS(log_time_grid(1.0, 0), ValidationError);
}

TEST_CASE("qubit relaxation and dephasing") {
  const double delta = 0.8, s = 0.125;
  const auto eig = hermitian_eig(local_operator(0.5 * delta * pauli::z(), true));
  CouplingSet cs;
  cs.operators.push_back({"x", local_operator(pauli::x(), true)});
  const auto t = build_redfield_tensor(eig, cs, {0.1, 1.0});
  const std::vector<double> times{0.0, 0.5, 1.0, 4.0, 10.0};

  ObservableSet pop;
  pop.violation = DenseMatrix::Zero(2, 2);
  pop.violation(1, 1) = 1.0;
  DenseMatrix ground = DenseMatrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  const auto tr = evolve_redfield(ground, t, times, pop);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(tr.violation[k] == doctest::Approx(0.5 * (1.0 - std::exp(-2.0 * s * times[k]))).epsilon(1e-7));
  }

  ObservableSet sx;
  sx.violation = pauli::x();
  const DenseMatrix plus = DenseMatrix::Constant(2, 2, 0.5);
  const auto tc = evolve_redfield(plus, t, times, sx);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(tc.violation[k] == doctest::Approx(std::cos(delta * times[k]) * std::exp(-s * times[k])).epsilon(1e-7));
  }
  CHECK(tc.max_symmetrization < 1e-10);
}

TEST_CASE("no noise, no violation") {
  auto s = small_u1(1.0);
  const auto t = build_redfield_tensor(s.model, build_default_couplings(s.model), {0.0, 1.0});
  const auto grid = log_time_grid(20.0, 10);
  const auto tr = evolve_redfield(s.rho0, t, grid, s.obs);
  for (double e : tr.violation) CHECK(std::abs(e) < 1e-12);
  // Condensate follows the unitary evolution.
  const auto u = evolve_unitary(s.rho0, s.eig, grid, s.obs);
  const auto dev = deviation_from_ideal(tr, u, "condensate");
  for (double d : dev) CHECK(d < 1e-7);
  CHECK_THROWS_AS(deviation_from_ideal(tr, u, "energy"), ValidationError);
}

TEST_CASE("noisy evolution stays physical") {
  auto s = small_u1(1.0);
  const auto t = build_redfield_tensor(s.model, build_default_couplings(s.model), {0.1, 1.0}, kDegeneracyTolerance);
  const auto tr = evolve_redfield(s.rho0, t, log_time_grid(30.0, 10), s.obs);
  for (double e : tr.trace_error) CHECK(e < 1e-8);
  for (double m : tr.min_eigenvalue) CHECK(m > -1e-9);
  CHECK(tr.violation.back() > 0.01);
  CHECK(tr.steps > 0);
}

TEST_CASE("dense exponential agrees with runge kutta") {
  auto s = small_u1(1.0);
  const auto t = build_redfield_tensor(s.model, build_default_couplings(s.model), {0.1, 1.7});
  const auto grid = log_time_grid(10.0, 5);
  IntegratorConfig rk;
  rk.rtol = 1e-10;
  rk.atol = 1e-12;
  IntegratorConfig ex;
  ex.method = IntegratorMethod::DenseExponential;
  const auto a = evolve_redfield(s.rho0, t, grid, s.obs, rk);
  const auto b = evolve_redfield(s.rho0, t, grid, s.obs, ex);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(std::abs(a.violation[k] - b.violation[k]) < 1e-8);
}

TEST_CASE("input checks") {
  auto s = small_u1(1.0);
  const auto t = build_redfield_tensor(s.model, build_default_couplings(s.model), {0.1, 1.0});
  CHECK_THROWS_AS(evolve_redfield(s.rho0, t, {0.1, 1.0}, s.obs), ValidationError);
  CHECK_THROWS_AS(evolve_redfield(s.rho0, t, {0.0, 1.0, 1.0}, s.obs), ValidationError);
  CHECK_THROWS_AS(evolve_redfield(s.rho0, t, {}, s.obs), ValidationError);
  CHECK_THROWS_AS(evolve_redfield(2.0 * s.rho0, t, {0.0, 1.0}, s.obs), ValidationError);
  CHECK_THROWS_AS(evolve_redfield(DenseMatrix::Identity(3, 3), t, {0.0, 1.0}, s.obs), DimensionError);
  IntegratorConfig bad;
  bad.rtol = 0.0;
  CHECK_THROWS_AS(evolve_redfield(s.rho0, t, {0.0, 1.0}, s.obs, bad), ValidationError);
  IntegratorConfig big;
  big.method = IntegratorMethod::DenseExponential;
  CHECK_THROWS_AS(big.validate(256), ValidationError);
  CHECK(parse_integrator_method("dense-exponential") == IntegratorMethod::DenseExponential);
}
