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

#include "gaugenoise/analysis.hpp"

using namespace gaugenoise;

namespace {

ModelSystem small_u1(double V) {
  LatticeSpec lat;
  lat.L = 2;
  return with_protection(build_u1_qlm(lat, 1.0, 0.5), {V, {Rational(1), Rational(-1, 3)}, GeneratorKind::Full});
}

Trajectory synthetic(double t_knee) {
  // Linear up to the knee, flat after it.
  Trajectory tr;
  for (double t : log_time_grid(100.0, 20)) {
    tr.times.push_back(t);
    tr.violation.push_back(t <= t_knee ? 0.01 * t : 0.01 * t_knee);
  }
  return tr;
}

}  // namespace

TEST_CASE("power law fit recovers exact exponents") {
  std::vector<double> xs{8, 16, 32, 64}, ys;
  for (double x : xs) ys.push_back(3.0 * std::pow(x, -1.7));
  const auto f = fit_power_law(xs, ys);
  CHECK(f.exponent == doctest::Approx(-1.7).epsilon(1e-12));
  CHECK(f.amplitude == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.n_points == 4);
  const auto w = fit_power_law(xs, ys, 10.0, 100.0);
  CHECK(w.n_points == 3);
  CHECK(w.window_min == doctest::Approx(16.0));
}

TEST_CASE("power law fit with scatter") {
  // Alternating +-0.1 residuals in log y.
  std::vector<double> xs{1, 2, 4, 8}, ys;
  for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(std::exp(-std::log(xs[i]) + (i % 2 ? 0.1 : -0.1)));
  const auto f = fit_power_law(xs, ys);
  CHECK(f.exponent == doctest::Approx(-1.0 + 0.04 / std::log(2.0)).epsilon(1e-12));
  CHECK(f.r_squared < 1.0);
}

TEST_CASE("power law fit errors") {
  CHECK_THROWS_AS(fit_power_law({1, 2}, {1, 2}), ValidationError);
  CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {1, 0, 2}), ValidationError);
  CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {1, 2}), ValidationError);
  CHECK_THROWS_AS(fit_power_law({2, 2, 2}, {1, 2, 3}), ValidationError);
}

TEST_CASE("linear growth window") {
  const auto w = linear_growth_window(synthetic(5.0));
  REQUIRE_FALSE(w.empty);
  CHECK(w.t_min == doctest::Approx(0.01));
  CHECK(w.t_max <= 5.0);
  CHECK(w.t_max > 3.0);
  Trajectory quad;
  for (double t : log_time_grid(10.0, 10)) {
    quad.times.push_back(t);
    quad.violation.push_back(t * t);
  }
  CHECK(linear_growth_window(quad).empty);
}

TEST_CASE("violation interpolation") {
  const auto tr = synthetic(50.0);
  CHECK(violation_at(tr, 2.0) == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(violation_at(tr, 0.005) == doctest::Approx(5e-5));
  CHECK_THROWS_AS(violation_at(tr, 200.0), ValidationError);
}

TEST_CASE("first order slope") {
  const auto m = small_u1(2.0);
  const auto cs = build_default_couplings(m);
  const DenseMatrix rho0 = build_initial_state(InitialStateKind::U1Vacuum, m).rho;
  const double s1 = first_order_slope(m, cs, {0.1, 1.0}, rho0);
  const double s2 = first_order_slope(m, cs, {0.2, 1.0}, rho0);
  CHECK(s1 > 0.0);
  CHECK(s2 == doctest::Approx(2.0 * s1).epsilon(1e-12));

  // Against a short numerical step.
  const auto eig = hermitian_eig(m.system_hamiltonian());
  const auto t = build_redfield_tensor(eig, cs, {0.1, 1.0}, kDegeneracyTolerance);
  IntegratorConfig cfg;
  cfg.rtol = 1e-12;
  cfg.atol = 1e-14;
  const auto tr = evolve_redfield(to_eigenbasis(rho0, eig), t, {0.0, 1e-5}, make_observables(m, eig), cfg);
  CHECK(tr.violation[1] / 1e-5 == doctest::Approx(s1).epsilon(1e-3));

  const auto d = static_cast<Eigen::Index>(m.lattice.dim());
  const DenseMatrix mixed = DenseMatrix::Identity(d, d) / static_cast<double>(d);
  CHECK_THROWS_AS(first_order_slope(m, cs, {0.1, 1.0}, mixed), PreconditionError);
}
