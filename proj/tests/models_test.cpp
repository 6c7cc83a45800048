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
#include <vector>

#include <doctest.h>

#include "gaugenoise/config.hpp"
#include "gaugenoise/models.hpp"

using namespace gaugenoise;

namespace {

// Decodes a basis index into per-factor digits, slowest factor first.
std::vector<int> digits(std::size_t index, const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = static_cast<int>(index % static_cast<std::size_t>(dims[k]));
    index /= static_cast<std::size_t>(dims[k]);
  }
  return out;
}

std::size_t encode(const std::vector<int>& d, const std::vector<int>& dims) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(d[k]);
  return idx;
}

// U(1): site digit 0 = occupied (sigma^z = +1); link digit 0 = spin up.
DenseMatrix u1_reference(int L, double J, double mu) {
  std::vector<int> dims(static_cast<std::size_t>(2 * L), 2);
  const std::size_t n = std::size_t{1} << (2 * L);
  DenseMatrix h = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < n; ++s) {
    auto d = digits(s, dims);
    for (int j = 0; j < L; ++j) {
      const int site = 2 * j, link = 2 * j + 1, next = 2 * ((j + 1) % L);
      h(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) += (mu / 2.0) * (d[site] == 0 ? 1.0 : -1.0);
      // sigma^-_j S^+_j sigma^-_{j+1}: both sites occupied, link down.
      if (d[site] == 0 && d[next] == 0 && d[link] == 1) {
        auto e = d;
        e[site] = 1;
        e[next] = 1;
        e[link] = 0;
        const auto t = encode(e, dims);
        h(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) += J;
        h(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) += J;
      }
    }
  }
  return h;
}

// Z2 with n_max = 1: site digit = boson number, link digit 0 = tau^x = +1.
DenseMatrix z2_reference(int L, double J, double hf) {
  std::vector<int> dims(static_cast<std::size_t>(2 * L), 2);
  const std::size_t n = std::size_t{1} << (2 * L);
  DenseMatrix h = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < n; ++s) {
    auto d = digits(s, dims);
    for (int j = 0; j < L; ++j) {
      const int site = 2 * j, link = 2 * j + 1, next = 2 * ((j + 1) % L);
      h(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) -= hf * (d[link] == 0 ? 1.0 : -1.0);
      // a^dag_j tau^z a_{j+1}
      if (d[site] == 0 && d[next] == 1) {
        auto e = d;
        e[site] = 1;
        e[next] = 0;
        e[link] = 1 - e[link];
        const auto t = encode(e, dims);
        h(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) += J;
        h(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) += J;
      }
    }
  }
  return h;
}

LatticeSpec lattice(int L) {
  LatticeSpec lat;
  lat.L = L;
  return lat;
}

}  // namespace

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(lattice(3).validate(), ValidationError);
  CHECK_THROWS_AS(lattice(0).validate(), ValidationError);
  LatticeSpec big = lattice(8);
  CHECK_THROWS_AS(big.validate(), CapacityError);
  CHECK(lattice(4).dim() == 256);
  CHECK(lattice(4).wrap(-1) == 3);
}

TEST_CASE("u1 hamiltonian matches basis enumeration") {
  for (int L : {2, 4}) {
    const auto m = build_u1_qlm(lattice(L), 1.3, 0.5);
    CHECK((m.hamiltonian.dense() - u1_reference(L, 1.3, 0.5)).norm() < 1e-13);
  }
}

TEST_CASE("z2 hamiltonian matches basis enumeration") {
  for (int L : {2, 4}) {
    const auto m = build_z2_lgt(lattice(L), 0.9, 0.54, 1);
    CHECK((m.hamiltonian.dense() - z2_reference(L, 0.9, 0.54)).norm() < 1e-13);
  }
}

TEST_CASE("gauge invariance of both models") {
  for (int L : {2, 4}) {
    const auto u1 = build_u1_qlm(lattice(L), 1.0, 0.5);
    const auto z2 = build_z2_lgt(lattice(L), 1.0, 0.54, 1);
    REQUIRE(u1.generators.size() == static_cast<std::size_t>(L));
    for (const auto& g : u1.generators) CHECK(commutator_norm(u1.hamiltonian, g) < 1e-12);
    for (const auto& g : z2.generators) CHECK(commutator_norm(z2.hamiltonian, g) < 1e-12);
    // Generators commute among themselves.
    CHECK(commutator_norm(u1.generators[0], u1.generators[1]) < 1e-14);
  }
}

TEST_CASE("u1 generator spectra") {
  const auto m = build_u1_qlm(lattice(4), 1.0, 0.5);
  // Odd 1-based sites carry the minus sign.
  CHECK(m.generator_spectra[0] == std::vector<int>{-2, -1, 0, 1});
  CHECK(m.generator_spectra[1] == std::vector<int>{-1, 0, 1, 2});
  Eigen::SelfAdjointEigenSolver<DenseMatrix> s(m.generators[1].dense());
  CHECK(s.eigenvalues().minCoeff() == doctest::Approx(-1.0));
  CHECK(s.eigenvalues().maxCoeff() == doctest::Approx(2.0));
}

TEST_CASE("z2 generators square to one and multiply to the parity") {
  const auto m = build_z2_lgt(lattice(4), 1.0, 0.54, 1);
  const auto id = OperatorMatrix::identity(m.lattice.local_dims());
  OperatorMatrix prod = id;
  for (const auto& g : m.generators) {
    CHECK((g * g - id).frobenius_norm() < 1e-14);
    prod = prod * g;
  }
  // Each link appears twice, so the product is the total boson parity.
  const DenseMatrix p = prod.dense();
  const std::vector<int> dims = m.lattice.local_dims();
  for (Eigen::Index s = 0; s < p.rows(); ++s) {
    const auto d = digits(static_cast<std::size_t>(s), dims);
    int n = 0;
    for (int j = 0; j < 4; ++j) n += d[static_cast<std::size_t>(2 * j)];
    CHECK(p(s, s).real() == doctest::Approx(n % 2 == 0 ? 1.0 : -1.0));
  }
  CHECK(m.generator_spectra[0] == std::vector<int>{-1, 1});
}

TEST_CASE("z2 pseudogenerator target eigenspace equals the generator one") {
  for (int L : {2, 4}) {
    const auto m = build_z2_lgt(lattice(L), 1.0, 0.54, 1);
    // Both operators are diagonal in the product basis.
    for (std::size_t j = 0; j < m.generators.size(); ++j) {
      const DenseMatrix g = m.generators[j].dense();
      const DenseMatrix w = m.pseudogenerators[j].dense();
      CHECK((g - DenseMatrix(g.diagonal().asDiagonal())).norm() == 0.0);
      CHECK((w - DenseMatrix(w.diagonal().asDiagonal())).norm() == 0.0);
      for (Eigen::Index s = 0; s < g.rows(); ++s) {
        const bool in_g = std::abs(g(s, s).real() - m.target_sector[j]) < 1e-12;
        const bool in_w = std::abs(w(s, s).real() - m.target_sector[j]) < 1e-12;
        CHECK(in_g == in_w);
      }
    }
  }
  // Pseudogenerator spectrum at n_max = 1: {-1, 1, 3}.
  const auto m = build_z2_lgt(lattice(4), 1.0, 0.54, 1);
  CHECK(m.pseudogenerator_spectra[0] == std::vector<int>{-1, 1, 3});
}

TEST_CASE("pseudogenerators reject invalid targets") {
  CHECK_THROWS_AS(build_z2_pseudogenerators(lattice(2), {1, 0}), ValidationError);
  CHECK_THROWS_AS(build_z2_pseudogenerators(lattice(2), {1}), ValidationError);
}

TEST_CASE("protection term") {
  const auto m = build_u1_qlm(lattice(2), 1.0, 0.5);
  ProtectionSpec spec{2.0, {Rational(1), Rational(-1, 2)}, GeneratorKind::Full};
  const auto p = with_protection(m, spec);
  const OperatorMatrix expect = 2.0 * m.generators[0] - 1.0 * m.generators[1];
  CHECK((p.protection_term - expect).frobenius_norm() < 1e-14);
  CHECK(commutator_norm(p.system_hamiltonian(), m.generators[0]) < 1e-12);
  spec.sequence.pop_back();
  CHECK_THROWS_AS(with_protection(m, spec), ValidationError);
  spec = {1.0, {Rational(1), Rational(1)}, GeneratorKind::Pseudo};
  CHECK_THROWS_AS(with_protection(m, spec), ValidationError);
  spec = {-1.0, {Rational(1), Rational(1)}, GeneratorKind::Full};
  CHECK_THROWS_AS(with_protection(m, spec), ValidationError);
}

TEST_CASE("compliance: hand cases") {
  const std::vector<std::vector<int>> spectra{{-1, 0, 1}, {-1, 0, 1}};
  const std::vector<int> target{0, 0};
  auto r = check_sequence_compliance({Rational(1), Rational(1)}, spectra, target);
  CHECK_FALSE(r.compliant);
  REQUIRE(r.witness);
  CHECK((*r.witness)[0] + (*r.witness)[1] == 0);
  r = check_sequence_compliance({Rational(1), Rational(3)}, spectra, target);
  CHECK(r.compliant);
  CHECK(r.tuples_checked == 9);
  CHECK_THROWS_AS(check_sequence_compliance({Rational(1)}, spectra, target), ValidationError);
  CHECK_THROWS_AS(check_sequence_compliance({Rational(1), Rational(3)}, spectra, target, 4), CapacityError);
}

TEST_CASE("compliance of the named sequences") {
  const auto u1 = build_u1_qlm(lattice(4), 1.0, 0.5);
  auto r = check_sequence_compliance(sequence_preset("paper-u1-compliant", 4), u1.generator_spectra, u1.target_sector);
  CHECK(r.compliant);
  CHECK(r.tuples_checked == 256);
  r = check_sequence_compliance(sequence_preset("staggered", 4), u1.generator_spectra, u1.target_sector);
  CHECK_FALSE(r.compliant);
  REQUIRE(r.witness);
  Rational sum(0);
  const auto st = sequence_preset("staggered", 4);
  for (std::size_t j = 0; j < 4; ++j) sum += st[j] * Rational((*r.witness)[j]);
  CHECK(sum == Rational(0));

  // Deviations are 0 or +-2, so powers of three never cancel while 1..4 do (1 + 2 = 3).
  const auto z2 = build_z2_lgt(lattice(4), 1.0, 0.54, 1);
  r = check_sequence_compliance({Rational(1), Rational(3), Rational(9), Rational(27)}, z2.pseudogenerator_spectra,
                                z2.target_sector);
  CHECK(r.compliant);
  CHECK(r.tuples_checked == 81);
  r = check_sequence_compliance({Rational(1), Rational(2), Rational(3), Rational(4)}, z2.pseudogenerator_spectra,
                                z2.target_sector);
  CHECK_FALSE(r.compliant);
}

TEST_CASE("initial states") {
  const auto u1 = build_u1_qlm(lattice(4), 1.0, 0.5);
  for (auto k : {InitialStateKind::U1Vacuum, InitialStateKind::U1ChargeProliferated}) {
    const auto st = build_initial_state(k, u1);
    CHECK(st.rho.trace().real() == doctest::Approx(1.0));
    CHECK(std::abs(expectation(st.rho, violation_operator(u1))) < 1e-14);
    for (const auto& g : u1.generators) CHECK(std::abs(expectation(st.rho, g)) < 1e-14);
  }
  CHECK_THROWS_AS(build_initial_state(InitialStateKind::Z2ChargeDensityWave, u1), ValidationError);

  const auto z2 = build_z2_lgt(lattice(4), 1.0, 0.54, 1);
  const auto cdw = build_initial_state(InitialStateKind::Z2ChargeDensityWave, z2);
  for (const auto& g : z2.generators) CHECK(expectation(cdw.rho, g) == doctest::Approx(1.0));
  CHECK_THROWS_AS(build_initial_state(InitialStateKind::U1Vacuum, z2), ValidationError);
  // One particle on a ring of two cannot satisfy all +1 charges.
  const auto z2small = build_z2_lgt(lattice(2), 1.0, 0.54, 1);
  CHECK_THROWS_AS(build_initial_state(InitialStateKind::Z2ChargeDensityWave, z2small), ValidationError);
}

TEST_CASE("violation operator on the maximally mixed state") {
  const auto z2 = build_z2_lgt(lattice(2), 1.0, 0.54, 1);
  const auto dz = static_cast<Eigen::Index>(z2.lattice.dim());
  const DenseMatrix mixed_z2 = DenseMatrix::Identity(dz, dz) / static_cast<double>(dz);
  CHECK(expectation(mixed_z2, violation_operator(z2)) == doctest::Approx(2.0).epsilon(1e-13));

  const auto u1 = build_u1_qlm(lattice(4), 1.0, 0.5);
  const auto du = static_cast<Eigen::Index>(u1.lattice.dim());
  const DenseMatrix mixed_u1 = DenseMatrix::Identity(du, du) / static_cast<double>(du);
  CHECK(expectation(mixed_u1, violation_operator(u1)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("names round-trip") {
  for (auto k : {InitialStateKind::U1Vacuum, InitialStateKind::U1ChargeProliferated,
                 InitialStateKind::Z2ChargeDensityWave}) {
    CHECK(parse_initial_state_kind(to_string(k)) == k);
  }
  CHECK(parse_generator_kind("pseudo") == GeneratorKind::Pseudo);
  CHECK_THROWS_AS(parse_generator_kind("half"), ValidationError);
}
