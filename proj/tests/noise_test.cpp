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

#include "gaugenoise/noise.hpp"
#include "gaugenoise/redfield.hpp"

using namespace gaugenoise;

TEST_CASE("one over f spectrum") {
  NoiseSpec s{0.1, 1.0, ZeroFrequencyMode::Zero, 0.01};
  CHECK(spectrum_eval(s, 2.0) == doctest::Approx(0.05));
  CHECK(spectrum_eval(s, -2.0) == spectrum_eval(s, 2.0));
  CHECK(spectrum_eval(s, 0.0) == 0.0);
  s.beta = 1.7;
  CHECK(spectrum_eval(s, 4.0) == doctest::Approx(0.1 / std::pow(4.0, 1.7)));
  s.zero_freq_mode = ZeroFrequencyMode::Cutoff;
  CHECK(spectrum_eval(s, 0.0) == doctest::Approx(0.1 / std::pow(0.01, 1.7)));
  CHECK(spectrum_eval(s, 1e-4) == spectrum_eval(s, 0.0));
  CHECK(spectrum_eval(s, 0.5) == doctest::Approx(0.1 / std::pow(0.5, 1.7)));
}

TEST_CASE("bath rate snaps near-zero frequencies") {
  const NoiseSpec s{0.1, 1.0, ZeroFrequencyMode::Zero, 0.01};
  CHECK(bath_rate(s, 1e-12) == 0.0);
  CHECK(bath_rate(s, -5e-10) == 0.0);
  CHECK(bath_rate(s, 1e-3) == doctest::Approx(100.0));
}

TEST_CASE("noise validation") {
  CHECK_NOTHROW(NoiseSpec{0.0, 1.0}.validate());
  CHECK_THROWS_AS((NoiseSpec{-0.1, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((NoiseSpec{0.1, 0.0}.validate()), ValidationError);
  CHECK_THROWS_AS((NoiseSpec{0.1, 2.0}.validate()), ValidationError);
  CHECK_THROWS_AS((NoiseSpec{0.1, 1.0, ZeroFrequencyMode::Cutoff, 0.0}.validate()), ValidationError);
  CHECK(parse_zero_frequency_mode(to_string(ZeroFrequencyMode::Cutoff)) == ZeroFrequencyMode::Cutoff);
  CHECK_THROWS(parse_zero_frequency_mode("white"));
}

TEST_CASE("default coupling sets") {
  LatticeSpec lat;
  lat.L = 4;
  const auto u1 = build_u1_couplings(lat);
  REQUIRE(u1.size() == 8);
  CHECK(u1.operators[0].label == "m1");
  CHECK(u1.operators[7].label == "g4-1");
  CHECK_NOTHROW(u1.validate());
  for (const auto& c : u1.operators) {
    CHECK(c.op.dim() == 256);
    CHECK(std::abs(c.op.trace()) < 1e-14);
    CHECK(c.op.max_asymmetry() == 0.0);
  }
  // Matter couplings square to one; link couplings to 1/4.
  const auto id = OperatorMatrix::identity(lat.local_dims());
  CHECK((u1.operators[1].op * u1.operators[1].op - id).frobenius_norm() < 1e-14);
  CHECK((u1.operators[5].op * u1.operators[5].op - 0.25 * id).frobenius_norm() < 1e-14);

  lat.matter_dim = 3;
  const auto z2 = build_z2_couplings(lat);
  REQUIRE(z2.size() == 8);
  CHECK(z2.operators[0].op.dim() == 1296);
  CHECK_NOTHROW(z2.validate());
}

TEST_CASE("coupling set validation") {
  LatticeSpec lat;
  lat.L = 2;
  auto set = build_u1_couplings(lat);
  auto dup = set;
  dup.operators[1].label = dup.operators[0].label;
  CHECK_THROWS_AS(dup.validate(), ValidationError);
  auto bad = set;
  bad.operators[0].op = embed_site_operator(local_operator(pauli::plus()), 0, lat.local_dims());
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
