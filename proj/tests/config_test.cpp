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


#include <doctest.h>

#include "gaugenoise/config.hpp"

using namespace gaugenoise;

namespace {

const char* kMinimal = R"({
  "schema_version": 1,
  "model": {"kind": "u1_qlm", "L": 4, "mu": 0.5},
  "initial_state": "u1_vacuum",
  "protection": {"V": 8, "sequence": "paper-u1-compliant"},
  "noise": {"gamma": 0.1, "beta": 1.0},
  "time_grid": {"t_max": 2.0, "samples_per_decade": 20}
})";

std::string error_of(const std::string& text) {
  try {
    parse_run_config(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("sequence presets") {
  const auto u = sequence_preset("paper-u1-compliant", 4);
  CHECK(u == std::vector<Rational>{Rational(-115, 122), Rational(116, 122), Rational(-118, 122), Rational(1)});
  CHECK(sequence_preset("staggered", 4) ==
        std::vector<Rational>{Rational(-1), Rational(1), Rational(-1), Rational(1)});
  // ((-6)^j + 5)/11 for j = 1..4
  CHECK(sequence_preset("paper-z2", 4) ==
        std::vector<Rational>{Rational(-1, 11), Rational(41, 11), Rational(-211, 11), Rational(1301, 11)});
  CHECK_THROWS_AS(sequence_preset("paper-u1-compliant", 2), ValidationError);
  CHECK_THROWS_AS(sequence_preset("fibonacci", 4), ValidationError);
  CHECK(sequence_preset_names().size() == 3);
}

TEST_CASE("minimal config and defaults") {
  const auto c = parse_run_config(kMinimal);
  CHECK(c.model == ModelKind::U1QuantumLink);
  CHECK(c.L == 4);
  CHECK(c.J == 1.0);
  CHECK(c.V == 8.0);
  CHECK(c.sequence_preset == "paper-u1-compliant");
  CHECK(c.generator_kind == GeneratorKind::Full);
  CHECK(c.noise.zero_freq_mode == ZeroFrequencyMode::Zero);
  CHECK(c.secular_cutoff == kDefaultSecularCutoff);
  CHECK(c.integrator.rtol == 1e-8);
  CHECK(c.time_grid.samples_per_decade == 20);
  CHECK(c.t_fix == 2.0);
  CHECK(c.stem == "run");
  const auto grid = c.time_grid.build();
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 2.0);
}

TEST_CASE("round trip") {
  auto c = parse_run_config(kMinimal);
  c.stem = "rt";
  c.noise.beta = 1.7;
  c.integrator.method = IntegratorMethod::DenseExponential;
  c.L = 2;
  c.sequence_preset.clear();
  c.sequence = {Rational(1), Rational(-2, 7)};
  c.V = 0.0;
  const auto text = serialize_run_config(c);
  const auto back = parse_run_config(text);
  CHECK(serialize_run_config(back) == text);
  CHECK(back.sequence == c.sequence);
  CHECK(back.integrator.method == IntegratorMethod::DenseExponential);

  // Explicit times survive too.
  c.time_grid.explicit_times = {0.0, 1e-3};
  const auto back2 = parse_run_config(serialize_run_config(c));
  CHECK(back2.time_grid.build() == std::vector<double>{0.0, 1e-3});
}

TEST_CASE("z2 config") {
  std::string text = with(kMinimal, R"("kind": "u1_qlm", "L": 4, "mu": 0.5)", R"("kind": "z2_lgt", "L": 4, "h": 0.54)");
  text = with(text, "u1_vacuum", "z2_cdw");
  text = with(text, R"("sequence": "paper-u1-compliant")", R"("sequence": "paper-z2", "generator_kind": "pseudo")");
  const auto c = parse_run_config(text);
  CHECK(c.model == ModelKind::Z2Gauge);
  CHECK(c.h == 0.54);
  CHECK(c.n_max == 1);
  CHECK(c.generator_kind == GeneratorKind::Pseudo);
}

TEST_CASE("field-level errors") {
  CHECK(error_of("{").find("not valid JSON") != std::string::npos);
  CHECK(error_of(with(kMinimal, R"("schema_version": 1)", R"("schema_version": 7)")).find("schema_version") == 0);
  CHECK(error_of(with(kMinimal, R"("L": 4)", R"("L": 3)")).find("L") != std::string::npos);
  CHECK(error_of(with(kMinimal, R"("beta": 1.0)", R"("beta": 2.5)")).find("noise") != std::string::npos);
  CHECK(error_of(with(kMinimal, R"("gamma": 0.1)", R"("gamma": "big")")).find("noise.gamma") != std::string::npos);
  CHECK(error_of(with(kMinimal, R"("mu": 0.5)", R"("mu": 0.5, "colour": 1)")).find("model.colour") != std::string::npos);
  CHECK(error_of(with(kMinimal, "u1_vacuum", "z2_cdw")).find("initial_state") != std::string::npos);
  CHECK(error_of(with(kMinimal, R"("sequence": "paper-u1-compliant")", R"("sequence": [0.5, 1, 1, 1])"))
            .find("protection.sequence") != std::string::npos);
  CHECK(error_of(with(kMinimal, R"("sequence": "paper-u1-compliant")",
                      R"("sequence": [[1, 1], [1, 1], [1, 1], [1, 1]], "preset": "staggered")"))
            .find("protection.preset") != std::string::npos);
  CHECK(error_of(with(kMinimal, R"("sequence": "paper-u1-compliant")", R"("sequence": [[1, 1], [1, 1]])"))
            .find("sequence") != std::string::npos);
  CHECK(error_of(with(kMinimal, R"("V": 8)", R"("V": -1)")).find("V") != std::string::npos);
  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ValidationError);
}
