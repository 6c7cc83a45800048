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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaugenoise/dynamics.hpp"
#include "gaugenoise/models.hpp"
#include "gaugenoise/noise.hpp"

namespace gaugenoise {

inline constexpr int kConfigSchemaVersion = 1;

/// Named coefficient sequences, c_j for 1-based j:
///   paper-u1-compliant  {-115, 116, -118, 122}/122 (L = 4 only)
///   staggered           (-1)^j
///   paper-z2            ((-6)^j + 5)/11
std::vector<Rational> sequence_preset(const std::string& name, int L);
std::vector<std::string> sequence_preset_names();

struct TimeGridConfig {
  double t_max = 10.0;
  int samples_per_decade = 200;
  double t_min = 1e-2;
  std::vector<double> explicit_times;  // overrides the log grid when non-empty

  std::vector<double> build() const;
};

struct RunConfig {
  ModelKind model = ModelKind::U1QuantumLink;
  int L = 4;
  double J = 1.0;
  double mu = 0.5;    // U(1)
  double h = 0.54;    // Z2
  int n_max = 1;      // Z2
  InitialStateKind initial_state = InitialStateKind::U1Vacuum;

  double V = 0.0;
  std::string sequence_preset;    // empty when given explicitly
  std::vector<Rational> sequence;  // always resolved
  GeneratorKind generator_kind = GeneratorKind::Full;

  NoiseSpec noise{0.1, 1.0, ZeroFrequencyMode::Zero, 0.01};
  std::string couplings = "default";
  double secular_cutoff = kDefaultSecularCutoff;
  IntegratorConfig integrator;
  TimeGridConfig time_grid;
  bool sample_min_eigenvalue = true;
  double validity_threshold = 0.1;
  double t_fix = 2.0;  // sweep fits read epsilon here

  std::string out_dir = "out";
  std::string stem = "run";

  /// Field-level checks; messages name the offending JSON field.
  void validate() const;
};

/// Throws ValidationError with "<field>: <reason>" or the parser's
/// line/column message.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);
std::string serialize_run_config(const RunConfig& config);

}  // namespace gaugenoise
