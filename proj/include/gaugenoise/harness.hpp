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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaugenoise/analysis.hpp"
#include "gaugenoise/config.hpp"

namespace gaugenoise {

std::string library_version();

/// Model with the configured protection term installed.
ModelSystem build_model(const RunConfig& config);

struct RunResult {
  RunConfig config;
  Trajectory trajectory;
  ValidityReport validity;
  nlohmann::json metadata;
};

/// Builds, integrates and collects everything a run produces. No files.
RunResult execute_run(const RunConfig& config);

/// t, epsilon, condensate, trace_error, min_eig with 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);
nlohmann::json validity_json(const ValidityReport& report, std::size_t max_pairs = 200);
nlohmann::json fit_json(const ScalingFit& fit);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

struct RunPaths {
  std::filesystem::path csv, metadata, validity;
};

/// <stem>.csv, <stem>.meta.json, <stem>.validity.json under out_dir.
RunPaths write_run_outputs(const RunResult& result, const std::filesystem::path& out_dir);

enum class SweepAxis { V, Gamma, Beta };
SweepAxis parse_sweep_axis(const std::string& name);
std::string to_string(SweepAxis axis);

struct SweepResult {
  std::vector<double> values;
  std::vector<RunResult> runs;
  std::vector<double> epsilon_at_t_fix;
  std::optional<ScalingFit> fit;  // present with >= 3 values
};

/// Worker count from GAUGENOISE_WORKERS, else the hardware concurrency.
unsigned worker_count();

/// Runs one configuration per axis value on a worker pool.
SweepResult execute_sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values,
                          unsigned workers = worker_count());

/// Per-value outputs as <stem>_<axis><value>.* plus <stem>_fit.json.
void write_sweep_outputs(const SweepResult& sweep, SweepAxis axis, const RunConfig& base,
                         const std::filesystem::path& out_dir);

/// Compliance check of the configured sequence plus the golden-rule report.
nlohmann::json validate_config(const RunConfig& config);

/// Redfield against the Lindblad oracle. The superoperator comparison needs
/// L = 2; larger lattices get the trajectory comparison only.
nlohmann::json oracle_compare(const RunConfig& config);

}  // namespace gaugenoise
