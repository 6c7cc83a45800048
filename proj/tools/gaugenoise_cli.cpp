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

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gaugenoise/harness.hpp"

namespace gn = gaugenoise;

namespace {

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw gn::ValidationError("--values: cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw gn::ValidationError("--values: empty list");
  return out;
}

std::filesystem::path out_dir_for(const gn::RunConfig& c, const std::string& override_dir) {
  return override_dir.empty() ? std::filesystem::path(c.out_dir) : std::filesystem::path(override_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bloch-Redfield dynamics of lattice gauge theories under 1/f noise"};
  app.set_version_flag("--version", gn::library_version());
  app.require_subcommand(1);

  std::string config_path, out_dir, axis = "V", values, report_path;

  auto* run = app.add_subcommand("run", "integrate one configuration");
  run->add_option("--config", config_path, "RunConfig JSON")->required();
  run->add_option("--out-dir", out_dir, "override outputs.dir");

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and fit epsilon(t_fix)");
  sweep->add_option("--config", config_path, "base RunConfig JSON")->required();
  sweep->add_option("--axis", axis, "V, gamma or beta")->check(CLI::IsMember({"V", "gamma", "beta"}));
  sweep->add_option("--values", values, "comma-separated axis values")->required();
  sweep->add_option("--out-dir", out_dir, "override outputs.dir");

  auto* validate = app.add_subcommand("validate", "compliance check and golden-rule report, no evolution");
  validate->add_option("--config", config_path, "RunConfig JSON")->required();
  validate->add_option("--out-dir", out_dir, "write <stem>.check.json here as well");

  auto* oracle = app.add_subcommand("oracle-compare", "compare the Redfield and Lindblad paths");
  oracle->add_option("--config", config_path, "RunConfig JSON")->required();
  oracle->add_option("--out-dir", out_dir, "write <stem>.oracle.json here as well");

  CLI11_PARSE(app, argc, argv);

  try {
    const gn::RunConfig config = gn::load_run_config(config_path);
    const auto dir = out_dir_for(config, out_dir);
    if (run->parsed()) {
      const auto result = gn::execute_run(config);
      const auto paths = gn::write_run_outputs(result, dir);
      std::cout << paths.csv.string() << "\n" << paths.metadata.string() << "\n" << paths.validity.string() << "\n";
    } else if (sweep->parsed()) {
      const auto ax = gn::parse_sweep_axis(axis);
      const auto result = gn::execute_sweep(config, ax, parse_values(values));
      gn::write_sweep_outputs(result, ax, config, dir);
      if (result.fit) std::cout << gn::fit_json(*result.fit).dump() << "\n";
    } else if (validate->parsed()) {
      const auto report = gn::validate_config(config);
      if (!out_dir.empty()) gn::write_file_atomic(dir / (config.stem + ".check.json"), report.dump(2) + "\n");
      std::cout << report.dump(2) << "\n";
    } else if (oracle->parsed()) {
      const auto report = gn::oracle_compare(config);
      if (!out_dir.empty()) gn::write_file_atomic(dir / (config.stem + ".oracle.json"), report.dump(2) + "\n");
      std::cout << report.dump(2) << "\n";
    }
  } catch (const gn::ValidationError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
