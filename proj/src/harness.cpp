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

#include "gaugenoise/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "gaugenoise/diagnostics.hpp"

namespace gaugenoise {

using nlohmann::json;

std::string library_version() { return GAUGENOISE_VERSION; }

ModelSystem build_model(const RunConfig& config) {
  config.validate();
  LatticeSpec lat;
  lat.L = config.L;
  ModelSystem model;
  if (config.model == ModelKind::U1QuantumLink) {
    model = build_u1_qlm(lat, config.J, config.mu);
  } else {
    lat.matter_dim = config.n_max + 1;
    model = build_z2_lgt(lat, config.J, config.h, config.n_max);
  }
  ProtectionSpec p;
  p.V = config.V;
  p.sequence = config.sequence;
  p.generator_kind = config.generator_kind;
  return with_protection(model, p);
}

namespace {

json trajectory_summary(const Trajectory& tr) {
  json j;
  j["samples"] = tr.times.size();
  j["accepted_steps"] = tr.steps;
  j["max_trace_error"] = tr.trace_error.empty() ? 0.0 : *std::max_element(tr.trace_error.begin(), tr.trace_error.end());
  j["max_symmetrization"] = tr.max_symmetrization;
  if (!tr.min_eigenvalue.empty()) {
    j["min_eigenvalue"] = *std::min_element(tr.min_eigenvalue.begin(), tr.min_eigenvalue.end());
  }
  j["epsilon_final"] = tr.violation.empty() ? 0.0 : tr.violation.back();
  return j;
}

std::string format_value(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

RunResult execute_run(const RunConfig& config) {
  const ModelSystem model = build_model(config);
  const CouplingSet couplings = build_default_couplings(model);
  const auto eig = hermitian_eig(model.system_hamiltonian());
  const auto tensor = build_redfield_tensor(eig, couplings, config.noise, config.secular_cutoff);
  const auto init = build_initial_state(config.initial_state, model);
  const auto obs = make_observables(model, eig, config.sample_min_eigenvalue);
  const auto times = config.time_grid.build();

  RunResult r;
  r.config = config;
  r.validity = golden_rule_rates(eig, couplings, config.noise, config.validity_threshold);
  if (!r.validity.pass) {
    std::ostringstream os;
    os << "golden-rule check: max Gamma/|omega| = " << r.validity.max_ratio << " exceeds " << config.validity_threshold;
    warn(os.str());
  }
  r.trajectory = evolve_redfield(to_eigenbasis(init.rho, eig), tensor, times, obs, config.integrator);

  json& m = r.metadata;
  m["code_version"] = library_version();
  m["config"] = to_json(config);
  m["hilbert_dim"] = eig.dim();
  m["sequence_exact"] = json::array();
  for (const auto& c : config.sequence) m["sequence_exact"].push_back(to_string(c));
  if (config.model == ModelKind::Z2Gauge) {
    m["matter_truncation"] = config.n_max == 1 ? "hard-core (n_max = 1)" : "truncated boson, n_max = " + std::to_string(config.n_max);
  }
  m["coupling_labels"] = json::array();
  for (const auto& c : couplings.operators) m["coupling_labels"].push_back(c.label);
  m["tensor"] = {{"decay_entries", tensor.decay_entries().size()},
                 {"jump_entries", tensor.jump_entries().size()},
                 {"secular_cutoff", tensor.secular_cutoff()},
                 {"degeneracy_tolerance", kDegeneracyTolerance}};
  m["trajectory"] = trajectory_summary(r.trajectory);
  m["validity"] = {{"max_ratio", r.validity.max_ratio}, {"pass", r.validity.pass}, {"threshold", r.validity.threshold}};
  return r;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = "t,epsilon,condensate,trace_error,min_eig\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  };
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    put(tr.times[i]);
    out += ',';
    put(tr.violation[i]);
    out += ',';
    if (i < tr.condensate.size()) put(tr.condensate[i]);
    out += ',';
    put(tr.trace_error[i]);
    out += ',';
    if (i < tr.min_eigenvalue.size()) put(tr.min_eigenvalue[i]);
    out += '\n';
  }
  return out;
}

json validity_json(const ValidityReport& report, std::size_t max_pairs) {
  json j;
  j["convention"] = ValidityReport::kConvention;
  j["threshold"] = report.threshold;
  j["max_ratio"] = report.max_ratio;
  j["pass"] = report.pass;
  j["pair_count"] = report.pairs.size();
  j["pairs"] = json::array();
  for (std::size_t i = 0; i < std::min(max_pairs, report.pairs.size()); ++i) {
    const auto& p = report.pairs[i];
    j["pairs"].push_back({{"i", p.initial}, {"f", p.final}, {"rate", p.rate}, {"omega", p.omega}, {"ratio", p.ratio}});
  }
  return j;
}

json fit_json(const ScalingFit& fit) {
  return {{"exponent", fit.exponent},   {"amplitude", fit.amplitude},   {"r_squared", fit.r_squared},
          {"window_min", fit.window_min}, {"window_max", fit.window_max}, {"n_points", fit.n_points}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

RunPaths write_run_outputs(const RunResult& result, const std::filesystem::path& out_dir) {
  RunPaths p;
  const std::string& stem = result.config.stem;
  p.csv = out_dir / (stem + ".csv");
  p.metadata = out_dir / (stem + ".meta.json");
  p.validity = out_dir / (stem + ".validity.json");
  write_file_atomic(p.csv, trajectory_csv(result.trajectory));
  write_file_atomic(p.metadata, result.metadata.dump(2) + "\n");
  write_file_atomic(p.validity, validity_json(result.validity).dump(2) + "\n");
  return p;
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "V") return SweepAxis::V;
  if (name == "gamma") return SweepAxis::Gamma;
  if (name == "beta") return SweepAxis::Beta;
  throw ValidationError("unknown sweep axis '" + name + "' (expected V, gamma or beta)");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::V:
      return "V";
    case SweepAxis::Gamma:
      return "gamma";
    case SweepAxis::Beta:
      return "beta";
  }
  return "?";
}

unsigned worker_count() {
  if (const char* env = std::getenv("GAUGENOISE_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<unsigned>(n);
    warn("ignoring GAUGENOISE_WORKERS='" + std::string(env) + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult execute_sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values,
                          unsigned workers) {
  if (values.empty()) throw ValidationError("sweep: no values given");
  SweepResult s;
  s.values = values;
  std::vector<RunConfig> configs;
  for (double v : values) {
    RunConfig c = base;
    switch (axis) {
      case SweepAxis::V:
        c.V = v;
        break;
      case SweepAxis::Gamma:
        c.noise.gamma = v;
        break;
      case SweepAxis::Beta:
        c.noise.beta = v;
        break;
    }
    c.stem = base.stem + "_" + to_string(axis) + format_value(v);
    c.validate();
    configs.push_back(std::move(c));
  }
  s.runs.resize(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        s.runs[i] = execute_run(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(configs.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& r : s.runs) s.epsilon_at_t_fix.push_back(violation_at(r.trajectory, base.t_fix));
  if (values.size() >= 3) {
    s.fit = fit_power_law(values, s.epsilon_at_t_fix);
  } else {
    warn("sweep: fewer than 3 values, no fit produced");
  }
  return s;
}

void write_sweep_outputs(const SweepResult& sweep, SweepAxis axis, const RunConfig& base,
                         const std::filesystem::path& out_dir) {
  for (const auto& r : sweep.runs) write_run_outputs(r, out_dir);
  json j;
  j["axis"] = to_string(axis);
  j["values"] = sweep.values;
  j["t_fix"] = base.t_fix;
  j["epsilon_at_t_fix"] = sweep.epsilon_at_t_fix;
  j["runs"] = json::array();
  for (const auto& r : sweep.runs) j["runs"].push_back(r.config.stem);
  if (sweep.fit) j["fit"] = fit_json(*sweep.fit);
  j["code_version"] = library_version();
  write_file_atomic(out_dir / (base.stem + "_fit.json"), j.dump(2) + "\n");
}

json validate_config(const RunConfig& config) {
  const ModelSystem model = build_model(config);
  const bool pseudo = config.generator_kind == GeneratorKind::Pseudo;
  const auto& spectra = pseudo ? model.pseudogenerator_spectra : model.generator_spectra;
  const auto compliance = check_sequence_compliance(config.sequence, spectra, model.target_sector);
  json j;
  j["code_version"] = library_version();
  j["model"] = to_string(config.model);
  j["generator_kind"] = to_string(config.generator_kind);
  j["sequence"] = json::array();
  for (const auto& c : config.sequence) j["sequence"].push_back(to_string(c));
  j["compliant"] = compliance.compliant;
  j["tuples_checked"] = compliance.tuples_checked;
  if (compliance.witness) j["witness"] = *compliance.witness;
  j["target_sector"] = model.target_sector;
  const auto eig = hermitian_eig(model.system_hamiltonian());
  j["validity"] = validity_json(golden_rule_rates(eig, build_default_couplings(model), config.noise,
                                                  config.validity_threshold));
  return j;
}

json oracle_compare(const RunConfig& config) {
  const ModelSystem model = build_model(config);
  const CouplingSet couplings = build_default_couplings(model);
  const auto eig = hermitian_eig(model.system_hamiltonian());
  const auto tensor = build_redfield_tensor(eig, couplings, config.noise, config.secular_cutoff);
  const auto lindblad = build_lindblad_dissipator(eig, couplings, config.noise, kDegeneracyTolerance);
  const auto init = build_initial_state(config.initial_state, model);
  const DenseMatrix rho0 = to_eigenbasis(init.rho, eig);
  const auto obs = make_observables(model, eig, true);
  const auto times = config.time_grid.build();

  json j;
  j["code_version"] = library_version();
  j["config"] = to_json(config);
  j["secular_cutoff"] = config.secular_cutoff;
  j["bin_tolerance"] = kDegeneracyTolerance;
  if (config.L == 2) {
    const Eigen::Index n = eig.dim();
    const DenseMatrix sr = superoperator_matrix([&](const DenseMatrix& r) { return apply_superoperator(tensor, r); }, n);
    const DenseMatrix sl =
        superoperator_matrix([&](const DenseMatrix& r) { return apply_lindblad_generator(lindblad, r); }, n);
    j["superoperator_difference_norm"] = induced_frobenius_norm(sr - sl);
    j["superoperator_norm"] = induced_frobenius_norm(sr);
  } else {
    j["superoperator_difference_norm"] = nullptr;
    j["superoperator_note"] = "full superoperator comparison needs L = 2";
  }
  const auto tr_r = evolve_redfield(rho0, tensor, times, obs, config.integrator);
  const auto tr_l = evolve_lindblad(rho0, lindblad, times, obs, config.integrator);
  const auto tr_u = evolve_unitary(rho0, eig, times, obs);
  double max_diff = 0.0, max_unitary = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    max_diff = std::max(max_diff, std::abs(tr_r.violation[i] - tr_l.violation[i]));
    max_unitary = std::max(max_unitary, std::abs(tr_r.violation[i] - tr_u.violation[i]));
  }
  j["max_epsilon_difference"] = max_diff;
  j["max_epsilon_difference_unitary"] = max_unitary;
  j["redfield"] = trajectory_summary(tr_r);
  j["lindblad"] = trajectory_summary(tr_l);

  const double dt = 1e-3;
  const double slope = first_order_slope(model, couplings, config.noise, init.rho);
  const auto short_run = evolve_redfield(rho0, tensor, {0.0, dt}, obs, config.integrator);
  const double fd = (short_run.violation[1] - short_run.violation[0]) / dt;
  j["first_order_slope"] = slope;
  j["finite_difference_slope"] = fd;
  j["slope_relative_difference"] = slope == 0.0 ? std::abs(fd) : std::abs(fd - slope) / std::abs(slope);
  return j;
}

}  // namespace gaugenoise
