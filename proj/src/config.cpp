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

#include "gaugenoise/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gaugenoise {

using nlohmann::json;

std::vector<std::string> sequence_preset_names() { return {"paper-u1-compliant", "staggered", "paper-z2"}; }

std::vector<Rational> sequence_preset(const std::string& name, int L) {
  if (L < 1) throw ValidationError("sequence preset: L must be positive");
  std::vector<Rational> out;
  if (name == "paper-u1-compliant") {
    if (L != 4) throw ValidationError("sequence preset 'paper-u1-compliant' is defined for L = 4 only");
    for (int n : {-115, 116, -118, 122}) out.emplace_back(n, 122);
  } else if (name == "staggered") {
    for (int j = 1; j <= L; ++j) out.emplace_back(j % 2 == 0 ? 1 : -1);
  } else if (name == "paper-z2") {
    std::int64_t p = 1;
    for (int j = 1; j <= L; ++j) {
      p *= -6;
      out.emplace_back(p + 5, 11);
    }
  } else {
    throw ValidationError("unknown sequence preset '" + name + "'");
  }
  return out;
}

std::vector<double> TimeGridConfig::build() const {
  if (!explicit_times.empty()) return explicit_times;
  return log_time_grid(t_max, samples_per_decade, t_min);
}

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& why) {
  throw ValidationError(path + ": " + why);
}

class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) field_error(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key);
  }
  const json& at(const std::string& key) {
    if (!has(key)) field_error(field(key), "missing");
    return obj_.at(key);
  }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      field_error(field(key), "missing");
    }
    const json& v = obj_.at(key);
    if (!v.is_number()) field_error(field(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) field_error(field(key), "must be finite");
    return d;
  }
  int integer(const std::string& key, std::optional<int> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      field_error(field(key), "missing");
    }
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) field_error(field(key), "expected an integer");
    return v.get<int>();
  }
  std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      field_error(field(key), "missing");
    }
    const json& v = obj_.at(key);
    if (!v.is_string()) field_error(field(key), "expected a string");
    return v.get<std::string>();
  }
  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) field_error(field(key), "expected true or false");
    return v.get<bool>();
  }

  void finish() const {
    for (const auto& [k, v] : obj_.items()) {
      if (!seen_.count(k)) field_error(field(k), "unknown field");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    field_error(path, msg);
  }
}

std::vector<Rational> parse_sequence(const json& v, const std::string& path) {
  if (!v.is_array()) field_error(path, "expected a preset name or a list of [numerator, denominator] pairs");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& e = v[i];
    if (e.is_number_float()) field_error(p, "floating-point coefficients are not accepted; use [numerator, denominator]");
    if (e.is_number_integer()) {
      out.emplace_back(e.get<std::int64_t>());
    } else if (e.is_array() && e.size() == 2 && e[0].is_number_integer() && e[1].is_number_integer()) {
      const auto den = e[1].get<std::int64_t>();
      if (den == 0) field_error(p, "zero denominator");
      out.emplace_back(e[0].get<std::int64_t>(), den);
    } else if (e.is_string()) {
      out.push_back(wrap(p, [&] { return parse_rational(e.get<std::string>()); }));
    } else {
      field_error(p, "expected [numerator, denominator]");
    }
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (L < 2 || L % 2 != 0) field_error("model.L", "must be even and >= 2");
  if (!std::isfinite(J)) field_error("model.J", "must be finite");
  if (model == ModelKind::Z2Gauge && n_max < 1) field_error("model.n_max", "must be >= 1");
  const bool u1_state = initial_state != InitialStateKind::Z2ChargeDensityWave;
  if (u1_state != (model == ModelKind::U1QuantumLink)) {
    field_error("initial_state", to_string(initial_state) + " does not match model " + to_string(model));
  }
  if (!(V >= 0.0)) field_error("protection.V", "must be >= 0");
  if (static_cast<int>(sequence.size()) != L) {
    field_error("protection.sequence", "needs " + std::to_string(L) + " coefficients, got " +
                                           std::to_string(sequence.size()));
  }
  if (generator_kind == GeneratorKind::Pseudo && model != ModelKind::Z2Gauge) {
    field_error("protection.generator_kind", "pseudo generators exist for the Z2 model only");
  }
  wrap("noise", [&] {
    noise.validate();
    return 0;
  });
  if (couplings != "default") field_error("couplings", "only the 'default' preset is available");
  if (!(secular_cutoff >= 0.0)) field_error("secular_cutoff", "must be >= 0");
  if (!(integrator.rtol > 0.0)) field_error("integrator.rtol", "must be positive");
  if (!(integrator.atol > 0.0)) field_error("integrator.atol", "must be positive");
  if (!(integrator.max_step >= 0.0)) field_error("integrator.max_step", "must be >= 0");
  if (time_grid.explicit_times.empty()) {
    if (!(time_grid.t_max > 0.0)) field_error("time_grid.t_max", "must be positive (empty time grid)");
    if (time_grid.samples_per_decade < 1) field_error("time_grid.samples_per_decade", "must be >= 1");
    if (!(time_grid.t_min > 0.0)) field_error("time_grid.t_min", "must be positive");
  } else {
    const auto& ts = time_grid.explicit_times;
    if (ts.front() != 0.0) field_error("time_grid.times", "must start at 0");
    for (std::size_t i = 1; i < ts.size(); ++i) {
      if (!(ts[i] > ts[i - 1])) field_error("time_grid.times", "must be strictly increasing");
    }
    if (ts.size() < 2) field_error("time_grid.times", "needs at least one time after 0");
  }
  if (!(validity_threshold > 0.0)) field_error("validity_threshold", "must be positive");
  if (!(t_fix > 0.0)) field_error("t_fix", "must be positive");
  if (stem.empty() || stem.find('/') != std::string::npos) field_error("outputs.stem", "must be a plain file name");
}

RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  Reader root(doc, "");
  const int version = root.integer("schema_version");
  if (version != kConfigSchemaVersion) {
    field_error("schema_version", "unsupported version " + std::to_string(version));
  }

  {
    Reader m(root.at("model"), "model");
    c.model = wrap("model.kind", [&] {
      const auto k = m.string("kind");
      if (k == "u1_qlm") return ModelKind::U1QuantumLink;
      if (k == "z2_lgt") return ModelKind::Z2Gauge;
      throw ValidationError("unknown model '" + k + "'");
    });
    c.L = m.integer("L");
    c.J = m.number("J", 1.0);
    if (c.model == ModelKind::U1QuantumLink) {
      c.mu = m.number("mu");
    } else {
      c.h = m.number("h");
      c.n_max = m.integer("n_max", 1);
    }
    m.finish();
  }
  c.initial_state = wrap("initial_state", [&] { return parse_initial_state_kind(root.string("initial_state")); });

  {
    Reader p(root.at("protection"), "protection");
    c.V = p.number("V", 0.0);
    c.generator_kind = wrap("protection.generator_kind",
                            [&] { return parse_generator_kind(p.string("generator_kind", "full")); });
    const json& seq = p.at("sequence");
    if (seq.is_string()) {
      c.sequence_preset = seq.get<std::string>();
      c.sequence = wrap("protection.sequence", [&] { return sequence_preset(c.sequence_preset, c.L); });
    } else {
      c.sequence = parse_sequence(seq, "protection.sequence");
      if (p.has("preset")) {
        c.sequence_preset = p.string("preset");
        const auto expected = wrap("protection.preset", [&] { return sequence_preset(c.sequence_preset, c.L); });
        if (expected != c.sequence) field_error("protection.preset", "does not match the listed sequence");
      }
    }
    p.finish();
  }

  {
    Reader n(root.at("noise"), "noise");
    c.noise.gamma = n.number("gamma");
    c.noise.beta = n.number("beta");
    c.noise.zero_freq_mode =
        wrap("noise.zero_freq_mode", [&] { return parse_zero_frequency_mode(n.string("zero_freq_mode", "zero")); });
    c.noise.omega_min = n.number("omega_min", 0.01);
    n.finish();
  }
  c.couplings = root.string("couplings", "default");
  c.secular_cutoff = root.number("secular_cutoff", kDefaultSecularCutoff);

  if (root.has("integrator")) {
    Reader i(root.at("integrator"), "integrator");
    c.integrator.method =
        wrap("integrator.method", [&] { return parse_integrator_method(i.string("method", "rk45")); });
    c.integrator.rtol = i.number("rtol", 1e-8);
    c.integrator.atol = i.number("atol", 1e-10);
    c.integrator.max_step = i.number("max_step", 0.0);
    i.finish();
  }
  {
    Reader t(root.at("time_grid"), "time_grid");
    if (t.has("times")) {
      const json& ts = t.at("times");
      if (!ts.is_array() || ts.empty()) field_error("time_grid.times", "expected a nonempty list of times");
      for (const auto& v : ts) {
        if (!v.is_number()) field_error("time_grid.times", "expected numbers");
        c.time_grid.explicit_times.push_back(v.get<double>());
      }
    } else {
      c.time_grid.t_max = t.number("t_max");
      c.time_grid.samples_per_decade = t.integer("samples_per_decade", 200);
      c.time_grid.t_min = t.number("t_min", 1e-2);
    }
    t.finish();
  }
  c.sample_min_eigenvalue = root.boolean("sample_min_eigenvalue", true);
  c.validity_threshold = root.number("validity_threshold", 0.1);
  c.t_fix = root.number("t_fix", 2.0);
  if (root.has("outputs")) {
    Reader o(root.at("outputs"), "outputs");
    c.out_dir = o.string("dir", "out");
    c.stem = o.string("stem", "run");
    o.finish();
  }
  root.finish();
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

json to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = kConfigSchemaVersion;
  json model{{"kind", to_string(c.model)}, {"L", c.L}, {"J", c.J}};
  if (c.model == ModelKind::U1QuantumLink) {
    model["mu"] = c.mu;
  } else {
    model["h"] = c.h;
    model["n_max"] = c.n_max;
  }
  j["model"] = model;
  j["initial_state"] = to_string(c.initial_state);
  json seq = json::array();
  for (const auto& r : c.sequence) seq.push_back({r.numerator(), r.denominator()});
  j["protection"] = {{"V", c.V}, {"generator_kind", to_string(c.generator_kind)}, {"sequence", seq}};
  if (!c.sequence_preset.empty()) j["protection"]["preset"] = c.sequence_preset;
  j["noise"] = {{"gamma", c.noise.gamma},
                {"beta", c.noise.beta},
                {"zero_freq_mode", to_string(c.noise.zero_freq_mode)},
                {"omega_min", c.noise.omega_min}};
  j["couplings"] = c.couplings;
  j["secular_cutoff"] = c.secular_cutoff;
  j["integrator"] = {{"method", to_string(c.integrator.method)},
                     {"rtol", c.integrator.rtol},
                     {"atol", c.integrator.atol},
                     {"max_step", c.integrator.max_step}};
  if (c.time_grid.explicit_times.empty()) {
    j["time_grid"] = {{"t_max", c.time_grid.t_max},
                      {"samples_per_decade", c.time_grid.samples_per_decade},
                      {"t_min", c.time_grid.t_min}};
  } else {
    j["time_grid"] = {{"times", c.time_grid.explicit_times}};
  }
  j["sample_min_eigenvalue"] = c.sample_min_eigenvalue;
  j["validity_threshold"] = c.validity_threshold;
  j["t_fix"] = c.t_fix;
  j["outputs"] = {{"dir", c.out_dir}, {"stem", c.stem}};
  return j;
}

std::string serialize_run_config(const RunConfig& c) { return to_json(c).dump(2) + "\n"; }

}  // namespace gaugenoise
