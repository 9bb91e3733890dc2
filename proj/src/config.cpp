// Copyright 2026 The eosim Authors
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

#include "eosim/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

#include "eosim/errors.hpp"

namespace eosim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

const std::set<std::string> kRunKeys = {
    "g",       "delta",         "gamma_cav",  "gamma_norm", "lambda_deph",
    "n_max",   "input_kind",    "alpha",      "initial_atoms", "custom_atoms",
    "dt",      "t_max",         "output_dir", "emit_trajectory", "worker_count"};

const std::set<std::string> kSweepKeys = {
    "deltas", "gamma_norm_grid", "g",  "lambda_deph", "input_kind", "alpha", "n_max",
    "initial_atoms", "custom_atoms", "dt", "t_max", "workers", "output"};

// Keys written by summary_json that are results, not inputs.
const std::set<std::string> kResultKeys = {"f_average", "p_total", "truncated_tail_bound",
                                           "max_hermiticity_drift"};

void reject_unknown(const Settings& settings, const std::set<std::string>& known,
                    const char* what) {
  for (const auto& [key, value] : settings)
    if (!known.contains(key)) throw ConfigError(fmt::format("unknown {} key '{}'", what, key));
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_number(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, text));
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, text));
}

Vector parse_amplitudes(const std::string& key, const std::string& text) {
  const auto values = parse_number_list(key, text);
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

std::string json_scalar_to_setting(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number()) return value.dump();
  throw ConfigError("config JSON: unsupported value " + value.dump());
}

// Applies the settings shared between single runs and sweeps.
void apply_model_settings(const Settings& s, ModelParams& p) {
  if (auto it = s.find("g"); it != s.end()) p.g = parse_number("g", it->second);
  if (auto it = s.find("lambda_deph"); it != s.end())
    p.lambda_deph = parse_number("lambda_deph", it->second);
  if (auto it = s.find("input_kind"); it != s.end()) p.input_kind = parse_input_kind(it->second);
  if (auto it = s.find("alpha"); it != s.end()) p.alpha = parse_number("alpha", it->second);
  if (auto it = s.find("initial_atoms"); it != s.end())
    p.initial_atoms = parse_initial_atoms(it->second);
  if (auto it = s.find("custom_atoms"); it != s.end()) {
    p.custom_atoms = parse_amplitudes("custom_atoms", it->second);
    if (!s.contains("initial_atoms")) p.initial_atoms = InitialAtoms::custom;
  }
  if (p.input_kind == InputKind::coherent && !s.contains("alpha"))
    throw ConfigError("coherent input needs alpha");
  if (auto it = s.find("n_max"); it != s.end())
    p.n_max = parse_int("n_max", it->second);
  else
    p.n_max = p.input_kind == InputKind::coherent ? minimal_fock_cutoff(p.alpha) : 1;
}

std::optional<double> optional_number(const Settings& s, const std::string& key) {
  if (auto it = s.find(key); it != s.end()) return parse_number(key, it->second);
  return std::nullopt;
}

}  // namespace

Settings parse_settings(const std::string& text) {
  Settings out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", line_no));
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

Settings settings_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config JSON: expected a flat object");
  Settings out;
  for (const auto& [key, value] : doc.items()) {
    if (kResultKeys.contains(key)) continue;
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ",";
        joined += json_scalar_to_setting(item);
      }
      out[key] = joined;
    } else {
      out[key] = json_scalar_to_setting(value);
    }
  }
  return out;
}

Settings load_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return settings_from_json(text);
  return parse_settings(text);
}

Settings merge_settings(const Settings& base, const Settings& overrides) {
  Settings out = base;
  // The decay rate can be given absolutely or normalized; an override of one
  // form replaces the other.
  if (overrides.contains("gamma_cav")) out.erase("gamma_norm");
  if (overrides.contains("gamma_norm")) out.erase("gamma_cav");
  for (const auto& [key, value] : overrides) out[key] = value;
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, text));
  }
  if (used != t.size() || !std::isfinite(v))
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, text));
  return v;
}

double parse_angle(const std::string& text) {
  std::string t = trim(text);
  const auto pos = t.find("pi");
  if (pos == std::string::npos) return parse_number("angle", t);

  std::string coeff = trim(t.substr(0, pos));
  std::string rest = trim(t.substr(pos + 2));
  if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
  double factor = 1.0;
  if (coeff == "-")
    factor = -1.0;
  else if (!coeff.empty() && coeff != "+")
    factor = parse_number("angle", coeff);
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("angle: cannot parse '" + text + "'");
    const double divisor = parse_number("angle", rest.substr(1));
    if (divisor == 0.0) throw ConfigError("angle: division by zero in '" + text + "'");
    factor /= divisor;
  }
  return factor * std::numbers::pi;
}

std::vector<double> parse_number_list(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return {};
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3)
      throw ConfigError(fmt::format("{}: range must be start:stop:step, got '{}'", key, text));
    const double start = parse_number(key, parts[0]);
    const double stop = parse_number(key, parts[1]);
    const double step = parse_number(key, parts[2]);
    if (!(step > 0.0) || stop < start)
      throw ConfigError(fmt::format("{}: empty or invalid range '{}'", key, text));
    std::vector<double> out;
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long k = 0; k <= count; ++k) out.push_back(start + static_cast<double>(k) * step);
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split(t, ',')) out.push_back(parse_number(key, item));
  return out;
}

RunConfig resolve_run_config(const Settings& s) {
  reject_unknown(s, kRunKeys, "run");
  RunConfig cfg;
  ModelParams& p = cfg.params;
  p.delta = 20.0;
  p.lambda_deph = 0.1;
  apply_model_settings(s, p);
  if (auto it = s.find("delta"); it != s.end()) p.delta = parse_number("delta", it->second);

  if (s.contains("gamma_cav") && s.contains("gamma_norm"))
    throw ConfigError("give either gamma_cav or gamma_norm, not both");
  if (auto it = s.find("gamma_cav"); it != s.end())
    p.gamma_cav = parse_number("gamma_cav", it->second);
  else
    p.gamma_cav = ModelParams::gamma_from_normalized(
        s.contains("gamma_norm") ? parse_number("gamma_norm", s.at("gamma_norm")) : 1.0, p.g,
        p.delta);

  cfg.dt = optional_number(s, "dt");
  cfg.t_max = optional_number(s, "t_max");
  if (cfg.dt && !(*cfg.dt > 0.0)) throw ConfigError("dt must be positive");
  if (cfg.t_max && !(*cfg.t_max > 0.0)) throw ConfigError("t_max must be positive");
  if (auto it = s.find("output_dir"); it != s.end()) cfg.output_dir = it->second;
  if (auto it = s.find("emit_trajectory"); it != s.end())
    cfg.emit_trajectory = parse_bool("emit_trajectory", it->second);
  cfg.worker_count = default_worker_count();
  if (auto it = s.find("worker_count"); it != s.end())
    cfg.worker_count = parse_int("worker_count", it->second);
  if (cfg.worker_count < 1) throw ConfigError("worker_count must be at least 1");

  p.validate();
  return cfg;
}

SweepConfig resolve_sweep_config(const Settings& s) {
  reject_unknown(s, kSweepKeys, "sweep");
  SweepConfig cfg;
  SweepSpec& spec = cfg.spec;
  if (auto it = s.find("deltas"); it != s.end())
    spec.deltas = parse_number_list("deltas", it->second);
  if (auto it = s.find("gamma_norm_grid"); it != s.end())
    spec.gamma_norm_grid = parse_number_list("gamma_norm_grid", it->second);

  // Reuse the run-level parsing for the physics keys; lambda defaults to g.
  ModelParams p;
  p.lambda_deph = spec.lambda_deph;
  apply_model_settings(s, p);
  spec.g = p.g;
  spec.lambda_deph = p.lambda_deph;
  spec.input_kind = p.input_kind;
  spec.alpha = p.alpha;
  spec.initial_atoms = p.initial_atoms;
  spec.custom_atoms = p.custom_atoms;
  if (s.contains("n_max")) spec.n_max = p.n_max;

  spec.dt = optional_number(s, "dt");
  spec.t_max = optional_number(s, "t_max");
  spec.workers = default_worker_count();
  if (auto it = s.find("workers"); it != s.end()) spec.workers = parse_int("workers", it->second);
  if (auto it = s.find("output"); it != s.end()) cfg.output = it->second;

  spec.validate();
  // Surface parameter errors before any point runs.
  sweep_point_params(spec, spec.deltas.front(), spec.gamma_norm_grid.front()).validate();
  return cfg;
}

std::string summary_json(const RunSummary& summary) {
  const ModelParams& p = summary.params;
  nlohmann::ordered_json j;
  j["g"] = p.g;
  j["delta"] = p.delta;
  j["gamma_cav"] = p.gamma_cav;
  j["lambda_deph"] = p.lambda_deph;
  j["n_max"] = p.n_max;
  j["input_kind"] = to_string(p.input_kind);
  j["alpha"] = p.alpha;
  j["initial_atoms"] = to_string(p.initial_atoms);
  if (p.initial_atoms == InitialAtoms::custom) {
    auto arr = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < p.custom_atoms.size(); ++i) arr.push_back(p.custom_atoms(i).real());
    j["custom_atoms"] = arr;
  }
  j["dt"] = summary.dt;
  j["t_max"] = summary.t_max;
  j["f_average"] = summary.f_average;
  j["p_total"] = summary.p_total;
  j["truncated_tail_bound"] = summary.truncated_tail_bound;
  j["max_hermiticity_drift"] = summary.max_hermiticity_drift;
  return j.dump(2) + "\n";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
  out << "t,pc,fidelity,trace\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    out << fmt::format("{:.9g},{:.9g},{:.9g},{:.9g}\n", tr.times[i], tr.pc[i], tr.fidelity[i],
                       tr.trace[i]);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "delta,gamma_norm,f_average,p_total,status\n";
  for (const auto& r : rows)
    out << fmt::format("{:.9g},{:.9g},{:.9g},{:.9g},{}\n", r.delta, r.gamma_norm, r.f_average,
                       r.p_total, r.ok ? "ok" : "error");
}

}  // namespace eosim
