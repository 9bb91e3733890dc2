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

// Configuration files and output formats.
//
// Config files are UTF-8 `key = value` lines with `#` comments. A run
// summary JSON is also accepted as a config file, so a summary can be fed
// back to reproduce itself. Parsing produces raw Settings; flags are merged
// on top of file settings before they are resolved into typed configs.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eosim/protocol.hpp"
#include "eosim/sweep.hpp"

namespace eosim {

using Settings = std::map<std::string, std::string>;

// Parses `key = value` text. Throws ConfigError naming the offending line.
Settings parse_settings(const std::string& text);
// Dispatches on content: a leading '{' is read as a summary/config JSON.
Settings load_settings_file(const std::filesystem::path& path);
// Flat JSON object to settings; arrays become comma-separated lists and
// result-only keys (f_average, p_total, ...) are dropped.
Settings settings_from_json(const std::string& text);

// Later entries win.
Settings merge_settings(const Settings& base, const Settings& overrides);

// "pi", "pi/2", "-pi/4", "2pi" or a plain number.
double parse_angle(const std::string& text);
double parse_number(const std::string& key, const std::string& text);
// Comma-separated numbers, or an inclusive range start:stop:step.
std::vector<double> parse_number_list(const std::string& key, const std::string& text);

struct RunConfig {
  ModelParams params;
  std::optional<double> dt;
  std::optional<double> t_max;
  std::filesystem::path output_dir = ".";
  bool emit_trajectory = false;
  int worker_count = 1;
};

// Unset keys take the reference defaults: delta = 20, gamma_norm = 1,
// lambda_deph = 0.1, single photon, atoms in |+>|+>. Throws ConfigError.
RunConfig resolve_run_config(const Settings& settings);

struct SweepConfig {
  SweepSpec spec;
  std::filesystem::path output = "sweep.csv";
};

// Unset keys take the default decay-rate grid. Throws ConfigError.
SweepConfig resolve_sweep_config(const Settings& settings);

// Flat, fixed field order; doubles round-trip exactly.
std::string summary_json(const RunSummary& summary);
// Header `t,pc,fidelity,trace`, 9 significant digits, LF endings.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
// Header `delta,gamma_norm,f_average,p_total,status`.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace eosim
