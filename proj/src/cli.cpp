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

#include "eosim/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "eosim/analytic.hpp"
#include "eosim/errors.hpp"

namespace eosim::cli {

namespace {

// CLI flag -> settings key, for flags that take a value.
struct FlagBinding {
  const char* flag;
  const char* key;
  const char* help;
};

const FlagBinding kRunFlags[] = {
    {"--delta", "delta", "detuning in units of g (default 20)"},
    {"--gamma", "gamma_cav", "cavity amplitude decay rate in units of g"},
    {"--gamma-norm", "gamma_norm", "decay rate in units of g^2/(pi delta) (default 1)"},
    {"--lambda", "lambda_deph", "excited-state dephasing rate in units of g (default 0.1)"},
    {"--input", "input_kind", "single_photon | coherent"},
    {"--alpha", "alpha", "coherent amplitude before the first splitter"},
    {"--n-max", "n_max", "Fock cutoff per mode"},
    {"--initial-atoms", "initial_atoms", "plus_plus | s00 | s11 | s01 | s10 | custom"},
    {"--custom-atoms", "custom_atoms", "9 comma-separated real amplitudes"},
    {"--dt", "dt", "RK4 step (default 0.02/max rate)"},
    {"--t-max", "t_max", "integration horizon (default 8/(2 Gamma))"},
    {"--output-dir", "output_dir", "directory for summary.json and trajectory.csv"},
    {"--workers", "worker_count", "worker count"},
};

const FlagBinding kSweepFlags[] = {
    {"--output", "output", "sweep CSV path"},
    {"--workers", "workers", "parallel grid points"},
    {"--deltas", "deltas", "detunings, comma list or start:stop:step"},
    {"--gamma-norm-grid", "gamma_norm_grid", "normalized decay rates"},
    {"--lambda", "lambda_deph", "dephasing rate"},
};

template <std::size_t N>
void bind_flags(CLI::App* app, const FlagBinding (&flags)[N],
                std::map<std::string, CLI::Option*>& handles,
                std::map<std::string, std::string>& storage) {
  for (const auto& f : flags) handles[f.key] = app->add_option(f.flag, storage[f.key], f.help);
}

Settings collect(const std::map<std::string, CLI::Option*>& handles,
                 const std::map<std::string, std::string>& storage) {
  Settings out;
  for (const auto& [key, opt] : handles)
    if (opt->count() > 0) out[key] = storage.at(key);
  return out;
}

std::string format_value(double v) { return fmt::format("{:.10g}", v); }

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!dir.empty()) std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const IntegrationError& e) {
    err << "error: integration failed: " << e.what() << "\n";
    return kExitIntegrationFailure;
  } catch (const NumericalHealthError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIntegrationFailure;
  } catch (const ConditionalStateError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIntegrationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
}

}  // namespace

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ensure_directory(config.output_dir);
    std::ofstream summary_file = open_output(config.output_dir / "summary.json");
    std::ofstream trajectory_file;
    if (config.emit_trajectory) trajectory_file = open_output(config.output_dir / "trajectory.csv");

    RunOptions options;
    options.dt = config.dt;
    options.t_max = config.t_max;
    options.record_trajectory = config.emit_trajectory;
    const ProtocolRun run = run_protocol(config.params, options);

    summary_file << summary_json(run.summary);
    if (config.emit_trajectory) write_trajectory_csv(trajectory_file, run.trajectory);
    if (!summary_file || (config.emit_trajectory && !trajectory_file))
      throw ConfigError("writing outputs to " + config.output_dir.string() + " failed");

    out << fmt::format("f_average = {:.6g}\n", run.summary.f_average);
    out << fmt::format("p_total = {:.6g}\n", run.summary.p_total);
    return kExitOk;
  });
}

int cmd_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.output.has_parent_path()) ensure_directory(config.output.parent_path());
    std::ofstream csv = open_output(config.output);
    const auto rows = run_sweep(config.spec);
    write_sweep_csv(csv, rows);
    if (!csv) throw ConfigError("writing " + config.output.string() + " failed");

    std::size_t failed = 0;
    for (const auto& r : rows) {
      if (r.ok) continue;
      ++failed;
      err << fmt::format("point delta={} gamma_norm={} failed: {}\n", r.delta, r.gamma_norm,
                         r.error);
    }
    out << fmt::format("wrote {} rows ({} failed) to {}\n", rows.size(), failed,
                       config.output.string());
    return kExitOk;
  });
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heralded two-cavity entanglement simulator",
               args.empty() ? "eosim" : args.front()};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "simulate one parameter point");
  std::string run_config_path;
  bool emit_trajectory = false;
  std::map<std::string, CLI::Option*> run_handles;
  std::map<std::string, std::string> run_storage;
  run->add_option("--config", run_config_path, "key = value file or summary JSON");
  bind_flags(run, kRunFlags, run_handles, run_storage);
  auto* trajectory_flag =
      run->add_flag("--trajectory", emit_trajectory, "also write trajectory.csv");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "scan detuning and normalized decay rate");
  std::string sweep_spec_path;
  std::map<std::string, CLI::Option*> sweep_handles;
  std::map<std::string, std::string> sweep_storage;
  sweep->add_option("spec", sweep_spec_path, "sweep settings file (default: the 4 x 12 decay-rate grid)");
  bind_flags(sweep, kSweepFlags, sweep_handles, sweep_storage);

  // ideal
  auto* ideal = app.add_subcommand("ideal", "closed-form results of the ideal model");
  ideal->require_subcommand(1);
  double g = 1.0, delta = 0.0, t = 0.0, alpha = 0.0, gamma = 0.0;
  std::string theta_text;
  std::vector<std::string> source_terms;
  auto* phase = ideal->add_subcommand("phase", "dispersive phase g^2 t / delta");
  phase->add_option("--g", g, "coupling (default 1)");
  phase->add_option("--delta", delta, "detuning")->required();
  phase->add_option("--t", t, "interaction time")->required();
  auto* success = ideal->add_subcommand("success", "ideal herald probability sin^2(theta/2)/2");
  success->add_option("--theta", theta_text, "phase (number, pi, pi/2, ...)")->required();
  auto* coherent = ideal->add_subcommand("coherent", "weak coherent state F and P, leading order");
  coherent->add_option("--alpha", alpha, "coherent amplitude")->required();
  coherent->add_option("--theta", theta_text, "phase (number, pi, pi/2, ...)")->required();
  auto* bound = ideal->add_subcommand("source-bound", "fidelity bound 1 - sum_{m>=2} P_m");
  bound->add_option("--p", source_terms, "m:P_m, repeatable")->required();
  auto* dispersive =
      ideal->add_subcommand("dispersive", "dispersive-limit total herald probability");
  dispersive->add_option("--g", g, "coupling (default 1)");
  dispersive->add_option("--delta", delta, "detuning")->required();
  dispersive->add_option("--gamma", gamma, "cavity decay rate")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  if (run->parsed()) {
    RunConfig config;
    const int rc = guarded(err, [&] {
      Settings settings;
      if (!run_config_path.empty()) settings = load_settings_file(run_config_path);
      Settings flags = collect(run_handles, run_storage);
      if (trajectory_flag->count() > 0) flags["emit_trajectory"] = "true";
      config = resolve_run_config(merge_settings(settings, flags));
      return kExitOk;
    });
    if (rc != kExitOk) return rc;
    return cmd_run(config, out, err);
  }

  if (sweep->parsed()) {
    SweepConfig config;
    const int rc = guarded(err, [&] {
      Settings settings;
      if (!sweep_spec_path.empty()) settings = load_settings_file(sweep_spec_path);
      config = resolve_sweep_config(merge_settings(settings, collect(sweep_handles, sweep_storage)));
      return kExitOk;
    });
    if (rc != kExitOk) return rc;
    return cmd_sweep(config, out, err);
  }

  return guarded(err, [&] {
    if (phase->parsed()) {
      out << format_value(analytic::effective_phase(g, delta, t)) << "\n";
    } else if (success->parsed()) {
      out << format_value(analytic::ideal_success_probability(parse_angle(theta_text))) << "\n";
    } else if (coherent->parsed()) {
      const auto r = analytic::coherent_leading_order(alpha, parse_angle(theta_text));
      if (r.beyond_weak_limit)
        err << "warning: |alpha|^2 > 0.3, the leading-order expansion is unreliable\n";
      out << "F=" << format_value(r.fidelity) << " P=" << format_value(r.probability) << "\n";
    } else if (bound->parsed()) {
      analytic::SourceSpec source;
      for (const auto& term : source_terms) {
        const auto colon = term.find(':');
        if (colon == std::string::npos)
          throw ConfigError("--p expects m:P_m, got '" + term + "'");
        const double m = parse_number("--p", term.substr(0, colon));
        if (m != std::floor(m) || m < 0) throw ConfigError("--p: photon number must be a count");
        source.probabilities[static_cast<int>(m)] += parse_number("--p", term.substr(colon + 1));
      }
      out << format_value(analytic::source_fidelity_bound(source)) << "\n";
    } else if (dispersive->parsed()) {
      out << format_value(analytic::analytic_success_dispersive(delta, gamma, g)) << "\n";
    }
    return kExitOk;
  });
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return main(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace eosim::cli
