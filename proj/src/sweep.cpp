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

#include "eosim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "eosim/errors.hpp"

namespace eosim {

void SweepSpec::validate() const {
  if (deltas.empty()) throw ConfigError("sweep: detuning grid is empty");
  if (gamma_norm_grid.empty()) throw ConfigError("sweep: gamma_norm grid is empty");
  for (double d : deltas)
    if (!(d > 0.0)) throw ConfigError("sweep: detunings must be positive");
  for (double gn : gamma_norm_grid)
    if (!(gn > 0.0)) throw ConfigError("sweep: gamma_norm values must be positive");
  if (workers < 1) throw ConfigError("sweep: worker count must be at least 1");
}

ModelParams sweep_point_params(const SweepSpec& spec, double delta, double gamma_norm) {
  ModelParams p;
  p.g = spec.g;
  p.delta = delta;
  p.gamma_cav = ModelParams::gamma_from_normalized(gamma_norm, spec.g, delta);
  p.lambda_deph = spec.lambda_deph;
  p.input_kind = spec.input_kind;
  p.alpha = spec.alpha;
  p.initial_atoms = spec.initial_atoms;
  p.custom_atoms = spec.custom_atoms;
  if (spec.input_kind == InputKind::single_photon)
    p.n_max = 1;
  else
    p.n_max = spec.n_max.value_or(minimal_fock_cutoff(spec.alpha));
  return p;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();

  std::vector<double> deltas = spec.deltas;
  std::vector<double> gammas = spec.gamma_norm_grid;
  std::sort(deltas.begin(), deltas.end());
  std::sort(gammas.begin(), gammas.end());

  std::vector<SweepRow> rows;
  rows.reserve(deltas.size() * gammas.size());
  for (double d : deltas)
    for (double gn : gammas) rows.push_back(SweepRow{d, gn, 0.0, 0.0, false, {}});

  RunOptions options;
  options.dt = spec.dt;
  options.t_max = spec.t_max;
  options.record_trajectory = false;

  // Each worker claims the next unclaimed row; rows are owned by exactly one
  // worker so no further synchronization is needed.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      try {
        const ProtocolRun run =
            run_protocol(sweep_point_params(spec, row.delta, row.gamma_norm), options);
        row.f_average = run.summary.f_average;
        row.p_total = run.summary.p_total;
        row.ok = true;
      } catch (const std::exception& e) {
        row.f_average = std::nan("");
        row.p_total = std::nan("");
        row.error = e.what();
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(spec.workers), rows.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

int default_worker_count() {
  if (const char* env = std::getenv("EOSIM_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace eosim
