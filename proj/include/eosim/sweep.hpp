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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eosim/protocol.hpp"

namespace eosim {

// Grid over detuning and normalized cavity decay
// gamma_norm = Gamma / (g^2 / (pi delta)).
struct SweepSpec {
  std::vector<double> deltas{15.0, 20.0, 25.0, 30.0};
  std::vector<double> gamma_norm_grid{0.25, 0.5,  0.75, 1.0,  1.25, 1.5,
                                      1.75, 2.0,  2.25, 2.5,  2.75, 3.0};
  double g = 1.0;
  double lambda_deph = 1.0;
  InputKind input_kind = InputKind::single_photon;
  double alpha = 0.0;
  std::optional<int> n_max;  // coherent input: minimal_fock_cutoff(alpha) if unset
  InitialAtoms initial_atoms = InitialAtoms::plus_plus;
  Vector custom_atoms;
  std::optional<double> dt;
  std::optional<double> t_max;
  int workers = 1;

  // Throws ConfigError on empty grids or non-positive grid values.
  void validate() const;
};

struct SweepRow {
  double delta = 0.0;
  double gamma_norm = 0.0;
  double f_average = 0.0;
  double p_total = 0.0;
  bool ok = false;
  std::string error;  // set iff !ok
};

// Model parameters of one grid point.
ModelParams sweep_point_params(const SweepSpec& spec, double delta, double gamma_norm);

// One run_protocol per grid point, `spec.workers` at a time. Rows come back
// sorted by delta, then gamma_norm, whatever the completion order. A point
// that throws is reported in its row and does not stop the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// EOSIM_WORKERS if set and positive, otherwise the hardware concurrency.
int default_worker_count();

}  // namespace eosim
