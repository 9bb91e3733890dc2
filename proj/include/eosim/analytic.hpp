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

// Closed-form results of the ideal dispersive model. These serve as oracles
// for the master-equation simulation and back the `ideal` CLI subcommands.

#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace eosim::analytic {

using Complex = std::complex<double>;

// theta = g^2 t / delta.
double effective_phase(double g, double delta, double t);

// (1/2) sin^2(theta/2).
double ideal_success_probability(double theta);

struct InterferometerBranch {
  std::string label;  // "00", "01", "10", "11" (atom_L atom_R)
  Complex l_prime;    // amplitude on a_L'^dagger |vac>
  Complex r_prime;    // amplitude on a_R'^dagger |vac>
};

// Amplitudes after the second splitter for atom amplitudes
// (a00, a01, a10, a11):
//   00 -> (e^{i theta} a00, 0)
//   01 -> e^{i theta/2} a01 (cos(theta/2),  i sin(theta/2))
//   10 -> e^{i theta/2} a10 (cos(theta/2), -i sin(theta/2))
//   11 -> (a11, 0)
// Branch global phases are a convention; only magnitudes and the relative
// phase between branches that share a port are physical.
std::vector<InterferometerBranch> ideal_interferometer_state(
    double theta, const std::array<Complex, 4>& atom_amplitudes);

// Dispersive-limit, dephasing-free total herald probability:
//   int_0^inf 2 Gamma e^{-2 Gamma t} (1/2) sin^2(phi t / 2) dt
//     = (1/4) phi^2 / (4 Gamma^2 + phi^2),   phi = g^2 / delta.
double analytic_success_dispersive(double delta, double gamma_cav, double g);

struct CoherentLeadingOrder {
  double fidelity;
  double probability;
  // |alpha|^2 above 0.3: the expansion is being used outside its range.
  bool beyond_weak_limit;
};

// F = 1 - |alpha|^2 sin^2(theta/2) / 2,  P = |alpha|^2 sin^2(theta/2) / 2.
CoherentLeadingOrder coherent_leading_order(double alpha, double theta);

struct SourceSpec {
  std::map<int, double> probabilities;  // photon number m -> P_m

  void validate() const;
};

// 1 - sum_{m >= 2} P_m.
double source_fidelity_bound(const SourceSpec& source);

}  // namespace eosim::analytic
