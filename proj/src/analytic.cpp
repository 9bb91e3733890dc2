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

#include "eosim/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace eosim::analytic {

double effective_phase(double g, double delta, double t) {
  if (!(delta > 0.0)) throw std::invalid_argument("effective_phase: delta must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("effective_phase: t must be non-negative");
  return g * g * t / delta;
}

double ideal_success_probability(double theta) {
  const double s = std::sin(0.5 * theta);
  return 0.5 * s * s;
}

std::vector<InterferometerBranch> ideal_interferometer_state(
    double theta, const std::array<Complex, 4>& a) {
  double norm2 = 0.0;
  for (const auto& x : a) norm2 += std::norm(x);
  if (!(std::abs(norm2 - 1.0) <= 1e-10))
    throw std::invalid_argument("ideal_interferometer_state: atom amplitudes are not normalized");

  const Complex i(0.0, 1.0);
  const Complex half_phase = std::exp(0.5 * i * theta);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  return {
      {"00", std::exp(i * theta) * a[0], 0.0},
      {"01", half_phase * a[1] * c, half_phase * a[1] * i * s},
      {"10", half_phase * a[2] * c, -half_phase * a[2] * i * s},
      {"11", a[3], 0.0},
  };
}

double analytic_success_dispersive(double delta, double gamma_cav, double g) {
  if (!(delta > 0.0) || !(g > 0.0) || !(gamma_cav >= 0.0))
    throw std::invalid_argument("analytic_success_dispersive: rates must be positive");
  if (std::isinf(gamma_cav)) return 0.0;
  const double phi = g * g / delta;
  return 0.25 * phi * phi / (4.0 * gamma_cav * gamma_cav + phi * phi);
}

CoherentLeadingOrder coherent_leading_order(double alpha, double theta) {
  const double mean = alpha * alpha;
  const double s = std::sin(0.5 * theta);
  const double p = 0.5 * mean * s * s;
  return {1.0 - p, p, mean > 0.3};
}

void SourceSpec::validate() const {
  double total = 0.0;
  for (const auto& [m, p] : probabilities) {
    if (m < 0) throw std::invalid_argument("SourceSpec: photon number must be non-negative");
    if (!(p >= 0.0)) throw std::invalid_argument("SourceSpec: probabilities must be non-negative");
    total += p;
  }
  if (!(total <= 1.0 + 1e-12))
    throw std::invalid_argument("SourceSpec: probabilities sum to more than one");
}

double source_fidelity_bound(const SourceSpec& source) {
  source.validate();
  double multi = 0.0;
  for (const auto& [m, p] : source.probabilities)
    if (m >= 2) multi += p;
  return 1.0 - multi;
}

}  // namespace eosim::analytic
