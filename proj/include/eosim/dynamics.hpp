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

// No-click (conditional) evolution of two dispersively coupled atom-cavity
// nodes:
//
//   d rho/dt = -i (H rho - rho H^dagger) - lambda sum_j [P_e^j, [P_e^j, rho]]
//
// with the Jaynes-Cummings Hamiltonian in the frame rotating at the cavity
// frequency and the cavity leakage folded into H as -i Gamma (n_L + n_R).
// All rates are in units of the atom-cavity coupling g.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "eosim/hilbert.hpp"

namespace eosim {

enum class InputKind { single_photon, coherent };

enum class InitialAtoms { plus_plus, s00, s11, s01, s10, custom };

std::string to_string(InputKind kind);
std::string to_string(InitialAtoms atoms);
// Throw ConfigError on unknown names.
InputKind parse_input_kind(const std::string& name);
InitialAtoms parse_initial_atoms(const std::string& name);

// Poisson tail mass beyond the cutoff allowed per mode for coherent input.
inline constexpr double kFockTailTolerance = 1e-8;

struct ModelParams {
  double g = 1.0;
  double delta = 20.0;
  double gamma_cav = 1.0 / (3.14159265358979323846 * 20.0);
  double lambda_deph = 0.1;
  int n_max = 1;
  InputKind input_kind = InputKind::single_photon;
  double alpha = 0.0;  // coherent amplitude before the first splitter
  InitialAtoms initial_atoms = InitialAtoms::plus_plus;
  Vector custom_atoms;  // 9 amplitudes, used iff initial_atoms == custom

  // Throws ConfigError when the parameters cannot be simulated.
  void validate() const;

  SpaceDescriptor space() const { return SpaceDescriptor::full(n_max); }

  // Gamma = gamma_norm * g^2 / (pi * delta); gamma_norm = 1 puts one cavity
  // lifetime at a dispersive phase of pi.
  static double gamma_from_normalized(double gamma_norm, double g, double delta);
  double normalized_gamma() const;
};

// Probability that a Poisson variable of the given mean exceeds n_max.
double poisson_tail(double mean, int n_max);

// Smallest n_max >= 1 whose per-mode Poisson tail (mean |alpha|^2 / 2) is
// below kFockTailTolerance.
int minimal_fock_cutoff(double alpha);

// 50 steps per period of the fastest rate in the rotating frame.
double default_dt(const ModelParams& params);
// Eight intensity lifetimes, 8 / (2 Gamma).
double default_t_max(const ModelParams& params);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> pc;
  std::vector<double> fidelity;
  std::vector<double> trace;
  long steps_accepted = 0;
  double max_hermiticity_drift = 0.0;
};

// H = sum_j [ delta |e><e|_j + g (sigma+_j a_j + sigma-_j a_j^dagger) ]
//     - i Gamma (a_L^dagger a_L + a_R^dagger a_R)
Operator build_hamiltonian(const ModelParams& params, const SpaceDescriptor& space);

// Dense reference implementation of the master-equation right-hand side.
// H is taken as given (non-Hermitian), the |e><e| projectors come from the
// atom factors of H's space.
Matrix lindblad_rhs(const DensityMatrix& rho, const Operator& H, double lambda_deph);
Matrix lindblad_rhs(const Matrix& rho, const Operator& H, double lambda_deph);

// Precomputed generator used by the integrator. Applies the same map as
// lindblad_rhs using a sparse copy of H and the fact that the dephasing
// double commutator is diagonal in the product basis:
//   [P, [P, rho]]_ik = (p_i - p_k)^2 rho_ik.
class ConditionalGenerator {
 public:
  ConditionalGenerator(const Operator& H, double lambda_deph);

  // The same generator on the span of the listed basis states. Exact when
  // that span is invariant, e.g. a union of excitation-number sectors.
  ConditionalGenerator restricted(const std::vector<Eigen::Index>& indices) const;

  void apply(const Matrix& rho, Matrix& out) const;
  Eigen::Index dim() const noexcept { return h_.rows(); }

 private:
  ConditionalGenerator() = default;

  Eigen::SparseMatrix<Complex, Eigen::RowMajor> h_;
  Eigen::SparseMatrix<Complex, Eigen::RowMajor> h_adjoint_;
  Matrix dephasing_weight_;
  bool has_dephasing_ = false;
};

// Photons in both modes plus excited atoms, per basis state. H and the
// dephasing term both conserve it.
std::vector<int> excitation_numbers(const SpaceDescriptor& space);

enum class SectorReduction {
  // Integrate only the excitation sectors populated by rho0. Exact.
  automatic,
  // Integrate the full space.
  none,
};

// Hard limits checked after every step.
inline constexpr double kMaxHermiticityDrift = 1e-8;
inline constexpr double kMaxTraceIncrease = 1e-9;

// Called at t = 0 and after every accepted step with the current state.
using StepObserver = std::function<void(long step, double t, const Matrix& rho)>;

struct EvolveResult {
  DensityMatrix final_state;
  long steps_accepted;
  double dt;  // step actually used
  double t_end;
  double max_hermiticity_drift;
};

// Fixed-step RK4. The requested dt is shrunk so that an integer number of
// steps lands exactly on t_end. Each step is followed by re-symmetrization;
// the pre-symmetrization drift is recorded and must stay below
// kMaxHermiticityDrift, and the trace must not grow by more than
// kMaxTraceIncrease. Violations throw IntegrationError.
//
// Observers always see the full-space matrix; entries outside the
// integrated sectors are identically zero.
EvolveResult evolve(const DensityMatrix& rho0, const ModelParams& params, double t_end, double dt,
                    const StepObserver& observe = {},
                    SectorReduction reduction = SectorReduction::automatic);

}  // namespace eosim
