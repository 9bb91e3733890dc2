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

#include "eosim/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/core.h>

#include "eosim/errors.hpp"

namespace eosim {

namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Tr[A rho] for sparse A.
double real_trace_product(const SparseMatrix& a, const Matrix& rho) {
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < a.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(a, i); it; ++it) acc += it.value() * rho(it.col(), i);
  return acc.real();
}

Vector two_atom_ket(int left, int right) {
  Vector v = Vector::Zero(kAtomDim * kAtomDim);
  v(left * kAtomDim + right) = 1.0;
  return v;
}

Vector coherent_amplitudes(double beta, int n_max) {
  Vector c(n_max + 1);
  double term = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    c(n) = term;
    term *= beta / std::sqrt(static_cast<double>(n + 1));
  }
  return c / c.norm();
}

void require_modes(const SpaceDescriptor& space, const char* who) {
  const bool canonical = space.num_factors() == 4 &&
                         space.factor(kModeL).kind == FactorKind::mode &&
                         space.factor(kModeL).local_dim >= 2 &&
                         space == SpaceDescriptor::full(space.factor(kModeL).local_dim - 1);
  if (!canonical) throw DimensionError(std::string(who) + ": expected the two-atom, two-mode space");
}

// Per-step observables of the conditional state, precomputed as sparse
// operators so that each sample is a single trace.
class ClickObservables {
 public:
  ClickObservables(const SpaceDescriptor& space, const BellTargets& target) {
    const Matrix jump = detector_jump_operator(space).data();
    const Matrix other = failure_port_operator(space).data();
    click_ = Matrix(jump.adjoint() * jump).sparseView();
    other_ = Matrix(other.adjoint() * other).sparseView();

    // a^dagger (|psi-><psi-| (x) I_photons) a, so that
    // Tr[this rho] = <psi-| Tr_photons[a rho a^dagger] |psi->.
    const Eigen::Index photon_dim = space.total_dim() / (kAtomDim * kAtomDim);
    const Matrix target_projector =
        kron(target.psi_minus * target.psi_minus.adjoint(),
             Matrix::Identity(photon_dim, photon_dim));
    fidelity_numerator_ = Matrix(jump.adjoint() * target_projector * jump).sparseView();
    // Anything with a photon or an excited atom can still leak out later.
    excitation_mask_ = Eigen::VectorXd::Zero(space.total_dim());
    for (Eigen::Index i = 0; i < space.total_dim(); ++i) {
      const auto loc = space.local_indices(i);
      const bool excited = loc[kAtomL] == kExcited || loc[kAtomR] == kExcited ||
                           loc[kModeL] > 0 || loc[kModeR] > 0;
      excitation_mask_(i) = excited ? 1.0 : 0.0;
    }
  }

  double click_weight(const Matrix& rho) const { return real_trace_product(click_, rho); }
  double other_weight(const Matrix& rho) const { return real_trace_product(other_, rho); }
  double fidelity_weight(const Matrix& rho) const {
    return real_trace_product(fidelity_numerator_, rho);
  }
  double excited_population(const Matrix& rho) const {
    return excitation_mask_.dot(rho.diagonal().real());
  }

 private:
  SparseMatrix click_;
  SparseMatrix other_;
  SparseMatrix fidelity_numerator_;
  Eigen::VectorXd excitation_mask_;
};

double checked_click_density(double weight, double gamma_cav) {
  const double pc = 2.0 * gamma_cav * weight;
  if (!(pc >= kClickDensityFloor))
    throw NumericalHealthError(fmt::format("click density {:.3g} is negative", pc));
  return pc;
}

}  // namespace

BellTargets BellTargets::standard() {
  BellTargets t;
  t.psi_minus = kInvSqrt2 * (two_atom_ket(kGround0, kGround1) - two_atom_ket(kGround1, kGround0));
  t.psi_plus = kInvSqrt2 * (two_atom_ket(kGround0, kGround1) + two_atom_ket(kGround1, kGround0));
  return t;
}

Vector initial_atom_amplitudes(const ModelParams& params) {
  switch (params.initial_atoms) {
    case InitialAtoms::plus_plus: {
      Vector plus = Vector::Zero(kAtomDim);
      plus(kGround0) = kInvSqrt2;
      plus(kGround1) = kInvSqrt2;
      return kron(plus, plus);
    }
    case InitialAtoms::s00: return two_atom_ket(kGround0, kGround0);
    case InitialAtoms::s11: return two_atom_ket(kGround1, kGround1);
    case InitialAtoms::s01: return two_atom_ket(kGround0, kGround1);
    case InitialAtoms::s10: return two_atom_ket(kGround1, kGround0);
    case InitialAtoms::custom: {
      if (params.custom_atoms.size() != kAtomDim * kAtomDim || !(params.custom_atoms.norm() > 0.0))
        throw ConfigError("custom initial atom state needs 9 amplitudes with nonzero norm");
      return params.custom_atoms / params.custom_atoms.norm();
    }
  }
  throw ConfigError("unknown initial atom state");
}

DensityMatrix prepare_initial_state(const ModelParams& params, const SpaceDescriptor& space) {
  params.validate();
  if (!(space == params.space()))
    throw DimensionError("prepare_initial_state: space does not match n_max");
  const int n_max = params.n_max;
  const int mode_dim = n_max + 1;

  Vector photons = Vector::Zero(mode_dim * mode_dim);
  if (params.input_kind == InputKind::single_photon) {
    // (a_L^dagger + a_R^dagger)/sqrt(2) |vac>
    photons(1 * mode_dim + 0) = kInvSqrt2;
    photons(0 * mode_dim + 1) = kInvSqrt2;
  } else {
    const Vector c = coherent_amplitudes(params.alpha * kInvSqrt2, n_max);
    photons = kron(c, c);
  }
  return DensityMatrix::pure(space, kron(initial_atom_amplitudes(params), photons));
}

Operator detector_jump_operator(const SpaceDescriptor& space) {
  require_modes(space, "detector_jump_operator");
  const Matrix a = annihilator(space.factor(kModeL).local_dim - 1);
  return kInvSqrt2 * (embed(a, kModeL, space) - embed(a, kModeR, space));
}

Operator failure_port_operator(const SpaceDescriptor& space) {
  require_modes(space, "failure_port_operator");
  const Matrix a = annihilator(space.factor(kModeL).local_dim - 1);
  return kInvSqrt2 * (embed(a, kModeL, space) + embed(a, kModeR, space));
}

double click_density(const DensityMatrix& rho, double gamma_cav) {
  const Operator jump = detector_jump_operator(rho.space());
  const double weight = rho.expectation(jump.adjoint() * jump).real();
  return checked_click_density(weight, gamma_cav);
}

DensityMatrix post_click_atom_state(const DensityMatrix& rho) {
  const Matrix jump = detector_jump_operator(rho.space()).data();
  const Matrix projected = jump * rho.data() * jump.adjoint();
  const double weight = projected.trace().real();
  if (!(weight > kMinClickWeight))
    throw ConditionalStateError(
        fmt::format("post-click state undefined: click weight {:.3g} is zero", weight));
  const std::array<int, 2> atoms = {kAtomL, kAtomR};
  const DensityMatrix reduced = partial_trace(DensityMatrix(rho.space(), projected), atoms);
  return DensityMatrix(reduced.space(), reduced.data() / weight);
}

double fidelity_vs_target(const DensityMatrix& rho_atoms, const BellTargets& target) {
  if (!(rho_atoms.space() == SpaceDescriptor::two_atoms()))
    throw std::invalid_argument("fidelity_vs_target: expected a two-atom state");
  if (!(std::abs(rho_atoms.trace() - 1.0) <= 1e-8))
    throw std::invalid_argument(
        fmt::format("fidelity_vs_target: state has trace {:.12g}, expected 1", rho_atoms.trace()));
  return target.psi_minus.dot(rho_atoms.data() * target.psi_minus).real();
}

ProtocolRun run_protocol(const ModelParams& params, const RunOptions& options) {
  params.validate();
  const SpaceDescriptor space = params.space();
  const DensityMatrix rho0 = prepare_initial_state(params, space);
  const ClickObservables obs(space, BellTargets::standard());

  const double t_max = options.t_max.value_or(default_t_max(params));
  const double dt_requested = options.dt.value_or(default_dt(params));
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
  if (!(dt_requested > 0.0)) throw ConfigError("dt must be positive");

  ProtocolRun run;
  Trajectory& traj = run.trajectory;

  // Trapezoidal accumulators on the (uniform) integrator grid.
  double prev_t = 0.0, prev_pc = 0.0, prev_fpc = 0.0, prev_other = 0.0;
  double p_total = 0.0, f_weighted = 0.0, p_other = 0.0;

  auto observe = [&](long step, double t, const Matrix& rho) {
    const double weight = obs.click_weight(rho);
    const double pc = checked_click_density(weight, params.gamma_cav);
    double fidelity = 0.0;
    if (weight > kMinClickWeight)
      fidelity = std::clamp(obs.fidelity_weight(rho) / weight, 0.0, 1.0);
    const double other = 2.0 * params.gamma_cav * obs.other_weight(rho);

    if (step > 0) {
      const double h = t - prev_t;
      p_total += 0.5 * h * (prev_pc + pc);
      f_weighted += 0.5 * h * (prev_fpc + pc * fidelity);
      p_other += 0.5 * h * (prev_other + other);
    }
    prev_t = t;
    prev_pc = pc;
    prev_fpc = pc * fidelity;
    prev_other = other;

    if (options.record_trajectory) {
      traj.times.push_back(t);
      traj.pc.push_back(pc);
      traj.fidelity.push_back(fidelity);
      traj.trace.push_back(rho.trace().real());
    }
  };

  if (options.record_trajectory) {
    const auto expected = static_cast<std::size_t>(std::ceil(t_max / dt_requested)) + 1;
    traj.times.reserve(expected);
    traj.pc.reserve(expected);
    traj.fidelity.reserve(expected);
    traj.trace.reserve(expected);
  }

  const EvolveResult result = evolve(rho0, params, t_max, dt_requested, observe);
  traj.steps_accepted = result.steps_accepted;
  traj.max_hermiticity_drift = result.max_hermiticity_drift;

  RunSummary& s = run.summary;
  s.params = params;
  s.p_total = std::clamp(p_total, 0.0, 1.0);
  s.f_average = p_total > 0.0 ? std::clamp(f_weighted / p_total, 0.0, 1.0) : 0.0;
  s.t_max = t_max;
  s.dt = result.dt;
  s.truncated_tail_bound = obs.excited_population(result.final_state.data());
  s.max_hermiticity_drift = result.max_hermiticity_drift;
  s.steps = result.steps_accepted;
  s.p_other_port = p_other;
  s.final_trace = result.final_state.trace();
  return run;
}

}  // namespace eosim
