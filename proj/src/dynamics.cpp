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

#include "eosim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "eosim/errors.hpp"

namespace eosim {

std::string to_string(InputKind kind) {
  return kind == InputKind::single_photon ? "single_photon" : "coherent";
}

std::string to_string(InitialAtoms atoms) {
  switch (atoms) {
    case InitialAtoms::plus_plus: return "plus_plus";
    case InitialAtoms::s00: return "s00";
    case InitialAtoms::s11: return "s11";
    case InitialAtoms::s01: return "s01";
    case InitialAtoms::s10: return "s10";
    case InitialAtoms::custom: return "custom";
  }
  return "unknown";
}

InputKind parse_input_kind(const std::string& name) {
  if (name == "single_photon" || name == "single") return InputKind::single_photon;
  if (name == "coherent") return InputKind::coherent;
  throw ConfigError("unknown input kind '" + name + "' (expected single_photon or coherent)");
}

InitialAtoms parse_initial_atoms(const std::string& name) {
  if (name == "plus_plus") return InitialAtoms::plus_plus;
  if (name == "s00") return InitialAtoms::s00;
  if (name == "s11") return InitialAtoms::s11;
  if (name == "s01") return InitialAtoms::s01;
  if (name == "s10") return InitialAtoms::s10;
  if (name == "custom") return InitialAtoms::custom;
  throw ConfigError("unknown initial atom state '" + name +
                    "' (expected plus_plus, s00, s11, s01, s10 or custom)");
}

double ModelParams::gamma_from_normalized(double gamma_norm, double g, double delta) {
  return gamma_norm * g * g / (std::numbers::pi * delta);
}

double ModelParams::normalized_gamma() const {
  return gamma_cav * std::numbers::pi * delta / (g * g);
}

void ModelParams::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) throw ConfigError("g must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be positive");
  if (!(gamma_cav > 0.0) || !std::isfinite(gamma_cav))
    throw ConfigError("gamma_cav must be positive");
  if (!(lambda_deph >= 0.0) || !std::isfinite(lambda_deph))
    throw ConfigError("lambda_deph must be non-negative");
  if (n_max < 1) throw ConfigError("n_max must be at least 1");
  if (input_kind == InputKind::single_photon && n_max != 1)
    throw ConfigError("single-photon input uses n_max = 1");
  if (input_kind == InputKind::coherent) {
    if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
    const double tail = poisson_tail(0.5 * alpha * alpha, n_max);
    if (!(tail < kFockTailTolerance))
      throw ConfigError(fmt::format(
          "Fock truncation n_max = {} leaves tail mass {:.3g} per mode for alpha = {}; raise "
          "n_max to at least {}",
          n_max, tail, alpha, minimal_fock_cutoff(alpha)));
  }
  if (initial_atoms == InitialAtoms::custom) {
    if (custom_atoms.size() != kAtomDim * kAtomDim)
      throw ConfigError("custom initial atom state needs 9 amplitudes");
    if (!(custom_atoms.norm() > 0.0)) throw ConfigError("custom initial atom state is zero");
  }
}

double poisson_tail(double mean, int n_max) {
  if (mean <= 0.0) return 0.0;
  // Sum the terms above n_max directly; 1 - head loses everything below
  // machine epsilon.
  double term = std::exp(-mean);
  for (int k = 1; k <= n_max + 1; ++k) term *= mean / k;
  double tail = 0.0;
  for (int k = n_max + 1; term > 0.0 && k < n_max + 1000; ++k) {
    tail += term;
    if (term < tail * 1e-17) break;
    term *= mean / (k + 1);
  }
  return tail;
}

int minimal_fock_cutoff(double alpha) {
  const double mean = 0.5 * alpha * alpha;
  int n = 1;
  while (poisson_tail(mean, n) >= kFockTailTolerance) ++n;
  return n;
}

double default_dt(const ModelParams& p) {
  return 0.02 / std::max({p.delta, p.g, p.gamma_cav, p.lambda_deph});
}

double default_t_max(const ModelParams& p) { return 8.0 / (2.0 * p.gamma_cav); }

Operator build_hamiltonian(const ModelParams& params, const SpaceDescriptor& space) {
  if (!(space == SpaceDescriptor::full(params.n_max)))
    throw DimensionError(fmt::format(
        "build_hamiltonian: space of dimension {} does not match two atoms and two modes with "
        "n_max = {}",
        space.total_dim(), params.n_max));
  const auto atom = atomic_operators();
  const Matrix a = annihilator(params.n_max);
  const Matrix a_dag = a.adjoint();

  Operator h = Operator::zero(space);
  const int atoms[] = {kAtomL, kAtomR};
  const int modes[] = {kModeL, kModeR};
  for (int j = 0; j < 2; ++j) {
    const Operator pe = embed(atom.proj_e, atoms[j], space);
    const Operator sp = embed(atom.sigma_plus, atoms[j], space);
    const Operator sm = embed(atom.sigma_minus, atoms[j], space);
    const Operator aj = embed(a, modes[j], space);
    const Operator aj_dag = embed(a_dag, modes[j], space);
    h = h + params.delta * pe + params.g * (sp * aj + sm * aj_dag);
    h = h - Complex(0.0, params.gamma_cav) * (aj_dag * aj);
  }
  return h;
}

namespace {

// Diagonals of the two |e><e| projectors in the product basis of `space`.
std::vector<Eigen::VectorXd> excited_projector_diagonals(const SpaceDescriptor& space) {
  std::vector<Eigen::VectorXd> out;
  for (int f = 0; f < space.num_factors(); ++f) {
    if (space.factor(f).kind != FactorKind::atom) continue;
    Eigen::VectorXd d(space.total_dim());
    for (Eigen::Index i = 0; i < space.total_dim(); ++i)
      d(i) = space.local_indices(i)[static_cast<std::size_t>(f)] == kExcited ? 1.0 : 0.0;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

Matrix lindblad_rhs(const Matrix& rho, const Operator& H, double lambda_deph) {
  if (rho.rows() != H.data().rows() || rho.cols() != H.data().cols())
    throw std::invalid_argument("lindblad_rhs: state and Hamiltonian shapes differ");
  const Matrix& h = H.data();
  Matrix out = Complex(0.0, -1.0) * (h * rho - rho * h.adjoint());
  if (lambda_deph != 0.0) {
    const auto atom = atomic_operators();
    for (int f = 0; f < H.space().num_factors(); ++f) {
      if (H.space().factor(f).kind != FactorKind::atom) continue;
      const Matrix pe = embed(atom.proj_e, f, H.space()).data();
      const Matrix inner = pe * rho - rho * pe;
      out -= lambda_deph * (pe * inner - inner * pe);
    }
  }
  return out;
}

Matrix lindblad_rhs(const DensityMatrix& rho, const Operator& H, double lambda_deph) {
  if (!(rho.space() == H.space()))
    throw std::invalid_argument("lindblad_rhs: state and Hamiltonian live on different spaces");
  return lindblad_rhs(rho.data(), H, lambda_deph);
}

ConditionalGenerator::ConditionalGenerator(const Operator& H, double lambda_deph)
    : h_(H.data().sparseView()),
      h_adjoint_(Matrix(H.data().adjoint()).sparseView()),
      has_dephasing_(lambda_deph != 0.0) {
  const Eigen::Index dim = H.data().rows();
  dephasing_weight_ = Matrix::Zero(dim, dim);
  if (has_dephasing_) {
    for (const auto& p : excited_projector_diagonals(H.space()))
      for (Eigen::Index k = 0; k < dim; ++k)
        for (Eigen::Index i = 0; i < dim; ++i)
          dephasing_weight_(i, k) += lambda_deph * (p(i) - p(k)) * (p(i) - p(k));
  }
}

ConditionalGenerator ConditionalGenerator::restricted(
    const std::vector<Eigen::Index>& indices) const {
  const Matrix h = Matrix(h_)(indices, indices);
  const Matrix h_adj = Matrix(h_adjoint_)(indices, indices);
  ConditionalGenerator out;
  out.h_ = h.sparseView();
  out.h_adjoint_ = h_adj.sparseView();
  out.dephasing_weight_ = dephasing_weight_(indices, indices);
  out.has_dephasing_ = has_dephasing_;
  return out;
}

void ConditionalGenerator::apply(const Matrix& rho, Matrix& out) const {
  out.noalias() = h_ * rho;
  out.noalias() -= rho * h_adjoint_;
  out *= Complex(0.0, -1.0);
  if (has_dephasing_) out -= dephasing_weight_.cwiseProduct(rho);
}

std::vector<int> excitation_numbers(const SpaceDescriptor& space) {
  std::vector<int> out(static_cast<std::size_t>(space.total_dim()));
  for (Eigen::Index i = 0; i < space.total_dim(); ++i) {
    const auto loc = space.local_indices(i);
    int n = 0;
    for (int f = 0; f < space.num_factors(); ++f) {
      const int li = loc[static_cast<std::size_t>(f)];
      n += space.factor(f).kind == FactorKind::atom ? (li == kExcited ? 1 : 0) : li;
    }
    out[static_cast<std::size_t>(i)] = n;
  }
  return out;
}

namespace {

// Basis states of every excitation sector that rho0 touches. Empty when the
// reduction would not be exact (rho0 couples a listed state to an unlisted
// one) or would not save anything.
std::vector<Eigen::Index> populated_sectors(const DensityMatrix& rho0) {
  const auto sectors = excitation_numbers(rho0.space());
  const Matrix& rho = rho0.data();
  const Eigen::Index dim = rho.rows();
  const int max_sector = *std::max_element(sectors.begin(), sectors.end());
  std::vector<bool> used(static_cast<std::size_t>(max_sector) + 1, false);
  for (Eigen::Index i = 0; i < dim; ++i)
    if (rho.row(i).cwiseAbs().maxCoeff() > 0.0) used[static_cast<std::size_t>(sectors[i])] = true;

  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < dim; ++i)
    if (used[static_cast<std::size_t>(sectors[i])]) active.push_back(i);
  if (static_cast<Eigen::Index>(active.size()) == dim) return {};
  return active;
}

}  // namespace

EvolveResult evolve(const DensityMatrix& rho0, const ModelParams& params, double t_end, double dt,
                    const StepObserver& observe, SectorReduction reduction) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("evolve: dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("evolve: t_end must be non-negative");
  // Only what the integrator needs: g = 0 or Gamma = 0 are legitimate limits here.
  for (double rate : {params.g, params.delta, params.gamma_cav, params.lambda_deph})
    if (!std::isfinite(rate)) throw ConfigError("evolve: rates must be finite");
  if (params.gamma_cav < 0.0) throw ConfigError("evolve: gamma_cav must be non-negative");
  if (params.lambda_deph < 0.0) throw ConfigError("evolve: lambda_deph must be non-negative");
  if (params.n_max < 1 || !(rho0.space() == params.space()))
    throw DimensionError("evolve: initial state does not match the model space");

  const Operator h = build_hamiltonian(params, rho0.space());
  const ConditionalGenerator full_generator(h, params.lambda_deph);

  std::vector<Eigen::Index> active;
  if (reduction == SectorReduction::automatic) active = populated_sectors(rho0);
  const bool reduced = !active.empty();
  const ConditionalGenerator generator = reduced ? full_generator.restricted(active) : full_generator;

  const long steps = t_end > 0.0 ? static_cast<long>(std::ceil(t_end / dt - 1e-9)) : 0;
  const double h_step = steps > 0 ? t_end / static_cast<double>(steps) : dt;

  // `full` is what observers see; with a reduction only the active block of
  // it is ever written.
  Matrix full = rho0.data();
  Matrix rho = reduced ? Matrix(full(active, active)) : full;
  const Eigen::Index dim = rho.rows();
  Matrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), stage(dim, dim);

  double max_drift = 0.0;
  double previous_trace = rho.trace().real();
  if (observe) observe(0, 0.0, full);

  for (long n = 1; n <= steps; ++n) {
    generator.apply(rho, k1);
    stage = rho + (0.5 * h_step) * k1;
    generator.apply(stage, k2);
    stage = rho + (0.5 * h_step) * k2;
    generator.apply(stage, k3);
    stage = rho + h_step * k3;
    generator.apply(stage, k4);
    rho += (h_step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double t = static_cast<double>(n) * h_step;
    const double drift = hermiticity_defect(rho);
    max_drift = std::max(max_drift, drift);
    if (!(drift <= kMaxHermiticityDrift))
      throw IntegrationError(
          fmt::format("Hermiticity drift {:.3g} exceeds {:.0e} at t = {:.6g} (step {})", drift,
                      kMaxHermiticityDrift, t, n),
          t, n);
    stage = rho.adjoint();
    rho = 0.5 * (rho + stage);

    const double tr = rho.trace().real();
    if (!(tr - previous_trace <= kMaxTraceIncrease))
      throw IntegrationError(fmt::format("trace grew by {:.3g} at t = {:.6g} (step {})",
                                         tr - previous_trace, t, n),
                             t, n);
    previous_trace = tr;
    if (reduced)
      full(active, active) = rho;
    else
      full = rho;
    if (observe) observe(n, t, full);
  }

  return EvolveResult{DensityMatrix(rho0.space(), std::move(full)), steps, h_step, t_end, max_drift};
}

}  // namespace eosim
