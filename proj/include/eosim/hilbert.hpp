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

// Tensor-product spaces for two three-level atoms and two truncated cavity
// modes, plus the dense operator algebra built on top of them.
//
// Factor order is always atom_L, atom_R, mode_L, mode_R. Atom basis order is
// |0>, |1>, |e>; mode basis order is Fock |0> ... |n_max>. The first factor
// is the most significant index of the flattened basis.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace eosim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class FactorKind { atom, mode };

struct Factor {
  FactorKind kind;
  int local_dim;

  bool operator==(const Factor&) const = default;
};

// Canonical factor positions in the full space.
inline constexpr int kAtomL = 0;
inline constexpr int kAtomR = 1;
inline constexpr int kModeL = 2;
inline constexpr int kModeR = 3;

inline constexpr int kAtomDim = 3;
// Atom basis indices.
inline constexpr int kGround0 = 0;
inline constexpr int kGround1 = 1;
inline constexpr int kExcited = 2;

class SpaceDescriptor {
 public:
  explicit SpaceDescriptor(std::vector<Factor> factors);

  // atom_L, atom_R, mode_L, mode_R with Fock cutoff n_max.
  static SpaceDescriptor full(int n_max);
  // atom_L, atom_R only; the target of photon-mode partial traces.
  static SpaceDescriptor two_atoms();

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  int num_factors() const noexcept { return static_cast<int>(factors_.size()); }
  const Factor& factor(int index) const;
  Eigen::Index total_dim() const noexcept { return total_dim_; }

  // Flattened index of a basis product state, one local index per factor.
  Eigen::Index index_of(std::span<const int> local_indices) const;
  // Inverse of index_of.
  std::vector<int> local_indices(Eigen::Index flat) const;

  bool operator==(const SpaceDescriptor& other) const { return factors_ == other.factors_; }

 private:
  std::vector<Factor> factors_;
  Eigen::Index total_dim_;
};

// Entrywise max |A - A^dagger|.
double hermiticity_defect(const Matrix& m);

class Operator {
 public:
  Operator(SpaceDescriptor space, Matrix data);

  static Operator identity(const SpaceDescriptor& space);
  static Operator zero(const SpaceDescriptor& space);

  const SpaceDescriptor& space() const noexcept { return space_; }
  const Matrix& data() const noexcept { return data_; }

  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect(data_) <= tol; }
  Operator adjoint() const;

  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  Operator operator*(const Operator& rhs) const;
  Operator operator*(Complex scale) const;
  friend Operator operator*(Complex scale, const Operator& op) { return op * scale; }

 private:
  void require_same_space(const Operator& rhs, const char* what) const;

  SpaceDescriptor space_;
  Matrix data_;
};

// Commutator AB - BA.
Operator commutator(const Operator& a, const Operator& b);

class DensityMatrix {
 public:
  // Hermitian to 1e-8 is required; the stored matrix is re-symmetrized.
  DensityMatrix(SpaceDescriptor space, Matrix data);

  static DensityMatrix pure(const SpaceDescriptor& space, const Vector& psi);

  const SpaceDescriptor& space() const noexcept { return space_; }
  const Matrix& data() const noexcept { return data_; }

  double trace() const { return data_.trace().real(); }
  double min_eigenvalue() const;
  // Tr[op rho].
  Complex expectation(const Operator& op) const;

 private:
  SpaceDescriptor space_;
  Matrix data_;
};

// Tensor product a (x) b with a as the more significant factor.
Matrix kron(const Matrix& a, const Matrix& b);

// I (x) ... (x) local_op (x) ... (x) I, local_op placed at factor_index.
Operator embed(const Matrix& local_op, int factor_index, const SpaceDescriptor& space);

// Truncated bosonic annihilation operator on Fock levels 0..n_max.
Matrix annihilator(int n_max);

struct AtomicOperators {
  Matrix proj_0;
  Matrix proj_1;
  Matrix proj_e;
  Matrix sigma_plus;   // |e><1|
  Matrix sigma_minus;  // |1><e|
};

AtomicOperators atomic_operators();

// Reduced state on the factors in `keep` (canonical order is retained).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

}  // namespace eosim
