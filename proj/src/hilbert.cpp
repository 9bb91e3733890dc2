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

#include "eosim/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "eosim/errors.hpp"

namespace eosim {

namespace {

std::string factor_name(const SpaceDescriptor& space, int index) {
  if (space.num_factors() == 4) {
    static const char* names[] = {"atom_L", "atom_R", "mode_L", "mode_R"};
    return names[index];
  }
  const auto& f = space.factor(index);
  return std::string(f.kind == FactorKind::atom ? "atom" : "mode") + " factor " +
         std::to_string(index);
}

// Hermiticity tolerated on input states; anything beyond this is not a
// density matrix with rounding noise, it is a different object.
constexpr double kStateHermiticityTol = 1e-8;

}  // namespace

SpaceDescriptor::SpaceDescriptor(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw DimensionError("SpaceDescriptor: no factors");
  total_dim_ = 1;
  for (const auto& f : factors_) {
    if (f.local_dim < 1) throw DimensionError("SpaceDescriptor: local dimension must be positive");
    if (f.kind == FactorKind::atom && f.local_dim != kAtomDim)
      throw DimensionError("SpaceDescriptor: atoms have local dimension 3");
    total_dim_ *= f.local_dim;
  }
}

SpaceDescriptor SpaceDescriptor::full(int n_max) {
  if (n_max < 1) throw std::invalid_argument("SpaceDescriptor::full: n_max must be >= 1");
  return SpaceDescriptor({{FactorKind::atom, kAtomDim},
                          {FactorKind::atom, kAtomDim},
                          {FactorKind::mode, n_max + 1},
                          {FactorKind::mode, n_max + 1}});
}

SpaceDescriptor SpaceDescriptor::two_atoms() {
  return SpaceDescriptor({{FactorKind::atom, kAtomDim}, {FactorKind::atom, kAtomDim}});
}

const Factor& SpaceDescriptor::factor(int index) const {
  if (index < 0 || index >= num_factors())
    throw std::out_of_range("SpaceDescriptor: factor index " + std::to_string(index) +
                            " out of range");
  return factors_[static_cast<std::size_t>(index)];
}

Eigen::Index SpaceDescriptor::index_of(std::span<const int> local_indices) const {
  if (static_cast<int>(local_indices.size()) != num_factors())
    throw DimensionError("SpaceDescriptor::index_of: wrong number of local indices");
  Eigen::Index flat = 0;
  for (int i = 0; i < num_factors(); ++i) {
    const int li = local_indices[static_cast<std::size_t>(i)];
    if (li < 0 || li >= factors_[static_cast<std::size_t>(i)].local_dim)
      throw std::out_of_range("SpaceDescriptor::index_of: local index out of range");
    flat = flat * factors_[static_cast<std::size_t>(i)].local_dim + li;
  }
  return flat;
}

std::vector<int> SpaceDescriptor::local_indices(Eigen::Index flat) const {
  if (flat < 0 || flat >= total_dim_)
    throw std::out_of_range("SpaceDescriptor::local_indices: index out of range");
  std::vector<int> out(factors_.size());
  for (int i = num_factors() - 1; i >= 0; --i) {
    const int d = factors_[static_cast<std::size_t>(i)].local_dim;
    out[static_cast<std::size_t>(i)] = static_cast<int>(flat % d);
    flat /= d;
  }
  return out;
}

double hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Operator::Operator(SpaceDescriptor space, Matrix data)
    : space_(std::move(space)), data_(std::move(data)) {
  if (data_.rows() != data_.cols())
    throw DimensionError("Operator: matrix is not square");
  if (data_.rows() != space_.total_dim())
    throw DimensionError("Operator: matrix dimension " + std::to_string(data_.rows()) +
                         " does not match space dimension " +
                         std::to_string(space_.total_dim()));
}

Operator Operator::identity(const SpaceDescriptor& space) {
  return Operator(space, Matrix::Identity(space.total_dim(), space.total_dim()));
}

Operator Operator::zero(const SpaceDescriptor& space) {
  return Operator(space, Matrix::Zero(space.total_dim(), space.total_dim()));
}

Operator Operator::adjoint() const { return Operator(space_, data_.adjoint()); }

void Operator::require_same_space(const Operator& rhs, const char* what) const {
  if (!(space_ == rhs.space_))
    throw DimensionError(std::string("Operator ") + what + ": operands live on different spaces");
}

Operator Operator::operator+(const Operator& rhs) const {
  require_same_space(rhs, "+");
  return Operator(space_, data_ + rhs.data_);
}

Operator Operator::operator-(const Operator& rhs) const {
  require_same_space(rhs, "-");
  return Operator(space_, data_ - rhs.data_);
}

Operator Operator::operator*(const Operator& rhs) const {
  require_same_space(rhs, "*");
  return Operator(space_, data_ * rhs.data_);
}

Operator Operator::operator*(Complex scale) const { return Operator(space_, data_ * scale); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

DensityMatrix::DensityMatrix(SpaceDescriptor space, Matrix data)
    : space_(std::move(space)), data_(std::move(data)) {
  if (data_.rows() != data_.cols() || data_.rows() != space_.total_dim())
    throw DimensionError("DensityMatrix: matrix does not match space dimension");
  const double defect = hermiticity_defect(data_);
  if (!(defect <= kStateHermiticityTol))
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  data_ = (0.5 * (data_ + data_.adjoint())).eval();
}

DensityMatrix DensityMatrix::pure(const SpaceDescriptor& space, const Vector& psi) {
  if (psi.size() != space.total_dim())
    throw DimensionError("DensityMatrix::pure: vector does not match space dimension");
  return DensityMatrix(space, psi * psi.adjoint());
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(data_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Complex DensityMatrix::expectation(const Operator& op) const {
  if (!(op.space() == space_))
    throw DimensionError("DensityMatrix::expectation: operator lives on a different space");
  // Tr[A rho] = sum_ij A_ij rho_ji
  return op.data().cwiseProduct(data_.transpose()).sum();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator embed(const Matrix& local_op, int factor_index, const SpaceDescriptor& space) {
  if (factor_index < 0 || factor_index >= space.num_factors())
    throw DimensionError("embed: factor index " + std::to_string(factor_index) +
                         " out of range");
  const int d = space.factor(factor_index).local_dim;
  if (local_op.rows() != d || local_op.cols() != d)
    throw DimensionError("embed: operator of size " + std::to_string(local_op.rows()) + "x" +
                         std::to_string(local_op.cols()) + " does not fit " +
                         factor_name(space, factor_index) + " (local dimension " +
                         std::to_string(d) + ")");
  Eigen::Index left = 1;
  Eigen::Index right = 1;
  for (int i = 0; i < factor_index; ++i) left *= space.factor(i).local_dim;
  for (int i = factor_index + 1; i < space.num_factors(); ++i) right *= space.factor(i).local_dim;
  Matrix out = kron(kron(Matrix::Identity(left, left), local_op), Matrix::Identity(right, right));
  return Operator(space, std::move(out));
}

Matrix annihilator(int n_max) {
  if (n_max < 1) throw std::invalid_argument("annihilator: n_max must be >= 1");
  Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

AtomicOperators atomic_operators() {
  AtomicOperators ops;
  auto ket_bra = [](int i, int j) {
    Matrix m = Matrix::Zero(kAtomDim, kAtomDim);
    m(i, j) = 1.0;
    return m;
  };
  ops.proj_0 = ket_bra(kGround0, kGround0);
  ops.proj_1 = ket_bra(kGround1, kGround1);
  ops.proj_e = ket_bra(kExcited, kExcited);
  ops.sigma_plus = ket_bra(kExcited, kGround1);
  ops.sigma_minus = ket_bra(kGround1, kExcited);
  return ops;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const SpaceDescriptor& space = rho.space();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");

  std::vector<bool> kept(static_cast<std::size_t>(space.num_factors()), false);
  for (int k : keep) {
    if (k < 0 || k >= space.num_factors())
      throw std::invalid_argument("partial_trace: factor index " + std::to_string(k) +
                                  " out of range");
    kept[static_cast<std::size_t>(k)] = true;
  }

  std::vector<Factor> kept_factors;
  std::vector<Factor> traced_factors;
  for (int i = 0; i < space.num_factors(); ++i)
    (kept[static_cast<std::size_t>(i)] ? kept_factors : traced_factors).push_back(space.factor(i));

  SpaceDescriptor reduced(kept_factors);
  const Eigen::Index dim = space.total_dim();

  // Split every flat index into (kept part, traced part).
  std::vector<Eigen::Index> kept_idx(static_cast<std::size_t>(dim));
  std::vector<Eigen::Index> traced_idx(static_cast<std::size_t>(dim));
  for (Eigen::Index flat = 0; flat < dim; ++flat) {
    const auto locals = space.local_indices(flat);
    Eigen::Index k = 0;
    Eigen::Index t = 0;
    for (int i = 0; i < space.num_factors(); ++i) {
      const int d = space.factor(i).local_dim;
      if (kept[static_cast<std::size_t>(i)])
        k = k * d + locals[static_cast<std::size_t>(i)];
      else
        t = t * d + locals[static_cast<std::size_t>(i)];
    }
    kept_idx[static_cast<std::size_t>(flat)] = k;
    traced_idx[static_cast<std::size_t>(flat)] = t;
  }

  Matrix out = Matrix::Zero(reduced.total_dim(), reduced.total_dim());
  const Matrix& data = rho.data();
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i)
      if (traced_idx[static_cast<std::size_t>(i)] == traced_idx[static_cast<std::size_t>(j)])
        out(kept_idx[static_cast<std::size_t>(i)], kept_idx[static_cast<std::size_t>(j)]) +=
            data(i, j);
  return DensityMatrix(std::move(reduced), std::move(out));
}

}  // namespace eosim
