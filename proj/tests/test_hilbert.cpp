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

#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "eosim/errors.hpp"
#include "eosim/hilbert.hpp"
#include "oracles.hpp"

namespace eosim {
namespace {

Matrix random_local(int dim, unsigned seed) {
  return oracle::random_density(dim, seed) + Complex(0.0, 0.3) * Matrix::Identity(dim, dim);
}

TEST(SpaceDescriptor, CanonicalFullSpace) {
  const auto s = SpaceDescriptor::full(1);
  ASSERT_EQ(s.num_factors(), 4);
  EXPECT_EQ(s.total_dim(), 36);
  EXPECT_EQ(s.factor(kAtomL).kind, FactorKind::atom);
  EXPECT_EQ(s.factor(kModeR).local_dim, 2);
  EXPECT_EQ(SpaceDescriptor::full(3).total_dim(), 144);
  EXPECT_EQ(SpaceDescriptor::two_atoms().total_dim(), 9);
}

TEST(SpaceDescriptor, IndexRoundTrip) {
  const auto s = SpaceDescriptor::full(2);
  const oracle::Basis b{2};
  for (Eigen::Index i = 0; i < s.total_dim(); ++i) {
    const auto local = s.local_indices(i);
    EXPECT_EQ(s.index_of(local), i);
    EXPECT_EQ(b.index(local[0], local[1], local[2], local[3]), i);
  }
}

TEST(SpaceDescriptor, RejectsBadFactors) {
  EXPECT_THROW(SpaceDescriptor({}), DimensionError);
  EXPECT_THROW(SpaceDescriptor({{FactorKind::atom, 2}}), DimensionError);
  EXPECT_THROW(SpaceDescriptor::full(0), std::invalid_argument);
  EXPECT_THROW(SpaceDescriptor::full(1).factor(4), std::out_of_range);
}

TEST(Annihilator, DefiningMatrices) {
  Matrix a1(2, 2);
  a1 << 0, 1, 0, 0;
  EXPECT_EQ(annihilator(1), a1);

  const Matrix a3 = annihilator(3);
  EXPECT_DOUBLE_EQ(a3(0, 1).real(), 1.0);
  EXPECT_DOUBLE_EQ(a3(1, 2).real(), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(a3(2, 3).real(), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(a3.cwiseAbs().sum(), 1.0 + std::sqrt(2.0) + std::sqrt(3.0));

  const Matrix n = a3.adjoint() * a3;
  Eigen::Vector4cd diag(0, 1, 2, 3);
  EXPECT_LT((n - Matrix(diag.asDiagonal())).norm(), 1e-14);
  EXPECT_THROW(annihilator(0), std::invalid_argument);
}

TEST(Annihilator, CommutatorHasTopLevelDefect) {
  for (int n_max : {1, 2, 3, 5}) {
    const Matrix a = annihilator(n_max);
    Matrix expected = Matrix::Identity(n_max + 1, n_max + 1);
    expected(n_max, n_max) -= double(n_max + 1);
    EXPECT_LT((a * a.adjoint() - a.adjoint() * a - expected).norm(), 1e-13) << n_max;
  }
}

TEST(AtomicOperators, Action) {
  const auto ops = atomic_operators();
  Vector k0 = Vector::Unit(3, kGround0), k1 = Vector::Unit(3, kGround1),
         ke = Vector::Unit(3, kExcited);
  EXPECT_EQ(ops.sigma_plus * k1, ke);
  EXPECT_EQ((ops.sigma_plus * k0).norm(), 0.0);
  EXPECT_EQ((ops.sigma_minus * k0).norm(), 0.0);
  EXPECT_EQ(ops.sigma_minus * ops.sigma_plus, ops.proj_1);
  EXPECT_EQ(ops.proj_0 + ops.proj_1 + ops.proj_e, Matrix::Identity(3, 3));
  EXPECT_EQ(ops.sigma_plus.adjoint(), ops.sigma_minus);
}

TEST(Embed, IdentityAndRank) {
  const auto atoms = SpaceDescriptor::two_atoms();
  EXPECT_EQ(embed(Matrix::Identity(3, 3), 0, atoms).data(), Matrix::Identity(9, 9));

  const auto full = SpaceDescriptor::full(1);
  const Operator pe = embed(atomic_operators().proj_e, kAtomL, full);
  EXPECT_EQ(pe.data().rows(), 36);
  Eigen::FullPivLU<Matrix> lu(pe.data());
  EXPECT_EQ(lu.rank(), 12);
  EXPECT_TRUE(pe.is_hermitian());
}

TEST(Embed, LoweringOnModeFactor) {
  const auto full = SpaceDescriptor::full(1);
  const Operator a = embed(annihilator(1), kModeL, full);
  for (int aL = 0; aL < 3; ++aL)
    for (int aR = 0; aR < 3; ++aR)
      for (int nR = 0; nR < 2; ++nR) {
        const std::array<int, 4> one{aL, aR, 1, nR}, zero{aL, aR, 0, nR};
        const Vector v1 = Vector::Unit(36, full.index_of(one));
        const Vector v0 = Vector::Unit(36, full.index_of(zero));
        EXPECT_LT((a.data() * v1 - v0).norm(), 1e-15);
        EXPECT_EQ((a.data() * v0).norm(), 0.0);
      }
}

TEST(Embed, MatchesExplicitKron) {
  const auto full = SpaceDescriptor::full(2);
  const Matrix s = random_local(3, 3);
  const Matrix expected = kron(kron(Matrix::Identity(3, 3), s), Matrix::Identity(9, 9));
  EXPECT_LT((embed(s, kAtomR, full).data() - expected).norm(), 1e-14);
}

TEST(Embed, CompositionAndCommutation) {
  const auto full = SpaceDescriptor::full(2);
  for (int i = 0; i < 4; ++i) {
    const int di = full.factor(i).local_dim;
    const Matrix A = random_local(di, 10 + i), B = random_local(di, 20 + i);
    const Operator lhs = embed(A * B, i, full);
    const Operator rhs = embed(A, i, full) * embed(B, i, full);
    EXPECT_LT((lhs.data() - rhs.data()).norm(), 1e-12);
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      const Matrix C = random_local(full.factor(j).local_dim, 30 + j);
      EXPECT_LT(commutator(embed(A, i, full), embed(C, j, full)).data().norm(), 1e-12);
    }
  }
}

TEST(Embed, ErrorsNameTheFactor) {
  const auto full = SpaceDescriptor::full(1);
  try {
    embed(Matrix::Identity(2, 2), kAtomL, full);
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_NE(std::string(e.what()).find("atom_L"), std::string::npos) << e.what();
  }
  try {
    embed(Matrix::Identity(3, 3), kModeR, full);
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_NE(std::string(e.what()).find("mode_R"), std::string::npos) << e.what();
  }
  EXPECT_THROW(embed(Matrix::Identity(3, 3), 7, full), DimensionError);
}

TEST(OperatorAlgebra, SpaceMismatchThrows) {
  const Operator a = Operator::identity(SpaceDescriptor::full(1));
  const Operator b = Operator::identity(SpaceDescriptor::full(2));
  EXPECT_THROW(a + b, DimensionError);
  EXPECT_THROW(a * b, DimensionError);
  EXPECT_THROW(Operator(SpaceDescriptor::full(1), Matrix::Identity(5, 5)), DimensionError);
}

TEST(OperatorAlgebra, HermiticityTolerance) {
  const auto s = SpaceDescriptor::two_atoms();
  Matrix m = Matrix::Identity(9, 9);
  m(0, 1) = 1e-13;
  EXPECT_TRUE(Operator(s, m).is_hermitian());
  m(0, 1) = 1e-11;
  EXPECT_FALSE(Operator(s, m).is_hermitian());
  EXPECT_NEAR(hermiticity_defect(m), 1e-11, 1e-20);
}

TEST(DensityMatrixTest, RejectsNonHermitianAndSymmetrizes) {
  const auto s = SpaceDescriptor::two_atoms();
  Matrix m = Matrix::Identity(9, 9) / 9.0;
  m(0, 1) = 1e-3;
  EXPECT_THROW(DensityMatrix(s, m), std::invalid_argument);
  m(0, 1) = 1e-10;
  const DensityMatrix rho(s, m);
  EXPECT_EQ(hermiticity_defect(rho.data()), 0.0);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
}

TEST(PartialTrace, ProductState) {
  const auto full = SpaceDescriptor::full(1);
  const Matrix ra = oracle::random_density(3, 1), rb = oracle::random_density(3, 2),
               rc = oracle::random_density(2, 3), rd = oracle::random_density(2, 4);
  const DensityMatrix rho(full, kron(kron(ra, rb), kron(rc, rd)));
  const std::array<int, 1> keep0{0};
  EXPECT_LT((partial_trace(rho, keep0).data() - ra).norm(), 1e-14);
  const std::array<int, 2> keep_modes{kModeL, kModeR};
  EXPECT_LT((partial_trace(rho, keep_modes).data() - kron(rc, rd)).norm(), 1e-14);
  const std::array<int, 2> keep_mixed{kAtomR, kModeR};
  EXPECT_LT((partial_trace(rho, keep_mixed).data() - kron(rb, rd)).norm(), 1e-14);
}

TEST(PartialTrace, MatchesBruteForceOracle) {
  const auto full = SpaceDescriptor::full(1);
  const std::vector<int> dims{3, 3, 2, 2};
  const std::vector<std::vector<int>> keeps{{0}, {1}, {0, 1}, {2, 3}, {0, 3}, {1, 2, 3}, {0, 1, 2, 3}};
  for (unsigned seed = 0; seed < 4; ++seed) {
    const Matrix m = oracle::random_density(36, 100 + seed);
    const DensityMatrix rho(full, m);
    for (const auto& keep : keeps) {
      const DensityMatrix r = partial_trace(rho, keep);
      EXPECT_LT((r.data() - oracle::partial_trace(m, dims, keep)).norm(), 1e-13);
      EXPECT_NEAR(r.trace(), rho.trace(), 1e-14);
    }
  }
}

TEST(PartialTrace, Linear) {
  const auto full = SpaceDescriptor::full(1);
  const Matrix a = oracle::random_density(36, 7), b = oracle::random_density(36, 8);
  const std::array<int, 2> keep{kAtomL, kAtomR};
  const Matrix lhs = partial_trace(DensityMatrix(full, 0.3 * a + 0.7 * b), keep).data();
  const Matrix rhs = 0.3 * partial_trace(DensityMatrix(full, a), keep).data() +
                     0.7 * partial_trace(DensityMatrix(full, b), keep).data();
  EXPECT_LT((lhs - rhs).norm(), 1e-14);
}

TEST(PartialTrace, MaximallyMixed) {
  const auto full = SpaceDescriptor::full(1);
  const DensityMatrix rho(full, Matrix::Identity(36, 36) / 36.0);
  const std::array<int, 2> keep{kAtomL, kAtomR};
  EXPECT_LT((partial_trace(rho, keep).data() - Matrix::Identity(9, 9) / 9.0).norm(), 1e-15);
}

TEST(PartialTrace, Errors) {
  const DensityMatrix rho(SpaceDescriptor::full(1), Matrix::Identity(36, 36) / 36.0);
  EXPECT_THROW(partial_trace(rho, std::span<const int>{}), std::invalid_argument);
  const std::array<int, 1> bad{4};
  EXPECT_THROW(partial_trace(rho, bad), std::invalid_argument);
}

}  // namespace
}  // namespace eosim
