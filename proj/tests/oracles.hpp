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

// Reference implementations used only by tests. Nothing here calls into the
// library's kron/embed machinery; operators are filled entry by entry from
// the basis labels so that agreement with the library is a real check.

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Basis |aL, aR, nL, nR>, aL/aR in {0, 1, e}, flat index in canonical order.
struct Basis {
  int n_max;
  int mode_dim() const { return n_max + 1; }
  int dim() const { return 9 * mode_dim() * mode_dim(); }
  int index(int aL, int aR, int nL, int nR) const {
    return ((aL * 3 + aR) * mode_dim() + nL) * mode_dim() + nR;
  }
};

// H for the two-cavity model, element by element.
Matrix hamiltonian(const Basis& b, double g, double delta, double gamma);

// Single-photon input with arbitrary two-atom amplitudes a[aL*3 + aR].
Vector single_photon_state(const Basis& b, const Vector& atoms);

// RK4 for d psi/dt = -i H psi; observe(step, t, psi) after every step.
void evolve_state(const Matrix& H, Vector psi, double dt, long steps,
                  const std::function<void(long, double, const Vector&)>& observe);

// Reduced state over `keep`, by explicit index loops.
Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims, const std::vector<int>& keep);

// 1/2 sum |eig(A - B)| for Hermitian A, B.
double trace_distance(const Matrix& a, const Matrix& b);

// Random Hermitian positive matrix with unit trace.
Matrix random_density(int dim, unsigned seed);

}  // namespace oracle
