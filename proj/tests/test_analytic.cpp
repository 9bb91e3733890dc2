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

#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "eosim/analytic.hpp"

namespace eosim::analytic {
namespace {

constexpr double kPi = std::numbers::pi;

// Trapezoid quadrature of int_0^T 2G e^{-2Gt} 1/2 sin^2(phi t / 2) dt, T large.
double dispersive_by_quadrature(double delta, double gamma, double g) {
  const double phi = g * g / delta;
  const double T = 40.0 / gamma;
  const int n = 400000;
  const double h = T / n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = k * h;
    const double s = std::sin(0.5 * phi * t);
    const double f = 2 * gamma * std::exp(-2 * gamma * t) * 0.5 * s * s;
    sum += (k == 0 || k == n) ? 0.5 * f : f;
  }
  return sum * h;
}

TEST(EffectivePhase, Values) {
  EXPECT_NEAR(effective_phase(1.0, 20.0, 20.0 * kPi), kPi, 1e-15);
  EXPECT_EQ(effective_phase(1.0, 20.0, 0.0), 0.0);
  const double gamma = 1.0 / (kPi * 20.0);
  EXPECT_NEAR(effective_phase(1.0, 20.0, 1.0 / gamma), kPi, 1e-14);
  EXPECT_THROW(effective_phase(1.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(effective_phase(1.0, -3.0, 1.0), std::invalid_argument);
  EXPECT_THROW(effective_phase(1.0, 3.0, -1.0), std::invalid_argument);
}

TEST(IdealSuccess, Values) {
  EXPECT_NEAR(ideal_success_probability(kPi), 0.5, 1e-16);
  EXPECT_EQ(ideal_success_probability(0.0), 0.0);
  EXPECT_NEAR(ideal_success_probability(kPi / 2), 0.25, 1e-15);
}

TEST(Interferometer, EqualAmplitudesAtPi) {
  const std::array<Complex, 4> a{0.5, 0.5, 0.5, 0.5};
  const auto out = ideal_interferometer_state(kPi, a);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0].label, "00");
  EXPECT_EQ(out[3].label, "11");
  EXPECT_LT(std::abs(out[0].r_prime), 1e-16);
  EXPECT_LT(std::abs(out[3].r_prime), 1e-16);
  EXPECT_NEAR(std::abs(out[1].r_prime), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(out[2].r_prime), 0.5, 1e-15);
  // Conditioning on R' leaves (|01> - |10>)/sqrt(2) up to a global phase.
  const Complex ratio = out[2].r_prime / out[1].r_prime;
  EXPECT_NEAR(ratio.real(), -1.0, 1e-15);
  EXPECT_NEAR(ratio.imag(), 0.0, 1e-15);
  EXPECT_LT(std::abs(out[1].l_prime), 1e-15);
}

TEST(Interferometer, TrivialCases) {
  const std::array<Complex, 4> a{0.5, Complex(0, 0.5), -0.5, 0.5};
  for (const auto& b : ideal_interferometer_state(0.0, a)) EXPECT_EQ(std::abs(b.r_prime), 0.0);
  const std::array<Complex, 4> even{1.0, 0.0, 0.0, 0.0};
  for (double theta : {0.3, 1.0, kPi, 5.0})
    for (const auto& b : ideal_interferometer_state(theta, even)) EXPECT_EQ(std::abs(b.r_prime), 0.0);
  const std::array<Complex, 4> bad{1.0, 1.0, 0.0, 0.0};
  EXPECT_THROW(ideal_interferometer_state(1.0, bad), std::invalid_argument);
}

TEST(Interferometer, ConservesProbabilityAndMatchesSuccess) {
  const std::array<Complex, 4> plus{0.5, 0.5, 0.5, 0.5};
  const std::array<Complex, 4> skew{Complex(0.1, 0.2), Complex(-0.5, 0.1), Complex(0.3, 0.6),
                                    Complex(0.0, 0.0)};
  double n2 = 0.0;
  for (const auto& x : skew) n2 += std::norm(x);
  std::array<Complex, 4> skewn;
  for (int i = 0; i < 4; ++i) skewn[i] = skew[i] / std::sqrt(n2);
  for (double theta : {0.0, 0.4, 1.7, kPi, 4.4}) {
    for (const auto& a : {plus, skewn}) {
      double total = 0.0;
      for (const auto& b : ideal_interferometer_state(theta, a))
        total += std::norm(b.l_prime) + std::norm(b.r_prime);
      EXPECT_NEAR(total, 1.0, 1e-14);
    }
    double herald = 0.0;
    for (const auto& b : ideal_interferometer_state(theta, plus)) herald += std::norm(b.r_prime);
    EXPECT_NEAR(herald, ideal_success_probability(theta), 1e-15);
  }
}

TEST(DispersiveSuccess, ClosedFormAndLimits) {
  const double delta = 20.0;
  const double gamma = 1.0 / (kPi * delta);
  const double expected = kPi * kPi / (4.0 * (kPi * kPi + 4.0));
  EXPECT_NEAR(analytic_success_dispersive(delta, gamma, 1.0), expected, 1e-15);
  EXPECT_NEAR(expected, 0.17790, 5e-6);
  EXPECT_NEAR(analytic_success_dispersive(delta, 1e-12, 1.0), 0.25, 1e-12);
  EXPECT_EQ(analytic_success_dispersive(delta, std::numeric_limits<double>::infinity(), 1.0), 0.0);
  EXPECT_LT(analytic_success_dispersive(delta, 1e6, 1.0), 1e-12);
  EXPECT_THROW(analytic_success_dispersive(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST(DispersiveSuccess, MatchesQuadrature) {
  for (double delta : {7.0, 20.0, 50.0})
    for (double gn : {0.5, 1.0, 2.0}) {
      const double gamma = gn / (kPi * delta);
      EXPECT_NEAR(analytic_success_dispersive(delta, gamma, 1.0),
                  dispersive_by_quadrature(delta, gamma, 1.0), 1e-7);
    }
}

TEST(CoherentLeadingOrderTest, Values) {
  const auto r = coherent_leading_order(0.2, kPi);
  EXPECT_NEAR(r.fidelity, 0.98, 1e-15);
  EXPECT_NEAR(r.probability, 0.02, 1e-15);
  EXPECT_FALSE(r.beyond_weak_limit);
  const auto v = coherent_leading_order(0.0, 1.0);
  EXPECT_EQ(v.fidelity, 1.0);
  EXPECT_EQ(v.probability, 0.0);
  for (double alpha : {0.05, 0.3, 0.6})
    for (double theta : {0.2, 1.0, kPi}) {
      const auto x = coherent_leading_order(alpha, theta);
      EXPECT_NEAR(x.fidelity + x.probability, 1.0, 1e-15);
    }
  EXPECT_TRUE(coherent_leading_order(0.6, kPi).beyond_weak_limit);
}

TEST(SourceBound, Values) {
  EXPECT_NEAR(source_fidelity_bound({{{0, 0.14}, {2, 0.0008}}}), 0.9992, 1e-15);
  EXPECT_EQ(source_fidelity_bound({{{0, 0.3}, {1, 0.7}}}), 1.0);
  EXPECT_NEAR(source_fidelity_bound({{{2, 0.05}, {3, 0.01}}}), 0.94, 1e-15);
  EXPECT_THROW(source_fidelity_bound({{{2, -0.1}}}), std::invalid_argument);
  EXPECT_THROW(source_fidelity_bound({{{1, 0.9}, {2, 0.2}}}), std::invalid_argument);
  EXPECT_THROW(source_fidelity_bound({{{-1, 0.1}}}), std::invalid_argument);
}

}  // namespace
}  // namespace eosim::analytic
