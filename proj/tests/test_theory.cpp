/*
 * Copyright (c) 2026 The pspec Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "pspec/baselines.hpp"
#include "pspec/error.hpp"
#include "pspec/oracles.hpp"
#include "pspec/theory.hpp"

using namespace pspec;
constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 2 * kPi;

namespace {

cd zeta_of(double w) { return 1.0 - std::polar(1.0, w); }

// Phi for i.i.d. Exp(1) spacings: E prod (1 - eps * 1{eps_l <= x}) summed over the
// level count in [0, x], i.e. sum_l (1 - zeta)^l P(exactly l levels <= x) with N levels.
void exp_gf(int N, double x, cd zeta, cd& phi, cd& dphi_dz) {
  // Poisson counts truncated at N: P(l) = e^{-x} x^l / l! for l < N, tail for l = N.
  std::vector<double> p(N + 1);
  double term = std::exp(-x), acc = 0.0;
  for (int l = 0; l < N; ++l) {
    p[l] = term;
    acc += term;
    term *= x / (l + 1);
  }
  p[N] = 1.0 - acc;
  phi = 0.0;
  cd dphi = 0.0;
  const cd q = 1.0 - zeta;
  for (int l = 0; l <= N; ++l) {
    phi += p[l] * std::pow(q, l);
    if (l > 0) dphi += p[l] * double(l) * std::pow(q, l - 1);
  }
  dphi_dz = dphi;  // d/dz with zeta = 1 - z, so q = z
}

}  // namespace

TEST_CASE("operator context") {
  const OperatorContext c(8, 0.7);
  CHECK(std::abs(std::abs(c.z) - 1.0) < 1e-15);
  CHECK_THROWS_AS(OperatorContext(8, 0.0), Error);
  // Linearity on random polynomials.
  std::mt19937_64 eng(1);
  std::normal_distribution<double> g;
  std::vector<double> a(8), b(8), ab(8);
  for (int i = 0; i < 8; ++i) {
    a[i] = g(eng);
    b[i] = g(eng);
    ab[i] = 2.0 * a[i] - 3.0 * b[i];
  }
  CHECK(std::abs(c.apply_to_polynomial(ab) - (2.0 * c.apply_to_polynomial(a) - 3.0 * c.apply_to_polynomial(b))) < 1e-12);
}

TEST_CASE("first master formula reproduces S_exp") {
  for (int N : {1, 5, 16, 64})
    for (double w : {0.2, 1.0, 2.7, kPi}) {
      std::vector<double> v(N);
      for (int l = 0; l < N; ++l) v[l] = 0.8 * (l + 1);
      CHECK(s_stationary_from_variances(v, 1.0, w) == doctest::Approx(s_uncorrelated_exact(N, w, 0.8)).epsilon(1e-10));
    }
  CHECK(s_stationary_from_variances(std::vector<double>(10, 0.0), 1.0, 1.0) == 0.0);
  // At omega_k the tail term vanishes.
  const int N = 12;
  const OperatorContext c(N, kTwoPi * 3 / N);
  CHECK(std::abs(c.tail) < 1e-14);
}

TEST_CASE("closed-form subtractions") {
  // |1 - (N+1) z^N + N z^{N+1}|^2 / (N |1 - z|^4), which is N / |1 - z|^2 when z^N = 1
  for (int N : {3, 10})
    for (int k = 1; 2 * k <= N; ++k) {
      const double w = kTwoPi * k / N;
      CHECK(s_tilde(N, w) == doctest::Approx(N / std::norm(1.0 - std::polar(1.0, w))).epsilon(1e-12));
    }
  for (double w : {0.05, 0.9, 2.5}) {
    const int N = 9;
    const cd z = std::polar(1.0, w);
    const double closed = std::norm(1.0 - (N + 1.0) * std::pow(z, N) + double(N) * std::pow(z, N + 1)) /
                          (N * std::pow(std::norm(1.0 - z), 2));
    CHECK(s_tilde(N, w) == doctest::Approx(closed).epsilon(1e-10));
  }
  for (double w : {0.1, 1.0, 3.0}) CHECK(s_tilde(7, w) >= 0.0);
}

TEST_CASE("second master formula agrees with the first for exponential spacings") {
  for (int N : {1, 2})
    for (double w : {0.4, 1.5, 2.8}) {
      auto gf = [&](double x, cd z, cd& phi, cd& d) { exp_gf(N, x, 1.0 - z, phi, d); };
      CHECK(s_from_generating_fn(gf, 1.0, N, w) == doctest::Approx(s_uncorrelated_exact(N, w, 1.0)).epsilon(1e-6));
    }
}

TEST_CASE("s_tcue at N = 1 is exact") {
  for (double w : {0.3, 1.0, 2.0, 3.0}) CHECK(std::abs(s_tcue(1, w).value - (1.0 / 3.0 - 2.0 / (kPi * kPi))) < 1e-10);
}

TEST_CASE("engine cross-check at N = 64") {
  QuadOptions toe;
  toe.engine = Engine::toeplitz;
  for (double w : {0.3, 1.0, 2.0}) {
    const auto a = s_tcue(64, w), b = s_tcue(64, w, toe);
    CHECK(std::abs(a.value - b.value) < 1e-7);
    // The imaginary residue is a property of the expression, not of the engine.
    CHECK(std::abs(a.imag_residue - b.imag_residue) < 1e-6 * std::max(1.0, b.imag_residue));
  }
}

TEST_CASE("discrete shortcut equals the general formula") {
  for (int N : {16, 64})
    for (int k : {1, 3, N / 2}) {
      const double a = s_tcue_discrete(N, k).value, b = s_tcue(N, kTwoPi * k / (N + 1)).value;
      CHECK(std::abs(a - b) <= 1e-9 * std::abs(a) + 1e-12);
    }
  CHECK_THROWS_AS(s_tcue_discrete(16, 9), Error);
}

TEST_CASE("i_n0 identity") {
  CHECK(std::abs(i_n0_closed_form(1, 1.0) - 0.5) < 1e-15);
  CHECK(std::abs(i_n0_closed_form(2, 1.0) - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(i_n0_closed_form(5, 1e-12) - 5.0) < 1e-9);
  for (int N : {8, 64, 256})
    for (double w : {0.3, 1.0, 2.5}) CHECK(i_n0_check(N, zeta_of(w)).residual < 1e-8);
}

TEST_CASE("toeplitz engine accepts moderate N only") {
  QuadOptions toe;
  toe.engine = Engine::toeplitz;
  CHECK_THROWS_AS(s_tcue(300, 1.0, toe), Error);
}

TEST_CASE("spectrum approaches 1/(2 pi omega) at small omega on the discrete grid") {
  const int N = 512;
  for (int k : {4, 8}) {
    const double w = kTwoPi * k / (N + 1);
    CHECK(s_tcue_discrete(N, k).value * kTwoPi * w == doctest::Approx(1.0).epsilon(0.02));
  }
}
