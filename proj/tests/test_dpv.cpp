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

#include "pspec/dpv.hpp"
#include "pspec/error.hpp"
#include "pspec/oracles.hpp"

using namespace pspec;
constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 2 * kPi;

namespace {
cd zeta_of(double w) { return 1.0 - std::polar(1.0, w); }
}  // namespace

TEST_CASE("initial weights") {
  const auto w = initial_weights(1.3, 0.0);
  CHECK(std::abs(w.w0 - 2.0) < 1e-15);
  CHECK(std::abs(w.wp1 - 1.0) < 1e-15);
  CHECK(std::abs(w.wm1 - 1.0) < 1e-15);
  std::mt19937_64 eng(2);
  std::uniform_real_distribution<double> u(0.05, kTwoPi - 0.05);
  for (int i = 0; i < 20; ++i) {
    const double p = u(eng);
    const cd z(u(eng) - 3.0, u(eng) - 3.0);
    const auto v = initial_weights(p, z);
    CHECK(std::abs(v.w0 - toeplitz_moment(0, p, z)) < 1e-13);
    CHECK(std::abs(v.wp1 + toeplitz_moment(-1, p, z)) < 1e-13);
    CHECK(std::abs(v.wm1 + toeplitz_moment(1, p, z)) < 1e-13);
  }
  CHECK_THROWS_AS(initial_weights(0.0, 0.5), Error);
  CHECK_THROWS_AS(initial_weights(kTwoPi, 0.5), Error);
}

TEST_CASE("weights reflect on |1 - zeta| = 1") {
  // Reflection phi -> 2pi - phi with zeta -> conj-side point maps w0 to (1-zeta) conj(w0).
  for (double p : {0.4, 2.2})
    for (double w : {0.5, 2.0}) {
      const cd z = zeta_of(w), x = 1.0 - z;
      const auto a = initial_weights(kTwoPi - p, z), b = initial_weights(p, z);
      CHECK(std::abs(a.w0 - x * std::conj(b.w0)) < 1e-13);
    }
}

TEST_CASE("zeta = 0 keeps Phi at one") {
  DpvState s = dpv_init(1.7, 0.0);
  for (int n = 1; n < 10000; ++n) dpv_advance(s);
  const auto v = s.phi_cur.to_std();
  CHECK(std::abs(v - 1.0) < 1e-25);
  CHECK(std::abs(phi_dpv(500, 2.0, 0.0, false).value - 1.0) < 1e-25);
}

TEST_CASE("ratio recurrence consistency") {
  const cd z = zeta_of(1.1);
  DpvState s = dpv_init(2.4, z);
  for (int n = 1; n < 40; ++n) {
    const cd pm = s.phi_prev.to_std(), p0 = s.phi_cur.to_std();
    const cd rr = s.r.to_std() * s.rb.to_std();
    const double N = s.n;
    dpv_advance(s);
    const cd pp = s.phi_cur.to_std();
    CHECK(std::abs(pp * pm / (p0 * p0) - (N + 1) * (N + 1) / (N * (N + 2)) * (1.0 - rr)) < 1e-12);
  }
}

TEST_CASE("dpv against toeplitz on the standard grid") {
  for (int N : {2, 3, 5, 8, 13, 32, 64})
    for (double p : {0.5, kPi, 5.0})
      for (double w : {0.3, 1.0, 2.0}) {
        const cd z = zeta_of(w);
        const auto a = phi_eval(N, p, z, true), b = phi_toeplitz(N, p, z, true);
        CHECK(std::abs(a.value - b.value) < 1e-10);
        CHECK(std::abs(a.dzeta - b.dzeta) < 1e-8 * std::abs(b.dzeta));
      }
}

TEST_CASE("dpv against toeplitz at N = 256") {
  for (double p : {0.7, 2.0, 4.0})
    for (double w : {0.3, 2.0}) {
      const cd z = zeta_of(w);
      CHECK(std::abs(phi_eval(256, p, z, false).value - phi_toeplitz(256, p, z, false).value) < 1e-8);
    }
}

TEST_CASE("dual derivative against finite differences") {
  const double h = 1e-6;
  for (int N : {16, 128, 256})
    for (double p : {0.9, 2.6}) {
      const cd z = zeta_of(1.4);
      const cd d = phi_dpv(N, p, z, true).dzeta;
      const cd fd = (phi_dpv(N, p, z + h, false).value - phi_dpv(N, p, z - h, false).value) / (2 * h);
      CHECK(std::abs(d - fd) < 1e-6 * std::abs(d));
    }
}

TEST_CASE("endpoint series") {
  CHECK(std::abs(phi_series(20, 0.0, zeta_of(1.0), false).value - 1.0) == 0.0);
  // Leading small-phi behaviour.
  for (int N : {4, 40}) {
    const cd z = zeta_of(0.8);
    const double p = 1e-3 / N;
    const cd lead = 1.0 - double(N) * (N + 1) * (N + 2) / (72 * kPi) * z * p * p * p;
    // next order is (N p)^2 relative to the cubic term
    CHECK(std::abs(phi_series(N, p, z, false).value - lead) < 1e-5 * std::abs(1.0 - lead) + 1e-16);
  }
  std::mt19937_64 eng(4);
  std::uniform_real_distribution<double> u(0.1, kTwoPi - 0.1);
  for (int i = 0; i < 5; ++i) {
    const cd z = zeta_of(u(eng));
    CHECK(std::abs(phi_series(32, 0.005, z, true).value - phi_toeplitz(32, 0.005, z).value) < 1e-10);
  }
}

TEST_CASE("series and recurrence overlap") {
  for (int N : {16, 128, 512}) {
    const double d = default_delta_end(N);
    for (double p : {d, 1.5 * d, 2.0 * d})
      for (double w : {0.3, 2.5}) {
        const cd z = zeta_of(w);
        CHECK(std::abs(phi_series(N, p, z, false).value - phi_dpv(N, p, z, false).value) < 1e-8);
      }
  }
}

TEST_CASE("symmetry through the recurrence at N = 512") {
  const int N = 512;
  for (double p : {0.5, 1.9, 3.0})
    for (double w : {0.3, 1.0, 2.5}) {
      const cd z = zeta_of(w);
      const cd lhs = phi_dpv(N, kTwoPi - p, z, false).value;
      const cd rhs = std::pow(1.0 - z, N) * std::conj(phi_dpv(N, p, z, false).value);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("magnitude bound on the unit circle") {
  for (int N : {10, 200})
    for (double p = 0.05; p < kTwoPi; p += 0.3) CHECK(std::abs(phi_eval(N, p, zeta_of(0.9), false).value) <= 1.0 + 1e-12);
}

TEST_CASE("precision monitor") {
  const int n = dpv_precision_divergence(2000, 1.0, zeta_of(0.5));
  CHECK(n != 0);
  const auto tr = dpv_trace(50, 1.0, zeta_of(0.5));
  CHECK(tr.size() == 50);
  CHECK(std::abs(tr.back().value - phi_toeplitz(50, 1.0, zeta_of(0.5), false).value) < 1e-10);
}

TEST_CASE("margin violations are rejected") {
  CHECK_THROWS_AS(phi_dpv(64, 0.001, zeta_of(1.0), false, Precision::extended, 0.01), Error);
}
