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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <complex>

#include "pspec/baselines.hpp"
#include "pspec/error.hpp"

using namespace pspec;
using cd = std::complex<double>;
constexpr double kPi = 3.141592653589793;

namespace {

// Definition-1 double sum over the ordered-level covariance.
double s_from_covariance(int N, double w, double s2) {
  cd acc = 0.0;
  for (int l = 1; l <= N; ++l)
    for (int m = 1; m <= N; ++m) acc += ordered_level_covariance(l, m, s2) * std::polar(1.0, w * (l - m));
  return acc.real() / N;
}

cd char_fn_by_quadrature(const SpacingDistribution& d, double tau) {
  auto re = [&](double s) { return d.density(s) * std::cos(2 * kPi * tau * s); };
  auto im = [&](double s) { return d.density(s) * std::sin(2 * kPi * tau * s); };
  if (d.kind == SpacingKind::uniform) {
    using Q = boost::math::quadrature::gauss_kronrod<double, 61>;
    return {Q::integrate(re, 0.0, 2.0, 15, 1e-13), Q::integrate(im, 0.0, 2.0, 15, 1e-13)};
  }
  using Q = boost::math::quadrature::gauss_kronrod<double, 61>;
  return {Q::integrate(re, 0.0, 60.0, 20, 1e-13), Q::integrate(im, 0.0, 60.0, 20, 1e-13)};
}

}  // namespace

TEST_CASE("S_exp at omega_k reduces to sigma^2/(2 sin^2)") {
  for (int N : {1, 2, 7, 16, 64})
    for (int k = 1; 2 * k <= N; ++k) {
      const double w = 2 * kPi * k / N, s = std::sin(w / 2);
      CHECK(s_uncorrelated_exact(N, w, 1.7) == doctest::Approx(1.7 / (2 * s * s)).epsilon(1e-12));
    }
  CHECK(s_uncorrelated_exact(8, kPi, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s_uncorrelated_exact(1, kPi, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("S_exp equals the covariance double sum off the grid") {
  for (int N : {1, 3, 10, 32})
    for (double w : {0.05, 0.4, 1.3, 2.2, kPi})
      CHECK(s_uncorrelated_exact(N, w, 0.6) == doctest::Approx(s_from_covariance(N, w, 0.6)).epsilon(1e-10));
}

TEST_CASE("S_exp rejects omega outside (0, pi]") {
  CHECK_THROWS_AS(s_uncorrelated_exact(4, 0.0, 1.0), Error);
  CHECK_THROWS_AS(s_uncorrelated_exact(0, 1.0, 1.0), Error);
}

TEST_CASE("ordered level covariance") {
  CHECK(ordered_level_covariance(1, 1, 1.0) == 1.0);
  CHECK(ordered_level_covariance(3, 5, 2.0) == 6.0);
}

TEST_CASE("characteristic functions: normalization, modulus, mean") {
  for (auto d : {SpacingDistribution::exponential(), SpacingDistribution::erlang3(),
                 SpacingDistribution::inverse_gaussian(), SpacingDistribution::uniform(),
                 SpacingDistribution::degenerate()}) {
    CAPTURE(d.name);
    CHECK(std::abs(d.char_fn(0.0) - 1.0) < 1e-15);
    for (double t : {-3.0, -0.2, 0.01, 0.7, 5.0}) CHECK(std::abs(d.char_fn(t)) <= 1.0 + 1e-14);
    const double h = 1e-6;
    const cd der = (d.char_fn(h) - d.char_fn(-h)) / (2 * h);
    CHECK(std::abs(der - cd(0.0, 2 * kPi * d.mean)) < 1e-6);
  }
}

TEST_CASE("characteristic functions match density quadrature") {
  for (auto d : {SpacingDistribution::exponential(), SpacingDistribution::erlang3(),
                 SpacingDistribution::inverse_gaussian(), SpacingDistribution::uniform()}) {
    CAPTURE(d.name);
    for (double t : {0.05, 0.3, 1.1}) CHECK(std::abs(d.char_fn(t) - char_fn_by_quadrature(d, t)) < 1e-9);
  }
  const cd u = SpacingDistribution::uniform().char_fn(0.3);
  const double x = 4 * kPi * 0.3;
  CHECK(std::abs(u - (std::polar(1.0, x) - 1.0) / cd(0.0, x)) < 1e-15);
}

TEST_CASE("variances of the built-ins") {
  CHECK(SpacingDistribution::exponential().variance == 1.0);
  for (auto d : {SpacingDistribution::erlang3(), SpacingDistribution::inverse_gaussian(),
                 SpacingDistribution::uniform()})
    CHECK(d.variance == doctest::Approx(1.0 / 3.0));
  CHECK(SpacingDistribution::degenerate().variance == 0.0);
  CHECK_THROWS_AS(SpacingDistribution::by_name("cauchy"), Error);
}

TEST_CASE("S scaling limits") {
  CHECK(s_scaling(Regime::infrared, 1e-4, 1.0) < 1e-8);
  CHECK(s_scaling(Regime::infrared, kPi, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s_scaling(Regime::fixed, 1e-5, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(s_scaling(Regime::intermediate, 3.0, 0.25) == 0.5);
  // Infrared law against the exact spectrum at N = 1e6, omega = Omega/N.
  const int N = 1000000;
  for (double O : {0.1, 1.0, 4.0, 10.0}) {
    const double w = O / N;
    CHECK(w * w * s_uncorrelated_exact(N, w, 1.0) == doctest::Approx(s_scaling(Regime::infrared, O, 1.0)).epsilon(1e-4));
  }
  // Fixed omega: the N -> infinity trend approaches the third law.
  const double w = 0.9, lim = s_scaling(Regime::fixed, w, 1.0);
  const double e1 = std::abs(w * w * s_uncorrelated_exact(1000, w, 1.0) - lim);
  const double e2 = std::abs(w * w * s_uncorrelated_exact(100000, w, 1.0) - lim);
  CHECK(e2 < e1);
}

TEST_CASE("form factor: exponential fixed-tau limit is one") {
  const auto d = SpacingDistribution::exponential();
  for (double t : {0.1, 0.5, 2.0}) CHECK(form_factor_scaling(Regime::fixed, t, d) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(form_factor_exact(10, 0.0, d), Error);
}

TEST_CASE("form factor tends to one at large tau") {
  for (auto d : {SpacingDistribution::exponential(), SpacingDistribution::erlang3(),
                 SpacingDistribution::inverse_gaussian(), SpacingDistribution::uniform()}) {
    CAPTURE(d.name);
    for (double t : {1e3, 3e3}) CHECK(std::abs(form_factor_exact(2048, t, d) - 1.0) < 1e-6);
  }
}

TEST_CASE("form factor scaling endpoints and continuity") {
  for (auto d : {SpacingDistribution::erlang3(), SpacingDistribution::inverse_gaussian(),
                 SpacingDistribution::uniform()}) {
    CAPTURE(d.name);
    const double s2 = d.variance;
    CHECK(form_factor_scaling(Regime::infrared, 1e-5, d) < 1e-8);
    CHECK(std::abs(form_factor_scaling(Regime::infrared, 1e7, d) - 2 * s2) < 1e-6);
    CHECK(std::abs(form_factor_scaling(Regime::intermediate, 1e-6, d) - 2 * s2) < 1e-6);
    CHECK(std::abs(form_factor_scaling(Regime::intermediate, 1e4, d) - s2) < 1e-6);
    CHECK(std::abs(form_factor_scaling(Regime::fixed, 1e-6, d) - s2) < 1e-5);
    CHECK(std::abs(form_factor_scaling(Regime::fixed, 1e3, d) - 1.0) < 1e-3);
  }
}

TEST_CASE("exact form factor is real and tracks the infrared law at large N") {
  const auto d = SpacingDistribution::uniform();
  const int N = 100000;
  for (double T : {0.2, 1.0, 3.0, 5.0})
    CHECK(std::abs(form_factor_exact(N, T / N, d) - form_factor_scaling(Regime::infrared, T, d)) < 1e-3);
}
