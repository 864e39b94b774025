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
#include <limits>
#include <random>
#include <vector>

#include "pspec/baselines.hpp"
#include "pspec/error.hpp"
#include "pspec/generators.hpp"
#include "pspec/spectra.hpp"

using namespace pspec;
using cd = std::complex<double>;
constexpr double kPi = 3.141592653589793;

namespace {

std::vector<LevelSequence> toy(int N, int R, unsigned seed, double shift = 0.0) {
  std::mt19937_64 eng(seed);
  std::exponential_distribution<double> e(1.0);
  std::vector<LevelSequence> out;
  for (int r = 0; r < R; ++r) {
    std::vector<double> lv(N);
    double x = shift;
    for (double& v : lv) v = x += e(eng);
    out.emplace_back(lv, 1.0);
  }
  return out;
}

// Sample covariance double sum with 1/R normalization.
double s_double_sum(const std::vector<LevelSequence>& seqs, double w, double delta) {
  const int N = seqs[0].size(), R = int(seqs.size());
  std::vector<double> mean(N, 0.0);
  for (const auto& s : seqs)
    for (int l = 0; l < N; ++l) mean[l] += s.levels[l] / R;
  cd acc = 0;
  for (int l = 0; l < N; ++l)
    for (int m = 0; m < N; ++m) {
      double c = 0;
      for (const auto& s : seqs) c += (s.levels[l] - mean[l]) * (s.levels[m] - mean[m]);
      acc += c / R * std::polar(1.0, w * (l - m));
    }
  return acc.real() / (N * delta * delta);
}

}  // namespace

TEST_CASE("fourier coefficient examples") {
  CHECK(std::abs(fourier_coefficient(std::vector<double>{0, 0, 0, 0}, 1)) == 0.0);
  const cd a = fourier_coefficient(std::vector<double>{1, -1}, 1);
  CHECK(std::abs(a - cd(-std::sqrt(2.0), 0)) < 1e-15);
  const cd b = fourier_coefficient(std::vector<double>{1, 0, -1, 0}, 1);
  CHECK(std::abs(b - cd(0, 1)) < 1e-15);
  CHECK_THROWS_AS(fourier_coefficient(std::vector<double>{1, 0, -1, 0}, 3), Error);
  CHECK_THROWS_AS(fourier_coefficient(std::vector<double>{1, 0, -1, 0}, 0), Error);
}

TEST_CASE("center_ensemble") {
  const auto e = center_ensemble({LevelSequence({1, 2}, 1.0), LevelSequence({3, 4}, 1.0)});
  CHECK(e.data == std::vector<double>{-1, -1, 1, 1});
  const auto z = center_ensemble({LevelSequence({1, 5}, 1.0), LevelSequence({1, 5}, 1.0)});
  for (double v : z.data) CHECK(v == 0.0);
  CHECK_THROWS_AS(center_ensemble({LevelSequence({1, 2}, 1.0), LevelSequence({1}, 1.0)}), Error);
  CHECK_THROWS_AS(center_ensemble({LevelSequence({1, 2}, 1.0)}), Error);
  CHECK_THROWS_AS(LevelSequence({2, 1}, 1.0), Error);
  CHECK_THROWS_AS(LevelSequence({1, 2}, 0.0), Error);
}

TEST_CASE("power spectrum equals the covariance double sum") {
  for (int N : {3, 8, 16}) {
    const auto seqs = toy(N, 40, 100 + N);
    std::vector<double> grid = discrete_grid(N);
    grid.push_back(0.77);
    std::sort(grid.begin(), grid.end());
    const auto c = power_spectrum_mc(center_ensemble(seqs), 1.3, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(c.value[i] == doctest::Approx(s_double_sum(seqs, grid[i], 1.3)).epsilon(1e-12));
      CHECK(c.value[i] >= 0.0);
    }
  }
}

TEST_CASE("identical realizations have zero spectrum") {
  std::vector<LevelSequence> s(5, LevelSequence({0.5, 1.7, 2.0}, 1.0));
  const auto c = power_spectrum_mc(center_ensemble(s), 1.0, {0.5, 2.0});
  for (double v : c.value) CHECK(v == 0.0);
  CHECK_THROWS_AS(power_spectrum_mc(center_ensemble(s), 1.0, {}), Error);
}

TEST_CASE("Parseval on a 3-realization toy ensemble") {
  const int N = 6;
  const auto seqs = toy(N, 3, 7);
  double sum_s = 0;
  for (int k = 1; k <= N; ++k) sum_s += s_double_sum(seqs, 2 * kPi * k / N, 1.0);
  double sum_v = 0;
  for (int l = 0; l < N; ++l) {
    double m = 0, v = 0;
    for (const auto& s : seqs) m += s.levels[l] / 3;
    for (const auto& s : seqs) v += (s.levels[l] - m) * (s.levels[l] - m) / 3;
    sum_v += v;
  }
  CHECK(sum_s == doctest::Approx(sum_v).epsilon(1e-10));
  // The estimator on the half grid reproduces the same sum through S(2pi - w) = S(w).
  const auto c = power_spectrum_mc(center_ensemble(seqs), 1.0, discrete_grid(N));
  double half = 0;
  for (std::size_t i = 0; i < c.size(); ++i) half += (2 * (i + 1) == std::size_t(N) ? 1.0 : 2.0) * c.value[i];
  half += s_double_sum(seqs, 2 * kPi, 1.0);
  CHECK(half == doctest::Approx(sum_v).epsilon(1e-10));
}

TEST_CASE("shift invariance") {
  const auto a = toy(12, 20, 3), b = toy(12, 20, 3, 1234.5);
  const auto g = discrete_grid(12);
  const auto ca = power_spectrum_mc(center_ensemble(a), 1.0, g), cb = power_spectrum_mc(center_ensemble(b), 1.0, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(ca.value[i] == doctest::Approx(cb.value[i]).epsilon(1e-9));
}

TEST_CASE("form factor estimator") {
  const auto seqs = toy(1, 30, 9);
  const auto k = form_factor_mc(seqs, {0.0, 0.3, 1.1});
  CHECK(std::abs(k.value[0]) < 1e-12);
  for (int i = 1; i < 3; ++i) {
    cd m = 0;
    for (const auto& s : seqs) m += std::polar(1.0, 2 * kPi * k.x[i] * s.levels[0]) / 30.0;
    CHECK(k.value[i] == doctest::Approx(1.0 - std::norm(m)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(form_factor_mc({seqs[0]}, {0.5}), Error);
}

TEST_CASE("streaming accumulator agrees with the batch estimators") {
  const int N = 16, R = 48;
  const auto seqs = toy(N, R, 21);
  std::vector<double> grid = discrete_grid(N);
  grid.insert(grid.begin() + 2, 0.9);
  const std::vector<double> tau = {0.0, 0.05, 0.4, 2.0};
  SpectrumAccumulator acc(N, 1.0, grid, tau, R, 16);
  for (int r = 0; r < R; ++r) acc.add(acc.batch_of(r), seqs[r].levels);
  CHECK(acc.count() == R);
  const auto s = acc.power_spectrum(), k = acc.form_factor();
  const auto s0 = power_spectrum_mc(center_ensemble(seqs), 1.0, grid);
  const auto k0 = form_factor_mc(seqs, tau);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(s.value[i] == doctest::Approx(s0.value[i]).epsilon(1e-10));
    CHECK(std::isfinite(s.stderr_[i]));
  }
  for (std::size_t i = 0; i < tau.size(); ++i) CHECK(k.value[i] == doctest::Approx(k0.value[i]).epsilon(1e-10).scale(1));
}

TEST_CASE("accumulator is independent of the order of batches") {
  const int N = 10, R = 32;
  const auto seqs = toy(N, R, 5);
  const auto g = discrete_grid(N);
  SpectrumAccumulator a(N, 1.0, g, {}, R, 4), b(N, 1.0, g, {}, R, 4);
  for (int r = 0; r < R; ++r) a.add(a.batch_of(r), seqs[r].levels);
  for (int r = R - 1; r >= 0; --r) b.add(b.batch_of(r), seqs[r].levels);
  // Within a batch the order changes, so allow for rounding.
  const auto sa = a.power_spectrum(), sb = b.power_spectrum();
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(sa.value[i] == doctest::Approx(sb.value[i]).epsilon(1e-12));
}

TEST_CASE("curve validation") {
  SpectrumCurve c;
  c.push(0.5, 1.0, 0.1);
  c.push(0.4, 1.0, 0.1);
  CHECK_THROWS_AS(c.validate(), Error);
  SpectrumCurve d;
  d.push(0.5, -1e-3, 0.1);
  CHECK_THROWS_AS(d.validate(), Error);
  SpectrumCurve e;
  e.push(4.0, 1.0, 0.1);
  CHECK_THROWS_AS(e.validate(), Error);
  SpectrumCurve ok;
  ok.push(0.5, 0.0, std::numeric_limits<double>::quiet_NaN());
  ok.push(kPi, 2.0, 0.1);
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("exponential MC matches S_exp within error bars") {
  const int N = 64, R = 20000;
  const auto d = SpacingDistribution::exponential();
  const auto grid = discrete_grid(N);
  SpectrumAccumulator acc(N, 1.0, grid, {}, R, 16);
  std::vector<double> lv(N);
  for (int r = 0; r < R; ++r) {
    SeededStream s(77, r);
    gen_uncorrelated_into(d, s, lv);
    acc.add(acc.batch_of(r), lv);
  }
  const auto c = acc.power_spectrum();
  double chi2 = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = s_uncorrelated_exact(N, grid[i], 1.0);
    chi2 += std::pow((c.value[i] - t) / c.stderr_[i], 2);
  }
  CHECK(chi2 / grid.size() < 3.0);
}
