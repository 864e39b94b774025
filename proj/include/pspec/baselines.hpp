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

#pragma once

// Uncorrelated-spacings model: spacing distributions and closed-form spectra.

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace pspec {

enum class SpacingKind { exponential, erlang3, inverse_gaussian, uniform, degenerate, custom };

struct SpacingDistribution {
  SpacingKind kind = SpacingKind::exponential;
  std::string name = "exp";
  double mean = 1.0;
  double variance = 1.0;
  // Only used for SpacingKind::custom.
  std::function<std::complex<double>(double)> custom_char_fn;

  std::complex<double> char_fn(double tau) const;
  // log Psi and 1 - Psi, accurate for small tau.
  std::complex<double> log_char_fn(double tau) const;
  std::complex<double> one_minus_char_fn(double tau) const;
  // Density of the built-ins; throws for custom and degenerate.
  double density(double s) const;
  bool can_sample() const { return kind != SpacingKind::custom; }

  static SpacingDistribution exponential();       // Exp(1)
  static SpacingDistribution erlang3();           // Erlang(3,3)
  static SpacingDistribution inverse_gaussian();  // IG(1,3)
  static SpacingDistribution uniform();           // U(0,2)
  static SpacingDistribution degenerate();        // all spacings equal to 1
  static SpacingDistribution custom(std::string name, double mean, double variance,
                                    std::function<std::complex<double>(double)> psi);
  // Accepts exp, erlang3, ig13, uniform, degenerate.
  static SpacingDistribution by_name(const std::string& name);
};

double s_uncorrelated_exact(int N, double omega, double sigma2);

enum class Regime { infrared, intermediate, fixed };
Regime regime_from_name(const std::string& s);

// Limits of omega^2 S_N(omega) with omega = Omega/N, Omega~/N^alpha, or omega fixed.
double s_scaling(Regime regime, double argument, double sigma2);

double form_factor_exact(int N, double tau, const SpacingDistribution& dist);
// Limits of K_N with tau = T/N, tau = T~/sqrt(N), or tau fixed.
double form_factor_scaling(Regime regime, double argument, const SpacingDistribution& dist);

double ordered_level_covariance(int l, int m, double sigma2);

}  // namespace pspec
