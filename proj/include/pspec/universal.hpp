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

// Large-N limit of the tuned CUE power spectrum and its special-function ingredients.

#include <string>

#include "pspec/theory.hpp"

namespace pspec {

// ln G(x) for real x > 0, and G(x).
double log_barnes_g(double x);
double barnes_g(double x);

// Prefactors of the universal law, 0 < wt < 1/2 with wt = omega / 2pi.
double prefactor_A(double wt);
double prefactor_B(double wt);

// Small-omega expansion of the universal law.
double s_small_omega(double omega);

struct UniversalConfig {
  int proxy_N = 10000;
  double tolerance = 1e-3;  // relative convergence target between proxy_N and proxy_N/2
  bool convergence_check = true;
  QuadOptions quad;
};

struct UniversalResult {
  double value = 0.0;        // proxy_N estimate
  double value_half = 0.0;   // proxy_N/2 estimate (NaN when not computed)
  double convergence = 0.0;  // |value - value_half| / |value|
  bool converged = true;
  std::string warning;
};

// The finite-N spectrum is sampled on its natural grid 2 pi k/(N+1), where it carries no
// z^N leakage, and omega * S is interpolated linearly between the two bracketing points.
UniversalResult s_infinity(double omega, const UniversalConfig& cfg = {});

}  // namespace pspec
