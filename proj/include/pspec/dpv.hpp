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

// Generating function Phi_N(phi; zeta) of the tuned CUE via the discrete Painleve V
// recurrences (extended precision), with endpoint series and a dispatcher.

#include <complex>
#include <vector>

#include "pspec/scalar.hpp"

namespace pspec {

using cd = std::complex<double>;

enum class Precision { standard, extended };

struct GfPoint {
  int N = 0;
  double phi = 0.0;
  cd zeta{};
  cd value{};
  cd dzeta{};
  bool has_derivative = false;
};

struct InitialWeights {
  cd w0, wm1, wp1;
};

// Closed-form moments w_0, w_{-1}, w_{+1}; phi in (0, 2pi).
InitialWeights initial_weights(double phi, cd zeta);

// Recurrence state after step n: phi_cur = Phi_n, phi_prev = Phi_{n-1}.
struct DpvState {
  int n = 1;
  double phi = 0.0;
  ExtComplex t, zeta;
  ExtComplex g, f, gb, fb;
  ExtComplex r, rb;
  ExtComplex phi_prev, phi_cur;
};

DpvState dpv_init(double phi, cd zeta);
void dpv_advance(DpvState& s);

// Raw recurrence, no symmetry or series. Requires delta_end <= phi <= 2pi - delta_end;
// pass delta_end = 0 to skip the margin check.
GfPoint phi_dpv(int N, double phi, cd zeta, bool want_derivative,
                Precision precision = Precision::extended, double delta_end = 0.0);

// Endpoint series, valid for small phi or for 2pi - phi small (via symmetry).
// error_estimate receives the size of the last two series terms.
GfPoint phi_series(int N, double phi, cd zeta, bool want_derivative,
                   double* error_estimate = nullptr);

struct PhiOptions {
  Precision precision = Precision::extended;
  double delta_scale = 0.25;  // delta_end = delta_scale / N
  bool use_symmetry = true;   // evaluate phi > pi through the reflected point
};

double default_delta_end(int N, const PhiOptions& opt = {});

// Dispatcher: series near the endpoints, recurrence elsewhere.
GfPoint phi_eval(int N, double phi, cd zeta, bool want_derivative, const PhiOptions& opt = {});

// First n at which double and extended recurrences differ by more than threshold; -1 if never.
int dpv_precision_divergence(int N, double phi, cd zeta, double threshold = 1e-8);

struct DpvTraceRow {
  int n;
  cd value;           // extended
  double diff_double; // |double - extended|
  double rr;          // |r_n rbar_n|
};
std::vector<DpvTraceRow> dpv_trace(int N, double phi, cd zeta);

}  // namespace pspec
