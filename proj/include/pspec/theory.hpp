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

// Finite-N power spectrum from variances, from a generating function, and for the tuned CUE.

#include <functional>
#include <vector>

#include "pspec/dpv.hpp"

namespace pspec {

struct OperatorContext {
  int N = 0;
  double omega = 0.0;
  cd z;        // e^{i omega}
  cd z_over;   // z / (1 - z)
  cd tail;     // (1 - z^{-N}) / (1 - z)

  OperatorContext(int N, double omega);
  // (z d/dz - N - tail) applied to sum_l c_l z^l, given the coefficients c_1..c_N.
  cd apply_to_polynomial(const std::vector<double>& c) const;
};

// First master formula.
double s_stationary_from_variances(const std::vector<double>& vars, double delta, double omega);

// Closed-form subtractions.
double s_tilde(int N, double omega);
double s_dbtilde(int N, double omega);

// Provider of Phi_N(eps; 1 - z) and d/dz of it.
using GeneratingFunction = std::function<void(double eps, cd z, cd& phi, cd& dphi_dz)>;

struct MasterOptions {
  double tolerance = 1e-10;
};

// Second master formula.
double s_from_generating_fn(const GeneratingFunction& gf, double delta, int N, double omega,
                            const MasterOptions& opt = {});

enum class Engine { dpv, toeplitz };

struct QuadOptions {
  Engine engine = Engine::dpv;
  PhiOptions phi;
  double tolerance = 1e-12;   // absolute target on J (derivative part scaled by 1/N)
  double panel_scale = 2.0;   // initial panel width = panel_scale * 2pi / N
  int max_evaluations = 4000000;
};

// Integrals over the full circle with measure dphi/2pi.
struct PhiIntegrals {
  cd i0;   // int Phi
  cd j;    // int phi Phi
  cd k;    // int phi dPhi/dzeta
  double error = 0.0;
  long evaluations = 0;
  double max_abs_phi = 0.0;
};

PhiIntegrals integrate_phi(int N, cd zeta, bool want_derivative, const QuadOptions& opt = {});

struct TcueResult {
  double value = 0.0;
  double imag_residue = 0.0;  // |Im| of the pre-Re expression
  double error = 0.0;         // propagated quadrature error estimate
  PhiIntegrals integrals;
};

TcueResult s_tcue(int N, double omega, const QuadOptions& opt = {});
// Discrete frequencies omega'_k = 2 pi k / (N+1).
TcueResult s_tcue_discrete(int N, int k, const QuadOptions& opt = {});

struct In0Check {
  cd numeric;
  cd closed_form;
  double residual;
  long evaluations;
};
In0Check i_n0_check(int N, cd zeta, const QuadOptions& opt = {});
cd i_n0_closed_form(int N, cd zeta);

}  // namespace pspec
