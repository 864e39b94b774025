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

// Exact finite-N references for the tuned-CUE generating function.

#include <complex>
#include <vector>

#include "pspec/dpv.hpp"

namespace pspec {

// (int_0^{2pi} - zeta int_0^phi) dtheta/2pi |1-e^{i theta}|^2 e^{-i k theta}
cd toeplitz_moment(int k, double phi, cd zeta);
// d/dzeta of toeplitz_moment
cd toeplitz_moment_dzeta(int k, double phi);

// det[M_{j-l}]_{j,l=0..N-1} / (N+1), derivative by the trace identity.
GfPoint phi_toeplitz(int N, double phi, cd zeta, bool want_derivative = true);

// Tensor-product quadrature of the joint density, N in {1,2,3}.
cd phi_bruteforce(int N, double phi, cd zeta, int nodes_per_piece = 24);

// Nystrom discretisation of det(I - zeta K_phi) with the conditioned kernel.
cd phi_fredholm(int N, double phi, cd zeta, int nodes = 40);

// E_N(l; phi), l = 0..N, by roots-of-unity evaluation of the Toeplitz route.
std::vector<double> extract_probabilities(int N, double phi);

double sine_kernel(int M, double theta);  // sin(M theta/2)/sin(theta/2), limit M at 0
double tcue_kernel(int N, double theta, double theta_p);

// Szego-Askey polynomials, orthonormal for the weight 1 - cos(theta) on the circle.
cd szego_askey(int l, cd z);
cd szego_askey_reciprocal(int l, cd z);  // z^l conj(psi_l(1/conj z))

// Solve a dense complex system by LU with partial pivoting (small sizes).
struct LuResult {
  cd det;
  double min_pivot_ratio;  // smallest |pivot| / largest |pivot|
};
LuResult lu_determinant(std::vector<cd> a, int n);

}  // namespace pspec
