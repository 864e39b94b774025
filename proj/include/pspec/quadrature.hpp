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

#include <vector>

namespace pspec {

struct Rule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre with n in {7, 10, 15, 20, 25, 30}; other n round up to the next size.
const Rule& gauss_legendre(int n);

// Kronrod 15-point rule and its embedded 7-point Gauss weights (zero off the Gauss nodes).
struct KronrodRule {
  std::vector<double> x;
  std::vector<double> wk;
  std::vector<double> wg;
};
const KronrodRule& kronrod15();

}  // namespace pspec
