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

#include "pspec/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pspec {

namespace {

template <unsigned P>
Rule expand_gauss() {
  using G = boost::math::quadrature::gauss<double, P>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  Rule r;
  // Boost stores the non-negative half; the zero node (odd P) comes first.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      r.x.push_back(0.0);
      r.w.push_back(w[i]);
    } else {
      r.x.push_back(a[i]);
      r.w.push_back(w[i]);
      r.x.push_back(-a[i]);
      r.w.push_back(w[i]);
    }
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static const Rule r7 = expand_gauss<7>();
  static const Rule r10 = expand_gauss<10>();
  static const Rule r15 = expand_gauss<15>();
  static const Rule r20 = expand_gauss<20>();
  static const Rule r25 = expand_gauss<25>();
  static const Rule r30 = expand_gauss<30>();
  if (n <= 7) return r7;
  if (n <= 10) return r10;
  if (n <= 15) return r15;
  if (n <= 20) return r20;
  if (n <= 25) return r25;
  return r30;
}

const KronrodRule& kronrod15() {
  static const KronrodRule rule = [] {
    using K = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G = boost::math::quadrature::gauss<double, 7>;
    const auto& xa = K::abscissa();
    const auto& wk = K::weights();
    const auto& ga = G::abscissa();
    const auto& gw = G::weights();
    KronrodRule r;
    auto gauss_weight = [&](double x) {
      for (std::size_t j = 0; j < ga.size(); ++j)
        if (std::abs(ga[j] - x) < 1e-14) return gw[j];
      return 0.0;
    };
    for (std::size_t i = 0; i < xa.size(); ++i) {
      double g = gauss_weight(xa[i]);
      if (xa[i] == 0.0) {
        r.x.push_back(0.0);
        r.wk.push_back(wk[i]);
        r.wg.push_back(g);
      } else {
        for (double s : {1.0, -1.0}) {
          r.x.push_back(s * xa[i]);
          r.wk.push_back(wk[i]);
          r.wg.push_back(g);
        }
      }
    }
    return r;
  }();
  return rule;
}

}  // namespace pspec
