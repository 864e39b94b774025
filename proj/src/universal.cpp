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

#include "pspec/universal.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "pspec/error.hpp"

namespace pspec {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
constexpr double kEulerGamma = 0.5772156649015329;

// ln G(1+z) for |z| <= 1/2 by its Taylor series.
double log_g1p(double z) {
  double s = 0.5 * z * std::log(kTwoPi) - 0.5 * (z + (1.0 + kEulerGamma) * z * z);
  double zp = z * z * z;  // z^{k+1} at k = 2
  for (int k = 2; k < 200; ++k) {
    const double term = ((k % 2 == 0) ? 1.0 : -1.0) * boost::math::zeta(double(k)) * zp / (k + 1);
    s += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(s))) break;
    zp *= z;
  }
  return s;
}

}  // namespace

double log_barnes_g(double x) {
  require(x > 0.0, Status::domain, "log_barnes_g: argument must be positive");
  // Reduce to the strip [1/2, 3/2) with G(x+1) = Gamma(x) G(x).
  double acc = 0.0;
  while (x >= 1.5) {
    x -= 1.0;
    acc += boost::math::lgamma(x);
  }
  while (x < 0.5) {
    acc -= boost::math::lgamma(x);
    x += 1.0;
  }
  return acc + log_g1p(x - 1.0);
}

double barnes_g(double x) { return std::exp(log_barnes_g(x)); }

double prefactor_A(double wt) {
  require(wt > 0.0 && wt < 0.5, Status::domain, "prefactor_A: argument outside (0, 1/2)");
  const double lg = log_barnes_g(1.0 + wt) + log_barnes_g(1.0 - wt) + log_barnes_g(2.0 + wt) +
                    log_barnes_g(2.0 - wt);
  return std::exp(lg) / (kTwoPi * std::sin(kPi * wt));
}

double prefactor_B(double wt) {
  require(wt > 0.0 && wt < 0.5, Status::domain, "prefactor_B: argument outside (0, 1/2)");
  const double w2 = wt * wt;
  return std::sin(kPi * w2) * std::pow(wt, 2.0 * w2 - 2.0) * boost::math::tgamma(2.0 - 2.0 * w2) / kTwoPi;
}

double s_small_omega(double omega) {
  require(omega > 0.0, Status::domain, "s_small_omega: omega must be positive");
  const double wt = omega / kTwoPi;
  return 1.0 / (4.0 * kPi * kPi * wt) + wt * std::log(wt) / (2.0 * kPi * kPi) + wt / 12.0;
}

namespace {

double proxy_value(int N, double omega, const QuadOptions& q) {
  const double kf = omega * (N + 1) / kTwoPi;
  int k0 = static_cast<int>(std::floor(kf));
  const int kmax = (N + 1) / 2;
  if (k0 < 1) k0 = 1;
  if (k0 >= kmax) k0 = kmax - 1;
  if (std::abs(kf - std::round(kf)) < 1e-12 && std::lround(kf) >= 1 && std::lround(kf) <= kmax)
    return s_tcue_discrete(N, static_cast<int>(std::lround(kf)), q).value;
  require(k0 >= 1, Status::domain, "s_infinity: proxy N too small for this omega");
  const double w0 = kTwoPi * k0 / (N + 1), w1 = kTwoPi * (k0 + 1) / (N + 1);
  const double f0 = w0 * s_tcue_discrete(N, k0, q).value;
  const double f1 = w1 * s_tcue_discrete(N, k0 + 1, q).value;
  const double t = (omega - w0) / (w1 - w0);
  return ((1.0 - t) * f0 + t * f1) / omega;
}

}  // namespace

UniversalResult s_infinity(double omega, const UniversalConfig& cfg) {
  if (!(omega > 0.0 && omega <= kPi)) {
    std::ostringstream os;
    os << "s_infinity: omega=" << omega << " outside (0, pi]";
    fail(Status::domain, os.str());
  }
  require(cfg.proxy_N >= 4, Status::domain, "s_infinity: proxy N must be >= 4");
  UniversalResult r;
  r.value = proxy_value(cfg.proxy_N, omega, cfg.quad);
  r.value_half = std::numeric_limits<double>::quiet_NaN();
  if (cfg.convergence_check) {
    r.value_half = proxy_value(cfg.proxy_N / 2, omega, cfg.quad);
    r.convergence = std::abs(r.value - r.value_half) / std::abs(r.value);
    r.converged = r.convergence <= cfg.tolerance;
  }
  std::ostringstream os;
  if (cfg.proxy_N < 1000) os << "proxy N=" << cfg.proxy_N << " below 1000; ";
  if (!r.converged) os << "proxy estimate moved by " << r.convergence << " between N/2 and N; ";
  if (omega >= kPi) os << "omega=pi is outside the range where the limit is established; ";
  r.warning = os.str();
  return r;
}

}  // namespace pspec
