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

#include "pspec/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pspec/error.hpp"

namespace pspec {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
using cd = std::complex<double>;

// (e^{ix} - 1)/(ix), stable near x = 0.
cd expm1_over(double x) {
  if (std::abs(x) < 1e-4) return cd(1.0 - x * x / 6.0, x / 2.0 - x * x * x / 24.0);
  return (std::polar(1.0, x) - 1.0) / cd(0.0, x);
}

// e^z - 1 without cancellation for small |z|.
cd cexpm1(cd z) {
  const double a = z.real(), b = z.imag();
  const double sb = std::sin(0.5 * b);
  const double em = std::expm1(a);
  return {em * std::cos(b) - 2.0 * sb * sb, (em + 1.0) * std::sin(b)};
}

// log(1 - i y) for real y.
cd log_one_minus_iy(double y) { return {0.5 * std::log1p(y * y), -std::atan(y)}; }

}  // namespace

cd SpacingDistribution::char_fn(double tau) const {
  const double w = kTwoPi * tau;
  switch (kind) {
    case SpacingKind::exponential: return 1.0 / cd(1.0, -w);
    case SpacingKind::erlang3: {
      const cd b = 1.0 / cd(1.0, -w / 3.0);
      return b * b * b;
    }
    case SpacingKind::inverse_gaussian: {
      // mu = 1, lambda = 3: exp((lambda/mu)(1 - sqrt(1 - 2 i mu^2 w / lambda)))
      const double mu = 1.0, lam = 3.0;
      return std::exp(lam / mu * (1.0 - std::sqrt(cd(1.0, -2.0 * mu * mu * w / lam))));
    }
    case SpacingKind::uniform: return expm1_over(2.0 * w);
    case SpacingKind::degenerate: return std::polar(1.0, w);
    case SpacingKind::custom:
      require(static_cast<bool>(custom_char_fn), Status::domain, "custom distribution has no characteristic function");
      return custom_char_fn(tau);
  }
  fail(Status::internal, "char_fn: unhandled distribution");
}

cd SpacingDistribution::log_char_fn(double tau) const {
  const double w = kTwoPi * tau;
  switch (kind) {
    case SpacingKind::exponential: return -log_one_minus_iy(w);
    case SpacingKind::erlang3: return -3.0 * log_one_minus_iy(w / 3.0);
    case SpacingKind::inverse_gaussian: {
      // lambda (1 - sqrt(1 - x)) = lambda x / (1 + sqrt(1 - x)), x = 2 i w / lambda
      const cd x(0.0, 2.0 * w / 3.0);
      return 3.0 * x / (1.0 + std::sqrt(1.0 - x));
    }
    case SpacingKind::uniform: {
      // e^{i w} sin(w)/w
      double sm1;
      if (std::abs(w) < 0.1) {
        const double w2 = w * w;
        sm1 = -w2 / 6.0 * (1.0 - w2 / 20.0 * (1.0 - w2 / 42.0 * (1.0 - w2 / 72.0)));
      } else {
        sm1 = std::sin(w) / w - 1.0;
      }
      return {std::log1p(sm1), w};
    }
    case SpacingKind::degenerate: return {0.0, w};
    case SpacingKind::custom: return std::log(char_fn(tau));
  }
  fail(Status::internal, "log_char_fn: unhandled distribution");
}

cd SpacingDistribution::one_minus_char_fn(double tau) const {
  if (kind == SpacingKind::custom) return 1.0 - char_fn(tau);
  return -cexpm1(log_char_fn(tau));
}

double SpacingDistribution::density(double s) const {
  if (s <= 0.0) return 0.0;
  switch (kind) {
    case SpacingKind::exponential: return std::exp(-s);
    case SpacingKind::erlang3: return 13.5 * s * s * std::exp(-3.0 * s);
    case SpacingKind::inverse_gaussian:
      return std::sqrt(3.0 / (kTwoPi * s * s * s)) * std::exp(-3.0 * (s - 1.0) * (s - 1.0) / (2.0 * s));
    case SpacingKind::uniform: return s < 2.0 ? 0.5 : 0.0;
    default: fail(Status::domain, "density: not available for '" + name + "'");
  }
}

SpacingDistribution SpacingDistribution::exponential() { return {SpacingKind::exponential, "exp", 1.0, 1.0, {}}; }
SpacingDistribution SpacingDistribution::erlang3() { return {SpacingKind::erlang3, "erlang3", 1.0, 1.0 / 3.0, {}}; }
SpacingDistribution SpacingDistribution::inverse_gaussian() {
  return {SpacingKind::inverse_gaussian, "ig13", 1.0, 1.0 / 3.0, {}};
}
SpacingDistribution SpacingDistribution::uniform() { return {SpacingKind::uniform, "uniform", 1.0, 1.0 / 3.0, {}}; }
SpacingDistribution SpacingDistribution::degenerate() {
  return {SpacingKind::degenerate, "degenerate", 1.0, 0.0, {}};
}
SpacingDistribution SpacingDistribution::custom(std::string name, double mean, double variance,
                                                std::function<cd(double)> psi) {
  require(mean > 0.0 && variance >= 0.0, Status::domain, "custom distribution: need mean > 0, variance >= 0");
  return {SpacingKind::custom, std::move(name), mean, variance, std::move(psi)};
}

SpacingDistribution SpacingDistribution::by_name(const std::string& n) {
  if (n == "exp") return exponential();
  if (n == "erlang3") return erlang3();
  if (n == "ig13") return inverse_gaussian();
  if (n == "uniform") return uniform();
  if (n == "degenerate") return degenerate();
  fail(Status::domain, "unknown spacing distribution '" + n + "' (exp, erlang3, ig13, uniform, degenerate)");
}

double s_uncorrelated_exact(int N, double omega, double sigma2) {
  require(N >= 1, Status::domain, "s_uncorrelated_exact: N must be >= 1");
  if (!(omega > 0.0 && omega <= kPi * (1.0 + 1e-14))) {
    std::ostringstream os;
    os << "s_uncorrelated_exact: omega=" << omega << " outside (0, pi]";
    fail(Status::domain, os.str());
  }
  const double sh = std::sin(omega / 2.0);
  const double n2 = 2.0 * N + 1.0;
  return n2 / (4.0 * N) * sigma2 / (sh * sh) * (1.0 - std::sin((N + 0.5) * omega) / (n2 * sh));
}

Regime regime_from_name(const std::string& s) {
  if (s == "infrared") return Regime::infrared;
  if (s == "intermediate") return Regime::intermediate;
  if (s == "fixed") return Regime::fixed;
  fail(Status::domain, "unknown regime '" + s + "' (infrared, intermediate, fixed)");
}

double s_scaling(Regime regime, double a, double sigma2) {
  require(a > 0.0, Status::domain, "s_scaling: argument must be positive");
  switch (regime) {
    case Regime::infrared: {
      // 1 - sin(a)/a, with a series for small a to keep the O(a^2) behaviour.
      const double r = a < 1e-3 ? a * a / 6.0 - a * a * a * a / 120.0 : 1.0 - std::sin(a) / a;
      return 2.0 * sigma2 * r;
    }
    case Regime::intermediate: return 2.0 * sigma2;
    case Regime::fixed: {
      const double sh = std::sin(a / 2.0);
      return sigma2 * a * a / (2.0 * sh * sh);
    }
  }
  fail(Status::internal, "s_scaling: unhandled regime");
}

double form_factor_exact(int N, double tau, const SpacingDistribution& dist) {
  require(N >= 1, Status::domain, "form_factor_exact: N must be >= 1");
  require(tau != 0.0, Status::domain, "form_factor_exact: tau = 0 excluded (use the sigma^2 limit)");
  const cd psi = dist.char_fn(tau);
  const cd om = dist.one_minus_char_fn(tau);
  require(std::abs(om) > 0.0, Status::domain, "form_factor_exact: Psi(tau) = 1");
  // 1 - Psi^N through the logarithm keeps small tau accurate
  const cd one_minus_pn = dist.kind == SpacingKind::custom ? 1.0 - std::pow(psi, N)
                                                           : -cexpm1(double(N) * dist.log_char_fn(tau));
  const cd geo = one_minus_pn / om;
  const double n = N;
  return 1.0 + 2.0 / n * std::real(psi / om * (n - geo)) - std::norm(psi * geo) / n;
}

double form_factor_scaling(Regime regime, double a, const SpacingDistribution& dist) {
  require(a > 0.0, Status::domain, "form_factor_scaling: argument must be positive");
  const double s2 = dist.variance;
  switch (regime) {
    case Regime::infrared: {
      const double x = kTwoPi * a;
      const double r = x < 1e-3 ? x * x / 6.0 - x * x * x * x / 120.0 : 1.0 - std::sin(x) / x;
      return 2.0 * s2 * r;
    }
    case Regime::intermediate: {
      const double y = 4.0 * kPi * kPi * s2 * a * a;
      const double r = y < 1e-8 ? 1.0 - y / 2.0 : -std::expm1(-y) / y;
      return s2 * (1.0 + r);
    }
    case Regime::fixed: {
      const cd psi = dist.char_fn(a);
      return 1.0 + 2.0 * std::real(psi / dist.one_minus_char_fn(a));
    }
  }
  fail(Status::internal, "form_factor_scaling: unhandled regime");
}

double ordered_level_covariance(int l, int m, double sigma2) {
  require(l >= 1 && m >= 1, Status::domain, "ordered_level_covariance: indices start at 1");
  return sigma2 * std::min(l, m);
}

}  // namespace pspec
