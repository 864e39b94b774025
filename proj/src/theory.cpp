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

#include "pspec/theory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "pspec/error.hpp"
#include "pspec/oracles.hpp"
#include "pspec/quadrature.hpp"

namespace pspec {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
const cd I(0.0, 1.0);

void check_omega(double omega, const char* who) {
  if (!(omega > 0.0 && omega <= kPi)) {
    std::ostringstream os;
    os << who << ": omega=" << omega << " outside (0, pi]";
    fail(Status::domain, os.str());
  }
}

// sum_{l=1}^{N} l z^{l-1}, accurate near z = 1.
cd weighted_geometric(int N, double omega) {
  cd acc = 0.0;
  for (int l = 1; l <= N; ++l) acc += double(l) * std::polar(1.0, omega * (l - 1));
  return acc;
}

}  // namespace

OperatorContext::OperatorContext(int n, double om) : N(n), omega(om) {
  check_omega(omega, "OperatorContext");
  require(N >= 1, Status::domain, "OperatorContext: N must be >= 1");
  z = std::polar(1.0, omega);
  z_over = z / (1.0 - z);
  // (1 - z^{-N})/(1 - z) = -sum_{l=1}^{N} z^{-l}
  cd acc = 0.0;
  for (int l = 1; l <= N; ++l) acc += std::polar(1.0, -omega * l);
  tail = -acc;
}

cd OperatorContext::apply_to_polynomial(const std::vector<double>& c) const {
  cd p = 0.0, zp = 0.0;
  for (std::size_t l = 1; l <= c.size(); ++l) {
    cd zl = std::polar(1.0, omega * double(l));
    p += c[l - 1] * zl;
    zp += double(l) * c[l - 1] * zl;
  }
  return zp - double(N) * p - tail * p;
}

double s_stationary_from_variances(const std::vector<double>& vars, double delta, double omega) {
  check_omega(omega, "s_stationary_from_variances");
  require(!vars.empty(), Status::domain, "s_stationary_from_variances: empty variance list");
  require(delta > 0.0, Status::domain, "s_stationary_from_variances: delta must be positive");
  const int N = static_cast<int>(vars.size());
  OperatorContext ctx(N, omega);
  return ctx.apply_to_polynomial(vars).real() / (N * delta * delta);
}

double s_tilde(int N, double omega) {
  check_omega(omega, "s_tilde");
  return std::norm(weighted_geometric(N, omega)) / N;
}

double s_dbtilde(int N, double omega) {
  check_omega(omega, "s_dbtilde");
  const double n1 = N + 1.0;
  return s_tilde(N, omega) - n1 * n1 / (N * std::norm(1.0 - std::polar(1.0, omega)));
}

double s_from_generating_fn(const GeneratingFunction& gf, double delta, int N, double omega,
                            const MasterOptions& opt) {
  check_omega(omega, "s_from_generating_fn");
  require(N >= 1 && delta > 0.0, Status::domain, "s_from_generating_fn: need N >= 1, delta > 0");
  OperatorContext ctx(N, omega);
  const cd z = ctx.z;
  const cd zN = std::polar(1.0, omega * N);
  const cd zN1 = std::polar(1.0, omega * (N - 1));
  boost::math::quadrature::exp_sinh<double> integrator;
  double total_err = 0.0;
  auto component = [&](int which) {
    auto f = [&](double eps) {
      cd p, dp;
      gf(eps, z, p, dp);
      cd d = which < 2 ? p - zN : dp - double(N) * zN1;
      // residues at rounding level would be amplified by eps in the far tail
      const double floor = 8.0 * std::numeric_limits<double>::epsilon() * (which < 2 ? 1.0 : double(N));
      if (std::abs(d) <= floor) return 0.0;
      cd v = eps * d;
      return (which % 2 == 0) ? v.real() : v.imag();
    };
    double err = 0.0;
    double val = integrator.integrate(f, opt.tolerance, &err);
    total_err = std::max(total_err, err);
    return val;
  };
  cd integ(component(0), component(1));
  cd dinteg(component(2), component(3));
  if (!(total_err <= 1e3 * opt.tolerance * std::max(1.0, std::abs(integ)))) {
    std::ostringstream os;
    os << "s_from_generating_fn: half-line integral did not converge (error estimate " << total_err
       << "); check the decay of Phi_N(eps) - z^N";
    fail(Status::accuracy, os.str());
  }
  const cd one_minus = 1.0 - z;
  const cd H = z / one_minus * integ;
  const cd zH = z * integ / (one_minus * one_minus) + z * z / one_minus * dinteg;
  const cd op = zH - double(N) * H - ctx.tail * H;
  return 2.0 / (N * delta * delta) * op.real() - s_tilde(N, omega);
}

namespace {

struct Triple {
  cd i0, j, k;
};

struct Integrand {
  int N;
  cd zeta, z, zN, zNm2;
  bool deriv;
  bool on_circle;
  const QuadOptions& opt;
  long evaluations = 0;
  double max_abs = 0.0;

  GfPoint eval(double phi) {
    ++evaluations;
    if (opt.engine == Engine::toeplitz) return phi_toeplitz(N, phi, zeta, deriv);
    return phi_eval(N, phi, zeta, deriv, opt.phi);
  }

  Triple operator()(double phi) {
    GfPoint a = eval(phi);
    cd vm, dm;
    if (on_circle && opt.engine == Engine::dpv) {
      vm = zN * std::conj(a.value);
      if (deriv) dm = -zNm2 * (double(N) * z * std::conj(a.value) + std::conj(a.dzeta));
    } else {
      GfPoint b = eval(kTwoPi - phi);
      vm = b.value;
      dm = b.dzeta;
    }
    max_abs = std::max({max_abs, std::abs(a.value), std::abs(vm)});
    const double pm = kTwoPi - phi;
    Triple t;
    t.i0 = (a.value + vm) / kTwoPi;
    t.j = (phi * a.value + pm * vm) / kTwoPi;
    t.k = deriv ? (phi * a.dzeta + pm * dm) / kTwoPi : cd(0.0);
    return t;
  }
};

struct PanelResult {
  Triple sum;
  double err;
};

PanelResult gk15_panel(Integrand& f, double a, double b) {
  const KronrodRule& r = kronrod15();
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  std::array<Triple, 15> v;
  Triple K{}, G{};
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    v[i] = f(c + h * r.x[i]);
    K.i0 += r.wk[i] * v[i].i0;
    K.j += r.wk[i] * v[i].j;
    K.k += r.wk[i] * v[i].k;
    G.i0 += r.wg[i] * v[i].i0;
    G.j += r.wg[i] * v[i].j;
    G.k += r.wg[i] * v[i].k;
  }
  // QUADPACK-style error heuristic per component.
  auto comp_err = [&](auto get, double weight) {
    cd mean = get(K) * 0.5;
    double resasc = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) resasc += r.wk[i] * std::abs(get(v[i]) - mean);
    resasc *= h;
    double e = std::abs(get(K) - get(G)) * h;
    if (resasc != 0.0 && e != 0.0) e = resasc * std::min(1.0, std::pow(200.0 * e / resasc, 1.5));
    return e * weight;
  };
  const double kw = 1.0 / std::max(1, f.N);
  double err = std::max({comp_err([](const Triple& t) { return t.i0; }, 1.0),
                         comp_err([](const Triple& t) { return t.j; }, 1.0),
                         f.deriv ? comp_err([](const Triple& t) { return t.k; }, kw) : 0.0});
  PanelResult out;
  out.sum = {K.i0 * h, K.j * h, K.k * h};
  out.err = err;
  return out;
}

void adaptive(Integrand& f, double a, double b, double tol_density, int depth, Triple& acc,
              double& err_acc) {
  PanelResult p = gk15_panel(f, a, b);
  const double allowed = tol_density * (b - a);
  if (p.err <= allowed || depth >= 40 || f.evaluations > f.opt.max_evaluations) {
    acc.i0 += p.sum.i0;
    acc.j += p.sum.j;
    acc.k += p.sum.k;
    err_acc += p.err;
    return;
  }
  const double m = 0.5 * (a + b);
  adaptive(f, a, m, tol_density, depth + 1, acc, err_acc);
  adaptive(f, m, b, tol_density, depth + 1, acc, err_acc);
}

}  // namespace

PhiIntegrals integrate_phi(int N, cd zeta, bool want_derivative, const QuadOptions& opt) {
  require(N >= 1, Status::domain, "integrate_phi: N must be >= 1");
  if (opt.engine == Engine::toeplitz)
    require(N <= 256, Status::domain, "integrate_phi: toeplitz engine limited to N <= 256");
  const cd z = 1.0 - zeta;
  Integrand f{N, zeta, z, ipow(Cx<ExtReal>(z), N).to_std(),
              N >= 2 ? ipow(Cx<ExtReal>(z), N - 2).to_std() : 1.0 / z,
              want_derivative, std::abs(std::abs(z) - 1.0) < 1e-13, opt};

  // Breakpoints: endpoint window, geometric grading up to one panel width, then uniform.
  const double delta = default_delta_end(N, opt.phi);
  const double h0 = std::min(kPi / 4.0, opt.panel_scale * kTwoPi / N);
  std::vector<double> br{0.0};
  double x = std::min(delta, kPi);
  br.push_back(x);
  while (x < h0 && x < kPi) {
    x = std::min({2.0 * x, h0, kPi});
    br.push_back(x);
  }
  if (x < kPi) {
    const int m = std::max(1, static_cast<int>(std::ceil((kPi - x) / h0 - 1e-9)));
    const double step = (kPi - x) / m;
    for (int i = 1; i <= m; ++i) br.push_back(i == m ? kPi : x + i * step);
  }
  const double tol_density = opt.tolerance / kPi;
  Triple acc{};
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) adaptive(f, br[i], br[i + 1], tol_density, 0, acc, err);

  PhiIntegrals out;
  out.i0 = acc.i0;
  out.j = acc.j;
  out.k = acc.k;
  out.error = err;
  out.evaluations = f.evaluations;
  out.max_abs_phi = f.max_abs;
  if (f.evaluations > opt.max_evaluations || !(err <= 10.0 * opt.tolerance)) {
    std::ostringstream os;
    os << "integrate_phi: quadrature target " << opt.tolerance << " not reached (estimate " << err
       << ", " << f.evaluations << " evaluations)";
    fail(Status::accuracy, os.str());
  }
  return out;
}

namespace {

TcueResult assemble(int N, double omega, const PhiIntegrals& in, bool discrete) {
  OperatorContext ctx(N, omega);
  const cd z = ctx.z;
  const cd one_minus = 1.0 - z;
  const cd J = in.j;
  const cd Jp = -in.k;  // dzeta/dz = -1
  const cd G = z / one_minus * J;
  const cd zG = z * J / (one_minus * one_minus) + z * z / one_minus * Jp;
  const cd op = discrete ? zG - double(N + 1) * G : zG - double(N) * G - ctx.tail * G;
  const double n1 = N + 1.0;
  const double pref = n1 * n1 / (kPi * N);
  TcueResult r;
  r.value = pref * op.real() - (discrete ? 0.0 : s_dbtilde(N, omega));
  r.imag_residue = std::abs(pref * op.imag());
  r.error = pref * (std::abs(z / (one_minus * one_minus)) + (N + 1.0) / std::abs(one_minus)) * in.error +
            pref * N * in.error / std::abs(one_minus);
  r.integrals = in;
  return r;
}

}  // namespace

TcueResult s_tcue(int N, double omega, const QuadOptions& opt) {
  require(N >= 1, Status::domain, "s_tcue: N must be >= 1");
  check_omega(omega, "s_tcue");
  const cd zeta = 1.0 - std::polar(1.0, omega);
  PhiIntegrals in = integrate_phi(N, zeta, true, opt);
  return assemble(N, omega, in, false);
}

TcueResult s_tcue_discrete(int N, int k, const QuadOptions& opt) {
  require(N >= 1 && k >= 1 && 2 * k <= N + 1, Status::domain,
          "s_tcue_discrete: need 1 <= k <= (N+1)/2");
  const double omega = kTwoPi * k / (N + 1);
  const cd zeta = 1.0 - std::polar(1.0, omega);
  PhiIntegrals in = integrate_phi(N, zeta, true, opt);
  return assemble(N, omega, in, true);
}

cd i_n0_closed_form(int N, cd zeta) {
  const double n = N;
  if (std::abs(zeta) < 1e-8) {
    // (1 - (1-zeta)^{N+1})/zeta = (N+1) - C(N+1,2) zeta + ...
    return n / (n + 1.0) * ((n + 1.0) - 0.5 * (n + 1.0) * n * zeta);
  }
  const cd p = ipow(Cx<ExtReal>(1.0 - zeta), N + 1).to_std();
  return n / (n + 1.0) * (1.0 - p) / zeta;
}

In0Check i_n0_check(int N, cd zeta, const QuadOptions& opt) {
  PhiIntegrals in = integrate_phi(N, zeta, false, opt);
  In0Check c;
  c.numeric = double(N) * in.i0;
  c.closed_form = i_n0_closed_form(N, zeta);
  c.residual = std::abs(c.numeric - c.closed_form);
  c.evaluations = in.evaluations;
  return c;
}

}  // namespace pspec
