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

#include "pspec/dpv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pspec/error.hpp"

namespace pspec {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kPi = 3.141592653589793;

template <class R> R pi_of();
template <> double pi_of<double>() { return kPi; }
template <> ExtReal pi_of<ExtReal>() { return ddconst::pi; }

template <class V> struct base_of;
template <class R> struct base_of<Cx<R>> { using type = R; };
template <class R> struct base_of<Dual<Cx<R>>> { using type = R; };

template <class R> inline bool is_zero(const Cx<R>& a) {
  return to_double(a.re) == 0.0 && to_double(a.im) == 0.0;
}
template <class T> inline bool is_zero(const Dual<T>& a) { return is_zero(a.v); }

[[noreturn]] void singular_step(const char* what, int n, double phi, cd zeta) {
  std::ostringstream os;
  os << "dPV singular step (" << what << ") at n=" << n << ", phi=" << phi << ", zeta=" << zeta;
  fail(Status::singular, os.str());
}

// Recurrence in value type V (complex, or dual complex for the zeta-derivative).
template <class V>
struct Rec {
  using R = typename base_of<V>::type;
  V t, tb, zeta;
  V g, f, gb, fb, r, rb;
  V P, Pprev, rho;
  int n = 1;
  double phi = 0.0;
  cd zeta_d;
  bool trivial = false;

  void init(double phi_in, const V& zeta_in, cd zeta_diag) {
    phi = phi_in;
    zeta = zeta_in;
    zeta_d = zeta_diag;
    Cx<R> tc = cis(phi, static_cast<const Cx<R>*>(nullptr));
    t = V(tc);
    tb = V(conj(tc));
    n = 1;
    trivial = (zeta_diag == cd(0.0, 0.0));
    if (trivial) {
      // g_1 vanishes here; Phi stays 1 and both reflection coefficients stay 0
      g = gb = f = fb = r = rb = V(0.0);
      Pprev = P = rho = V(1.0);
      return;
    }
    R inv_pi = R(1.0) / pi_of<R>();
    Cx<R> iphi(R(0.0), R(phi));
    // phi - sin(phi), formed in the working precision
    R phi_minus_sin = R(phi) - tc.im;
    V c = zeta * V(Cx<R>(R(0.0), -inv_pi));  // zeta / (i pi)
    V w0 = 2.0 - zeta * V(Cx<R>(phi_minus_sin * inv_pi));
    V wp = 1.0 - c * ((t - 1.0) * (t - 3.0) * 0.25 + V(iphi * 0.5));
    V wm = 1.0 + c * ((tb - 1.0) * (tb - 3.0) * 0.25 - V(iphi * 0.5));
    if (is_zero(w0)) singular_step("w0 = 0", 1, phi, zeta_d);
    V iw0 = inv(w0);
    r = -(wm * iw0);
    rb = -(wp * iw0);
    V den = w0 - 2.0 * t * wm;
    V denb = w0 - 2.0 * wp;
    if (is_zero(den) || is_zero(denb)) singular_step("initial g", 1, phi, zeta_d);
    g = t * (w0 - 2.0 * wm) / den;
    gb = (w0 - 2.0 * wp * tb) / denb;
    f = V(0.0);
    fb = V(0.0);
    Pprev = V(1.0);
    P = w0 * 0.5;
    rho = P;
    n = 1;
  }

  void step() {
    if (trivial) {
      ++n;
      return;
    }
    const double dn = n;
    const double cn = (dn + 1.0) * (dn + 1.0) / (dn * (dn + 2.0));
    rho = rho * (cn * (1.0 - r * rb));
    Pprev = P;
    P = P * rho;

    V A = g - 1.0, B = g - t;
    V AB = A * B;
    if (is_zero(AB)) singular_step("g in {1, t}", n, phi, zeta_d);
    f = 2.0 + (dn * B + (dn + 1.0) * t * A) / AB - f;

    V Ab = gb - 1.0, Bb = t * gb - 1.0;
    V ABb = Ab * Bb;
    if (is_zero(ABb)) singular_step("gbar in {1, 1/t}", n, phi, zeta_d);
    fb = ((dn + 1.0) * Bb + dn * Ab) / ABb - fb;

    V fden = f * (f - 2.0) * g;
    if (is_zero(fden)) singular_step("f in {0, 2}", n, phi, zeta_d);
    V fn = f + dn;
    g = t * fn * fn / fden;

    V fbden = fb * fb * t * gb;
    if (is_zero(fbden)) singular_step("fbar = 0", n, phi, zeta_d);
    V fbn = fb + dn;
    gb = fbn * (fbn + 2.0) / fbden;

    const double q = (dn + 1.0) / (dn + 2.0);
    V gm1 = g - 1.0, gbmt = gb - tb;
    if (is_zero(gm1) || is_zero(gbmt)) singular_step("reflection update", n, phi, zeta_d);
    r = r * (1.0 - g * tb) / gm1 * q;
    rb = rb * (1.0 - gb) / gbmt * q;
    ++n;
  }
};

template <class R>
GfPoint run_value(int N, double phi, cd zeta) {
  Rec<Cx<R>> rec;
  rec.init(phi, Cx<R>(zeta), zeta);
  while (rec.n < N) rec.step();
  if (!finite(rec.P)) singular_step("non-finite result", N, phi, zeta);
  GfPoint out;
  out.N = N;
  out.phi = phi;
  out.zeta = zeta;
  out.value = rec.P.to_std();
  return out;
}

// dPhi/dzeta at zeta = 0: minus the mean number of levels in (0, phi).
double mean_count(int N, double phi) {
  double acc = 0.0;
  for (int d = N; d >= 1; --d) acc += (N + 1 - d) * std::sin(d * phi) / d;
  return (N * phi - 2.0 * acc / (N + 1)) / kTwoPi;
}

template <class R>
GfPoint run_dual(int N, double phi, cd zeta) {
  if (zeta == cd(0.0, 0.0)) {
    GfPoint out;
    out.N = N;
    out.phi = phi;
    out.zeta = zeta;
    out.value = 1.0;
    out.dzeta = -mean_count(N, phi);
    out.has_derivative = true;
    return out;
  }
  using V = Dual<Cx<R>>;
  Rec<V> rec;
  rec.init(phi, V(Cx<R>(zeta), Cx<R>(R(1.0))), zeta);
  while (rec.n < N) rec.step();
  if (!finite(rec.P)) singular_step("non-finite result", N, phi, zeta);
  GfPoint out;
  out.N = N;
  out.phi = phi;
  out.zeta = zeta;
  out.value = rec.P.v.to_std();
  out.dzeta = rec.P.d.to_std();
  out.has_derivative = true;
  return out;
}

void copy_out(const Rec<ExtComplex>& rec, DpvState& s) {
  s.n = rec.n;
  s.phi = rec.phi;
  s.t = rec.t;
  s.zeta = rec.zeta;
  s.g = rec.g;
  s.f = rec.f;
  s.gb = rec.gb;
  s.fb = rec.fb;
  s.r = rec.r;
  s.rb = rec.rb;
  s.phi_prev = rec.Pprev;
  s.phi_cur = rec.P;
}

// Integral of v^j / (1 + v^2) over [0, u].
double endpoint_integral(int j, double u) {
  if (u < 0.5) {
    double u2 = u * u;
    double term = std::pow(u, j + 1);
    double sum = 0.0;
    for (int k = 0; k < 200; ++k) {
      double add = term / (j + 1 + 2 * k);
      sum += (k % 2 == 0) ? add : -add;
      if (add < 1e-18 * std::abs(sum)) break;
      term *= u2;
    }
    return sum;
  }
  double i0 = std::atan(u), i1 = 0.5 * std::log1p(u * u);
  double a = i0, b = i1;  // I_{k-2}, I_{k-1}
  if (j == 0) return a;
  if (j == 1) return b;
  double c = 0.0;
  for (int k = 2; k <= j; ++k) {
    c = std::pow(u, k - 1) / (k - 1) - a;
    a = b;
    b = c;
  }
  return c;
}

}  // namespace

InitialWeights initial_weights(double phi, cd zeta) {
  require(phi > 0.0 && phi < kTwoPi, Status::domain,
          "initial_weights: phi must lie in (0, 2pi); use the endpoint series");
  ExtComplex z(zeta);
  Cx<ExtReal> tc = cis(phi, static_cast<const ExtComplex*>(nullptr));
  ExtReal inv_pi = ExtReal(1.0) / ddconst::pi;
  ExtComplex iphi(ExtReal(0.0), ExtReal(phi));
  ExtComplex c = z * ExtComplex(ExtReal(0.0), -inv_pi);
  ExtComplex t = tc, tb = conj(tc);
  ExtComplex w0 = 2.0 - z * ExtComplex((ExtReal(phi) - tc.im) * inv_pi);
  ExtComplex wp = 1.0 - c * ((t - 1.0) * (t - 3.0) * 0.25 + iphi * 0.5);
  ExtComplex wm = 1.0 + c * ((tb - 1.0) * (tb - 3.0) * 0.25 - iphi * 0.5);
  return {w0.to_std(), wm.to_std(), wp.to_std()};
}

DpvState dpv_init(double phi, cd zeta) {
  require(phi > 0.0 && phi < kTwoPi, Status::domain, "dpv_init: phi must lie in (0, 2pi)");
  Rec<ExtComplex> rec;
  rec.init(phi, ExtComplex(zeta), zeta);
  DpvState s;
  copy_out(rec, s);
  return s;
}

void dpv_advance(DpvState& s) {
  Rec<ExtComplex> rec;
  rec.n = s.n;
  rec.phi = s.phi;
  rec.t = s.t;
  rec.tb = conj(s.t);
  rec.zeta = s.zeta;
  rec.zeta_d = s.zeta.to_std();
  rec.trivial = (rec.zeta_d == cd(0.0, 0.0));
  rec.g = s.g;
  rec.f = s.f;
  rec.gb = s.gb;
  rec.fb = s.fb;
  rec.r = s.r;
  rec.rb = s.rb;
  rec.P = s.phi_cur;
  rec.Pprev = s.phi_prev;
  rec.rho = s.phi_cur / s.phi_prev;
  rec.step();
  copy_out(rec, s);
}

GfPoint phi_dpv(int N, double phi, cd zeta, bool want_derivative, Precision precision,
                double delta_end) {
  require(N >= 1, Status::domain, "phi_dpv: N must be >= 1");
  require(phi > 0.0 && phi < kTwoPi, Status::domain,
          "phi_dpv: phi must lie strictly inside (0, 2pi); use phi_series at the endpoints");
  if (delta_end > 0.0 && (phi < delta_end || phi > kTwoPi - delta_end)) {
    std::ostringstream os;
    os << "phi_dpv: phi=" << phi << " within endpoint margin " << delta_end << "; use phi_series";
    fail(Status::domain, os.str());
  }
  if (precision == Precision::extended)
    return want_derivative ? run_dual<ExtReal>(N, phi, zeta) : run_value<ExtReal>(N, phi, zeta);
  return want_derivative ? run_dual<double>(N, phi, zeta) : run_value<double>(N, phi, zeta);
}

GfPoint phi_series(int N, double phi, cd zeta, bool want_derivative, double* error_estimate) {
  require(N >= 1, Status::domain, "phi_series: N must be >= 1");
  require(phi >= 0.0 && phi <= kTwoPi, Status::domain, "phi_series: phi outside [0, 2pi]");
  GfPoint out;
  out.N = N;
  out.phi = phi;
  out.zeta = zeta;
  out.has_derivative = want_derivative;
  if (phi > kPi) {
    // Reflect: Phi(phi; zeta) = (1-zeta)^N Phi(2pi-phi; zeta/(zeta-1)).
    cd one_minus = 1.0 - zeta;
    require(std::abs(one_minus) > 1e-12, Status::domain,
            "phi_series: reflection needs zeta != 1 near phi = 2pi");
    cd zr = zeta / (zeta - 1.0);
    GfPoint b = phi_series(N, kTwoPi - phi, zr, want_derivative, error_estimate);
    cd pw = ipow(Cx<ExtReal>(one_minus), N).to_std();
    out.value = pw * b.value;
    if (want_derivative) {
      cd pw1 = ipow(Cx<ExtReal>(one_minus), N - 1).to_std();
      out.dzeta = -double(N) * pw1 * b.value - pw * b.dzeta / ((zeta - 1.0) * (zeta - 1.0));
    }
    if (error_estimate) *error_estimate *= std::abs(pw);
    return out;
  }
  const double n = N;
  const double c2 = n * (n + 1.0) * (n + 2.0) / (3.0 * kPi);
  const cd s2 = zeta * c2;
  const double a4 = -(2.0 * n * n + 4.0 * n + 9.0) / 15.0;
  const double a6 = (n * n * n * n + 4.0 * n * n * n + 21.0 * n * n + 34.0 * n + 45.0) / 105.0;
  const double a7 = -11.0 * (n * n + 2.0 * n + 7.0) / 150.0;
  const double p8 = -2.0 * std::pow(n, 6) - 12.0 * std::pow(n, 5) - 107.0 * std::pow(n, 4) -
                    348.0 * n * n * n - 1115.0 * n * n - 1566.0 * n - 1575.0;
  const double a9 =
      (457.0 * std::pow(n, 4) + 1828.0 * n * n * n + 10591.0 * n * n + 17526.0 * n + 33648.0) /
      55125.0;

  const cd sg[8] = {s2,                                // j=2
                    a4 * s2,                           // 4
                    s2 * s2 / 3.0,                     // 5
                    a6 * s2,                           // 6
                    a7 * s2 * s2,                      // 7
                    s2 * (p8 + 525.0 * s2 * s2) / 4725.0,  // 8
                    a9 * s2 * s2,                      // 9
                    0.0};
  const cd dsg[7] = {c2,
                     a4 * c2,
                     2.0 * s2 * c2 / 3.0,
                     a6 * c2,
                     2.0 * a7 * s2 * c2,
                     c2 * (p8 + 1575.0 * s2 * s2) / 4725.0,
                     2.0 * a9 * s2 * c2};
  const int js[7] = {2, 4, 5, 6, 7, 8, 9};

  if (phi == 0.0) {
    out.value = 1.0;
    out.dzeta = 0.0;
    if (error_estimate) *error_estimate = 0.0;
    return out;
  }
  const double u = std::tan(0.5 * phi);
  cd expo = 0.0, dexpo = 0.0, tail = 0.0;
  for (int k = 0; k < 7; ++k) {
    double I = endpoint_integral(js[k], u);
    expo += sg[k] * I;
    dexpo += dsg[k] * I;
    if (k >= 5) tail += sg[k] * I;
  }
  out.value = std::exp(-expo);
  if (want_derivative) out.dzeta = -out.value * dexpo;
  if (error_estimate) *error_estimate = std::abs(out.value) * std::abs(tail);
  return out;
}

double default_delta_end(int N, const PhiOptions& opt) {
  return opt.delta_scale / std::max(N, 1);
}

GfPoint phi_eval(int N, double phi, cd zeta, bool want_derivative, const PhiOptions& opt) {
  require(N >= 1, Status::domain, "phi_eval: N must be >= 1");
  require(phi >= 0.0 && phi <= kTwoPi, Status::domain, "phi_eval: phi outside [0, 2pi]");
  const double delta = default_delta_end(N, opt);
  const cd one_minus = 1.0 - zeta;
  const bool reflect = opt.use_symmetry && phi > kPi && std::abs(one_minus) > 1e-8;

  auto base = [&](double p, cd z) -> GfPoint {
    if (p <= delta || p >= kTwoPi - delta) return phi_series(N, p, z, want_derivative);
    return phi_dpv(N, p, z, want_derivative, opt.precision);
  };

  if (!reflect) {
    GfPoint out = base(phi, zeta);
    out.phi = phi;
    return out;
  }
  const cd zr = zeta / (zeta - 1.0);
  GfPoint b = base(kTwoPi - phi, zr);
  const cd pw1 = ipow(Cx<ExtReal>(one_minus), N - 1).to_std();
  const cd pw = pw1 * one_minus;
  GfPoint out;
  out.N = N;
  out.phi = phi;
  out.zeta = zeta;
  out.value = pw * b.value;
  if (want_derivative) {
    out.has_derivative = true;
    out.dzeta = -double(N) * pw1 * b.value - pw * b.dzeta / ((zeta - 1.0) * (zeta - 1.0));
  }
  return out;
}

int dpv_precision_divergence(int N, double phi, cd zeta, double threshold) {
  Rec<Cx<double>> lo;
  Rec<ExtComplex> hi;
  lo.init(phi, Cx<double>(zeta), zeta);
  hi.init(phi, ExtComplex(zeta), zeta);
  while (true) {
    if (std::abs(lo.P.to_std() - hi.P.to_std()) > threshold) return lo.n;
    if (lo.n >= N) return -1;
    lo.step();
    hi.step();
  }
}

std::vector<DpvTraceRow> dpv_trace(int N, double phi, cd zeta) {
  require(phi > 0.0 && phi < kTwoPi, Status::domain, "dpv_trace: phi must lie in (0, 2pi)");
  Rec<Cx<double>> lo;
  Rec<ExtComplex> hi;
  lo.init(phi, Cx<double>(zeta), zeta);
  hi.init(phi, ExtComplex(zeta), zeta);
  std::vector<DpvTraceRow> rows;
  while (true) {
    cd v = hi.P.to_std();
    rows.push_back({hi.n, v, std::abs(lo.P.to_std() - v), std::abs((hi.r * hi.rb).to_std())});
    if (hi.n >= N) break;
    lo.step();
    hi.step();
  }
  return rows;
}

}  // namespace pspec
