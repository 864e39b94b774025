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

#include "pspec/generators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <sstream>

#include <Eigen/Dense>
#include <fftw3.h>

#include "pspec/error.hpp"
#include "fftw_lock.hpp"

namespace pspec {

namespace {

constexpr double kTwoPi = 6.283185307179586;
using cd = std::complex<double>;

}  // namespace

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t index, std::uint32_t stream_id)
    : seed_(seed), index_(index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                    std::uint32_t(index >> 32), stream_id, 0x70737063u};
  eng_.seed(seq);
}

double sample_spacing(const SpacingDistribution& dist, std::mt19937_64& eng) {
  switch (dist.kind) {
    case SpacingKind::exponential: return std::exponential_distribution<double>(1.0)(eng);
    case SpacingKind::erlang3: return std::gamma_distribution<double>(3.0, 1.0 / 3.0)(eng);
    case SpacingKind::inverse_gaussian: {
      // Transformation with multiple roots: mu = 1, lambda = 3.
      const double mu = 1.0, lam = 3.0;
      const double nu = std::normal_distribution<double>(0.0, 1.0)(eng);
      const double y = nu * nu;
      const double x = mu + mu * mu * y / (2.0 * lam) -
                       mu / (2.0 * lam) * std::sqrt(4.0 * mu * lam * y + mu * mu * y * y);
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(eng);
      return u <= mu / (mu + x) ? x : mu * mu / x;
    }
    case SpacingKind::uniform: return std::uniform_real_distribution<double>(0.0, 2.0)(eng);
    case SpacingKind::degenerate: return 1.0;
    case SpacingKind::custom: break;
  }
  fail(Status::domain, "no sampler for spacing distribution '" + dist.name + "'");
}

void gen_uncorrelated_into(const SpacingDistribution& dist, SeededStream& stream, std::vector<double>& out) {
  require(!out.empty(), Status::domain, "gen_uncorrelated: N must be >= 1");
  require(dist.can_sample(), Status::domain, "no sampler for spacing distribution '" + dist.name + "'");
  double acc = 0.0;
  for (double& e : out) {
    acc += sample_spacing(dist, stream.engine());
    e = acc;
  }
}

LevelSequence gen_uncorrelated(int N, const SpacingDistribution& dist, SeededStream& stream) {
  require(N >= 1, Status::domain, "gen_uncorrelated: N must be >= 1");
  std::vector<double> lv(N);
  gen_uncorrelated_into(dist, stream, lv);
  return LevelSequence(std::move(lv), dist.mean);
}

CueMethod cue_method_from_name(const std::string& s) {
  if (s == "qr") return CueMethod::qr;
  if (s == "cmv") return CueMethod::cmv;
  fail(Status::domain, "unknown CUE method '" + s + "' (qr, cmv)");
}

namespace {

std::vector<double> cue_qr(int N, std::mt19937_64& eng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd Z(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) Z(i, j) = cd(g(eng), g(eng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ();
  const Eigen::MatrixXcd& R = qr.matrixQR();
  for (int j = 0; j < N; ++j) {
    const cd d = R(j, j);
    const double a = std::abs(d);
    Q.col(j) *= (a > 0.0 ? d / a : cd(1.0));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Q, false);
  if (es.info() != Eigen::Success) fail(Status::internal, "gen_cue: eigensolver did not converge");
  std::vector<double> th(N);
  for (int i = 0; i < N; ++i) {
    double a = std::arg(es.eigenvalues()(i));
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    th[i] = a;
  }
  std::sort(th.begin(), th.end());
  return th;
}

// Monic coefficients of Phi_n from Szego recursion Phi_{k+1} = z Phi_k - conj(alpha_k) Phi_k^*.
std::vector<cd> szego_coefficients(const std::vector<cd>& alpha) {
  const int n = static_cast<int>(alpha.size());
  std::vector<cd> c{1.0}, nc;
  for (int k = 0; k < n; ++k) {
    nc.assign(k + 2, 0.0);
    const cd ab = std::conj(alpha[k]);
    for (int j = 0; j <= k + 1; ++j) {
      cd v = j >= 1 ? c[j - 1] : cd(0.0);
      if (j <= k) v -= ab * std::conj(c[k - j]);
      nc[j] = v;
    }
    c.swap(nc);
  }
  return c;
}

// In-place backward plans, cached per size for the life of the process.
fftw_plan backward_plan(int M) {
  std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
  static std::map<int, fftw_plan> cache;
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  fftw_complex* tmp = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * M));
  fftw_plan p = fftw_plan_dft_1d(M, tmp, tmp, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(tmp);
  cache.emplace(M, p);
  return p;
}

struct Paraorth {
  const std::vector<cd>& c;
  int n;
  cd rot;  // e^{-i gamma}

  // F(theta) real, and its derivative.
  void eval(double th, double& f, double& df) const {
    // Horner for p and p' in real arithmetic; std::complex products go through the
    // slow IEEE-checking path without -ffast-math.
    const double zr = std::cos(th), zi = std::sin(th);
    double pr = c[n].real(), pi = c[n].imag(), dr = 0.0, di = 0.0;
    for (int j = n - 1; j >= 0; --j) {
      const double ndr = dr * zr - di * zi + pr, ndi = dr * zi + di * zr + pi;
      const double npr = pr * zr - pi * zi + c[j].real(), npi = pr * zi + pi * zr + c[j].imag();
      dr = ndr;
      di = ndi;
      pr = npr;
      pi = npi;
    }
    const cd z(zr, zi), p(pr, pi), dp(dr, di);
    const cd ph = rot * std::polar(1.0, -0.5 * n * th);
    f = std::real(ph * p);
    df = std::real(ph * (cd(0.0, 1.0) * z * dp - cd(0.0, 0.5 * n) * p));
  }
};

}  // namespace

std::vector<double> paraorthogonal_zeros(const std::vector<cd>& alpha) {
  const int n = static_cast<int>(alpha.size());
  require(n >= 1, Status::domain, "paraorthogonal_zeros: need at least one coefficient");
  const std::vector<cd> c = szego_coefficients(alpha);
  const cd rot = std::polar(1.0, -0.5 * std::arg(c[0]));
  Paraorth P{c, n, rot};
  if (n == 1) {
    // z - conj(alpha_0): single zero.
    double a = std::arg(-c[0]);
    if (a < 0.0) a += kTwoPi;
    return {a};
  }
  for (int M = 16 * n; M <= (1 << 24); M *= 2) {
    // p on the grid e^{2 pi i m/M} is a backward DFT of the zero-padded coefficients.
    fftw_complex* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * M));
    for (int m = 0; m < M; ++m) buf[m][0] = buf[m][1] = 0.0;
    for (int j = 0; j <= n; ++j) {
      buf[j][0] = c[j].real();
      buf[j][1] = c[j].imag();
    }
    fftw_execute_dft(backward_plan(M), buf, buf);
    std::vector<double> F(M + 1);
    for (int m = 0; m < M; ++m) {
      const double th = kTwoPi * m / M;
      F[m] = std::real(rot * std::polar(1.0, -0.5 * n * th) * cd(buf[m][0], buf[m][1]));
    }
    fftw_free(buf);
    F[M] = (n % 2 == 0 ? 1.0 : -1.0) * F[0];

    std::vector<int> cells;
    bool exact_hit = false;
    for (int m = 0; m < M; ++m) {
      if (F[m] == 0.0) exact_hit = true;
      if ((F[m] < 0.0) != (F[m + 1] < 0.0)) cells.push_back(m);
    }
    if (exact_hit || static_cast<int>(cells.size()) != n) continue;

    std::vector<double> roots;
    roots.reserve(n);
    for (int m : cells) {
      double a = kTwoPi * m / M, b = kTwoPi * (m + 1) / M;
      double fa = F[m];
      double x = a + (b - a) * F[m] / (F[m] - F[m + 1]);
      for (int it = 0; it < 60; ++it) {
        double f, df;
        P.eval(x, f, df);
        if (f == 0.0) break;
        if ((f < 0.0) == (fa < 0.0)) {
          a = x;
          fa = f;
        } else {
          b = x;
        }
        double xn = x - f / df;
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
        const bool done = std::abs(xn - x) <= 1e-12;
        x = xn;
        if (done || b - a <= 1e-14) break;
      }
      if (x >= kTwoPi) x -= kTwoPi;
      roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  fail(Status::internal, "paraorthogonal_zeros: could not separate the zeros");
}

namespace {

std::vector<double> cue_cmv(int N, std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cd> alpha(N);
  for (int k = 0; k + 1 < N; ++k) {
    // |alpha_k|^2 ~ Beta(1, N-k-1): 1 - U^{1/(N-k-1)}
    const double r2 = -std::expm1(std::log1p(-u(eng)) / double(N - k - 1));
    alpha[k] = std::polar(std::sqrt(r2), kTwoPi * u(eng));
  }
  alpha[N - 1] = std::polar(1.0, kTwoPi * u(eng));
  return paraorthogonal_zeros(alpha);
}

}  // namespace

std::vector<double> gen_cue(int N, SeededStream& stream, CueMethod method) {
  require(N >= 1, Status::domain, "gen_cue: N must be >= 1");
  if (N == 1) return {std::uniform_real_distribution<double>(0.0, kTwoPi)(stream.engine())};
  return method == CueMethod::qr ? cue_qr(N, stream.engine()) : cue_cmv(N, stream.engine());
}

LevelSequence unfold_cue(const std::vector<double>& angles) {
  require(!angles.empty(), Status::domain, "unfold_cue: no angles");
  const int N = static_cast<int>(angles.size());
  std::vector<double> lv(N);
  for (int i = 0; i < N; ++i) {
    if (i > 0) require(angles[i] >= angles[i - 1], Status::domain, "unfold_cue: angles must be sorted");
    lv[i] = angles[i] * N / kTwoPi;
  }
  return LevelSequence(std::move(lv), 1.0);
}

std::vector<double> gen_tcue(int N, SeededStream& stream, CueMethod method) {
  require(N >= 1, Status::domain, "gen_tcue: N must be >= 1");
  std::vector<double> th = gen_cue(N + 1, stream, method);
  const int pick = std::uniform_int_distribution<int>(0, N)(stream.engine());
  const double a0 = th[pick];
  std::vector<double> out;
  out.reserve(N);
  for (int i = 1; i <= N; ++i) {
    double a = th[(pick + i) % (N + 1)] - a0;
    if (a < 0.0) a += kTwoPi;
    if (a <= 0.0) a = std::nextafter(0.0, 1.0);
    if (a >= kTwoPi) a = std::nextafter(kTwoPi, 0.0);
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LevelSequence unfold_tcue(const std::vector<double>& angles) {
  require(!angles.empty(), Status::domain, "unfold_tcue: no angles");
  const int N = static_cast<int>(angles.size());
  std::vector<double> lv(N);
  for (int i = 0; i < N; ++i) lv[i] = angles[i] * (N + 1) / kTwoPi;
  return LevelSequence(std::move(lv), 1.0);
}

}  // namespace pspec
