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

#include "pspec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pspec/error.hpp"
#include "pspec/quadrature.hpp"

namespace pspec {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
const cd I(0.0, 1.0);

// (1/2pi) int_0^phi e^{-i m theta} dtheta
cd partial_exp(int m, double phi) {
  if (m == 0) return phi / kTwoPi;
  double h = 0.5 * m * phi;
  return std::sin(h) / (kPi * m) * std::exp(-I * h);
}

cd partial_moment(int k, double phi) {
  return 2.0 * partial_exp(k, phi) - partial_exp(k - 1, phi) - partial_exp(k + 1, phi);
}

double full_moment(int k) {
  if (k == 0) return 2.0;
  if (k == 1 || k == -1) return -1.0;
  return 0.0;
}

struct Lu {
  int n = 0;
  std::vector<cd> a;
  std::vector<int> perm;
  int sign = 1;
  double max_pivot = 0.0, min_pivot = 0.0;

  Lu(std::vector<cd> m, int size) : n(size), a(std::move(m)), perm(size) {
    for (int i = 0; i < n; ++i) perm[i] = i;
    min_pivot = INFINITY;
    for (int k = 0; k < n; ++k) {
      int p = k;
      double best = std::abs(a[k * n + k]);
      for (int i = k + 1; i < n; ++i) {
        double v = std::abs(a[i * n + k]);
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (p != k) {
        for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
        std::swap(perm[k], perm[p]);
        sign = -sign;
      }
      max_pivot = std::max(max_pivot, best);
      min_pivot = std::min(min_pivot, best);
      if (best == 0.0) continue;
      cd inv = 1.0 / a[k * n + k];
      for (int i = k + 1; i < n; ++i) {
        cd l = a[i * n + k] * inv;
        a[i * n + k] = l;
        if (l == 0.0) continue;
        for (int j = k + 1; j < n; ++j) a[i * n + j] -= l * a[k * n + j];
      }
    }
  }

  cd det() const {
    cd d = double(sign);
    for (int i = 0; i < n; ++i) d *= a[i * n + i];
    return d;
  }

  // Solve A x = b in place.
  void solve(std::vector<cd>& b) const {
    std::vector<cd> y(n);
    for (int i = 0; i < n; ++i) y[i] = b[perm[i]];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) y[i] -= a[i * n + j] * y[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) y[i] -= a[i * n + j] * y[j];
      y[i] /= a[i * n + i];
    }
    b = std::move(y);
  }
};

}  // namespace

cd toeplitz_moment(int k, double phi, cd zeta) {
  return full_moment(k) - zeta * partial_moment(k, phi);
}

cd toeplitz_moment_dzeta(int k, double phi) { return -partial_moment(k, phi); }

LuResult lu_determinant(std::vector<cd> a, int n) {
  Lu lu(std::move(a), n);
  return {lu.det(), lu.max_pivot > 0.0 ? lu.min_pivot / lu.max_pivot : 0.0};
}

GfPoint phi_toeplitz(int N, double phi, cd zeta, bool want_derivative) {
  require(N >= 1, Status::domain, "phi_toeplitz: N must be >= 1");
  require(phi >= 0.0 && phi <= kTwoPi, Status::domain, "phi_toeplitz: phi outside [0, 2pi]");
  std::vector<cd> m(2 * N - 1), dm(2 * N - 1);
  for (int k = -(N - 1); k <= N - 1; ++k) {
    cd p = partial_moment(k, phi);
    m[k + N - 1] = full_moment(k) - zeta * p;
    dm[k + N - 1] = -p;
  }
  std::vector<cd> t(static_cast<std::size_t>(N) * N);
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l) t[j * N + l] = m[j - l + N - 1];
  Lu lu(t, N);
  GfPoint out;
  out.N = N;
  out.phi = phi;
  out.zeta = zeta;
  out.value = lu.det() / double(N + 1);
  if (!want_derivative) return out;
  if (lu.min_pivot == 0.0 || lu.min_pivot < 1e-14 * lu.max_pivot) {
    std::ostringstream os;
    os << "phi_toeplitz: Toeplitz matrix ill-conditioned for the trace identity (N=" << N
       << ", phi=" << phi << ", zeta=" << zeta << ")";
    fail(Status::accuracy, os.str());
  }
  // trace(T^{-1} dT) = sum_{j,l} (T^{-1})_{l j} dT_{j l}
  cd tr = 0.0;
  std::vector<cd> col(N);
  for (int j = 0; j < N; ++j) {
    std::fill(col.begin(), col.end(), cd(0.0));
    col[j] = 1.0;
    lu.solve(col);  // column j of T^{-1}: (T^{-1})_{l j}
    for (int l = 0; l < N; ++l) tr += col[l] * dm[j - l + N - 1];
  }
  out.dzeta = out.value * tr;
  out.has_derivative = true;
  return out;
}

cd phi_bruteforce(int N, double phi, cd zeta, int nodes_per_piece) {
  require(N >= 1 && N <= 3, Status::domain, "phi_bruteforce: only N in {1, 2, 3} is supported");
  require(phi >= 0.0 && phi <= kTwoPi, Status::domain, "phi_bruteforce: phi outside [0, 2pi]");
  const Rule& g = gauss_legendre(nodes_per_piece);
  // Nodes on [0, phi] carry the factor (1 - zeta); nodes on [phi, 2pi] carry 1.
  std::vector<double> th, wt;
  std::vector<cd> fac;
  auto add_piece = [&](double a, double b, cd f) {
    if (b <= a) return;
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      th.push_back(c + h * g.x[i]);
      wt.push_back(h * g.w[i] / kTwoPi);
      fac.push_back(f);
    }
  };
  add_piece(0.0, phi, 1.0 - zeta);
  add_piece(phi, kTwoPi, 1.0);
  const std::size_t m = th.size();
  std::vector<cd> e(m);
  std::vector<double> single(m);
  for (std::size_t i = 0; i < m; ++i) {
    e[i] = std::exp(I * th[i]);
    single[i] = std::norm(1.0 - e[i]);
  }
  double norm = 1.0;
  for (int k = 2; k <= N + 1; ++k) norm *= k;  // (N+1)!
  cd sum = 0.0;
  if (N == 1) {
    for (std::size_t i = 0; i < m; ++i) sum += wt[i] * fac[i] * single[i];
  } else if (N == 2) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        sum += wt[i] * wt[j] * fac[i] * fac[j] * single[i] * single[j] * std::norm(e[i] - e[j]);
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const cd wij = wt[i] * wt[j] * fac[i] * fac[j] * single[i] * single[j] * std::norm(e[i] - e[j]);
        cd inner = 0.0;
        for (std::size_t k = 0; k < m; ++k)
          inner += wt[k] * fac[k] * single[k] * std::norm(e[i] - e[k]) * std::norm(e[j] - e[k]);
        sum += wij * inner;
      }
  }
  return sum / norm;
}

double sine_kernel(int M, double theta) {
  double s = std::sin(0.5 * theta);
  if (std::abs(s) > 1e-6) return std::sin(0.5 * M * theta) / s;
  double acc = 0.0;
  for (int k = 0; k < M; ++k) acc += std::cos((k - 0.5 * (M - 1)) * theta);
  return acc;
}

double tcue_kernel(int N, double theta, double theta_p) {
  const int M = N + 1;
  return sine_kernel(M, theta - theta_p) - sine_kernel(M, theta) * sine_kernel(M, theta_p) / M;
}

cd phi_fredholm(int N, double phi, cd zeta, int nodes) {
  require(N >= 1, Status::domain, "phi_fredholm: N must be >= 1");
  require(phi >= 0.0 && phi <= kTwoPi, Status::domain, "phi_fredholm: phi outside [0, 2pi]");
  if (phi == 0.0) return 1.0;
  // Composite rule: split [0, phi] so every panel carries a fixed Gauss rule.
  const Rule& g = gauss_legendre(30);
  int panels = std::max(1, (nodes + 29) / 30);
  std::vector<double> x, w;
  for (int p = 0; p < panels; ++p) {
    double a = phi * p / panels, b = phi * (p + 1) / panels;
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      x.push_back(c + h * g.x[i]);
      w.push_back(h * g.w[i] / kTwoPi);
    }
  }
  const int m = static_cast<int>(x.size());
  std::vector<cd> a(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a[i * m + j] = (i == j ? 1.0 : 0.0) -
                     zeta * std::sqrt(w[i]) * tcue_kernel(N, x[i], x[j]) * std::sqrt(w[j]);
  return lu_determinant(std::move(a), m).det;
}

std::vector<double> extract_probabilities(int N, double phi) {
  require(N >= 1 && N <= 64, Status::domain, "extract_probabilities: N must lie in [1, 64]");
  const int M = N + 1;
  std::vector<cd> vals(M);
  std::vector<cd> xs(M);
  for (int j = 0; j < M; ++j) {
    xs[j] = std::exp(I * (kTwoPi * j / M));
    vals[j] = phi_toeplitz(N, phi, 1.0 - xs[j], false).value;
  }
  std::vector<double> e(M);
  for (int l = 0; l < M; ++l) {
    cd acc = 0.0;
    for (int j = 0; j < M; ++j) acc += vals[j] * std::exp(-I * (kTwoPi * double((j * l) % M) / M));
    acc /= double(M);
    e[l] = acc.real();
    if (e[l] < -1e-9) {
      std::ostringstream os;
      os << "extract_probabilities: E_" << N << "(" << l << "; " << phi << ") = " << e[l]
         << " is negative beyond round-off";
      fail(Status::accuracy, os.str());
    }
  }
  return e;
}

cd szego_askey(int l, cd z) {
  require(l >= 0, Status::domain, "szego_askey: l must be >= 0");
  cd acc = 0.0;
  for (int j = l + 1; j >= 1; --j) acc = acc * z + double(j);
  return std::sqrt(2.0 / ((l + 1.0) * (l + 2.0))) * acc;
}

cd szego_askey_reciprocal(int l, cd z) {
  require(l >= 0, Status::domain, "szego_askey_reciprocal: l must be >= 0");
  // sum_j j z^{l+1-j}: Horner from the highest power (j = 1).
  cd acc = 0.0;
  for (int j = 1; j <= l + 1; ++j) acc = acc * z + double(j);
  return std::sqrt(2.0 / ((l + 1.0) * (l + 2.0))) * acc;
}

}  // namespace pspec
