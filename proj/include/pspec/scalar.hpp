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

// Lightweight complex numbers over double or ExtReal, and forward-mode dual numbers.

#include <cmath>
#include <complex>

#include "pspec/ddouble.hpp"

namespace pspec {

inline double to_double(double x) { return x; }
inline double to_double(const ExtReal& x) { return x.to_double(); }

template <class R>
struct Cx {
  R re{};
  R im{};

  Cx() = default;
  Cx(const R& r) : re(r), im(0.0) {}
  Cx(const R& r, const R& i) : re(r), im(i) {}
  template <class S = R, class = std::enable_if_t<!std::is_same_v<S, double>>>
  Cx(double r) : re(r), im(0.0) {}
  explicit Cx(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_std() const { return {to_double(re), to_double(im)}; }
};

using ExtComplex = Cx<ExtReal>;

template <class R> inline Cx<R> operator-(const Cx<R>& a) { return {-a.re, -a.im}; }
template <class R> inline Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <class R> inline Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) { return {a.re - b.re, a.im - b.im}; }
template <class R> inline Cx<R> operator+(const Cx<R>& a, double b) { return {a.re + b, a.im}; }
template <class R> inline Cx<R> operator+(double a, const Cx<R>& b) { return {b.re + a, b.im}; }
template <class R> inline Cx<R> operator-(const Cx<R>& a, double b) { return {a.re - b, a.im}; }
template <class R> inline Cx<R> operator-(double a, const Cx<R>& b) { return {a - b.re, -b.im}; }

template <class R> inline Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R> inline Cx<R> operator*(const Cx<R>& a, double b) { return {a.re * b, a.im * b}; }
template <class R> inline Cx<R> operator*(double a, const Cx<R>& b) { return {b.re * a, b.im * a}; }
template <class R> inline Cx<R> operator*(const Cx<R>& a, const ExtReal& b)
  requires(!std::is_same_v<R, double>) { return {a.re * b, a.im * b}; }

template <class R> inline R norm(const Cx<R>& a) { return a.re * a.re + a.im * a.im; }
template <class R> inline Cx<R> conj(const Cx<R>& a) { return {a.re, -a.im}; }

template <class R> inline Cx<R> inv(const Cx<R>& b) {
  R d = R(1.0) / norm(b);
  return {b.re * d, -(b.im * d)};
}
template <class R> inline Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) { return a * inv(b); }
template <class R> inline Cx<R> operator/(const Cx<R>& a, double b) { return {a.re / b, a.im / b}; }
template <class R> inline Cx<R> operator/(double a, const Cx<R>& b) { return inv(b) * a; }

template <class R> inline Cx<R>& operator+=(Cx<R>& a, const Cx<R>& b) { return a = a + b; }
template <class R> inline Cx<R>& operator-=(Cx<R>& a, const Cx<R>& b) { return a = a - b; }
template <class R> inline Cx<R>& operator*=(Cx<R>& a, const Cx<R>& b) { return a = a * b; }

// Magnitude in double; used for guards and monitors only.
template <class R> inline double magnitude(const Cx<R>& a) {
  return std::hypot(to_double(a.re), to_double(a.im));
}
template <class R> inline bool finite(const Cx<R>& a) {
  return std::isfinite(to_double(a.re)) && std::isfinite(to_double(a.im));
}

template <class R> inline Cx<R> ipow(Cx<R> base, long n) {
  if (n < 0) return ipow(inv(base), -n);
  Cx<R> result(R(1.0));
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

// e^{i phi}
inline Cx<double> cis(double phi, const Cx<double>*) { return {std::cos(phi), std::sin(phi)}; }
inline Cx<ExtReal> cis(double phi, const Cx<ExtReal>*) {
  ExtReal s, c;
  sincos(ExtReal(phi), s, c);
  return {c, s};
}

// First-order dual numbers: v + d*eps, eps^2 = 0.
template <class T>
struct Dual {
  T v{};
  T d{};
  Dual() = default;
  Dual(const T& value) : v(value), d() {}
  Dual(const T& value, const T& deriv) : v(value), d(deriv) {}
  Dual(double value) : v(value), d() {}
};

template <class T> inline Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> inline Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> inline Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> inline Dual<T> operator+(const Dual<T>& a, double b) { return {a.v + b, a.d}; }
template <class T> inline Dual<T> operator+(double a, const Dual<T>& b) { return {b.v + a, b.d}; }
template <class T> inline Dual<T> operator-(const Dual<T>& a, double b) { return {a.v - b, a.d}; }
template <class T> inline Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.v, -b.d}; }
template <class T> inline Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.v * b.v, a.v * b.d + a.d * b.v};
}
template <class T> inline Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T> inline Dual<T> operator*(double a, const Dual<T>& b) { return {b.v * a, b.d * a}; }
template <class T> inline Dual<T> operator*(const Dual<T>& a, const T& b) { return {a.v * b, a.d * b}; }
template <class T> inline Dual<T> operator*(const T& a, const Dual<T>& b) { return {a * b.v, a * b.d}; }
template <class T> inline Dual<T> inv(const Dual<T>& b) {
  T r = inv(b.v);
  return {r, -(b.d * r * r)};
}
template <class T> inline Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  T r = inv(b.v);
  T q = a.v * r;
  return {q, (a.d - q * b.d) * r};
}
template <class T> inline Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T> inline Dual<T> operator/(double a, const Dual<T>& b) { return inv(b) * a; }
template <class T> inline Dual<T> conj(const Dual<T>& a) { return {conj(a.v), conj(a.d)}; }
template <class T> inline Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { return a = a + b; }
template <class T> inline Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) { return a = a * b; }

template <class T> inline double magnitude(const Dual<T>& a) { return magnitude(a.v); }
template <class T> inline bool finite(const Dual<T>& a) { return finite(a.v) && finite(a.d); }

template <class T> inline Dual<T> ipow(Dual<T> base, long n) {
  Dual<T> result(T(1.0));
  if (n < 0) {
    base = inv(base);
    n = -n;
  }
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

}  // namespace pspec
