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

// Double-double real numbers: value = hi + lo with |lo| <= ulp(hi)/2.
// About 31 significant decimal digits; unit round-off 2^-106 up to a small factor.

#include <cmath>
#include <cstdint>
#include <limits>

namespace pspec {

namespace ddetail {

inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

inline double quick_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

#if defined(__FMA__) || defined(FP_FAST_FMA)
inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}
#else
inline void split(double a, double& hi, double& lo) {
  constexpr double splitter = 134217729.0;  // 2^27 + 1
  double t = splitter * a;
  hi = t - (t - a);
  lo = a - hi;
}
inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  double ah, al, bh, bl;
  split(a, ah, al);
  split(b, bh, bl);
  err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
  return p;
}
#endif

}  // namespace ddetail

struct ExtReal {
  double hi = 0.0;
  double lo = 0.0;

  constexpr ExtReal() = default;
  constexpr ExtReal(double h) : hi(h), lo(0.0) {}
  constexpr ExtReal(double h, double l) : hi(h), lo(l) {}
  explicit ExtReal(int v) : hi(static_cast<double>(v)), lo(0.0) {}
  explicit ExtReal(std::int64_t v) {
    hi = static_cast<double>(v);
    lo = static_cast<double>(v - static_cast<std::int64_t>(hi));
  }

  explicit operator double() const { return hi + lo; }
  double to_double() const { return hi + lo; }
};

inline ExtReal operator-(const ExtReal& a) { return {-a.hi, -a.lo}; }

inline ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  using namespace ddetail;
  double e, f;
  double s = two_sum(a.hi, b.hi, e);
  double t = two_sum(a.lo, b.lo, f);
  e += t;
  s = quick_two_sum(s, e, e);
  e += f;
  s = quick_two_sum(s, e, e);
  return {s, e};
}

inline ExtReal operator+(const ExtReal& a, double b) {
  using namespace ddetail;
  double e;
  double s = two_sum(a.hi, b, e);
  e += a.lo;
  s = quick_two_sum(s, e, e);
  return {s, e};
}
inline ExtReal operator+(double a, const ExtReal& b) { return b + a; }
inline ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }
inline ExtReal operator-(const ExtReal& a, double b) { return a + (-b); }
inline ExtReal operator-(double a, const ExtReal& b) { return (-b) + a; }

inline ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  using namespace ddetail;
  double e;
  double p = two_prod(a.hi, b.hi, e);
  e += a.hi * b.lo + a.lo * b.hi;
  p = quick_two_sum(p, e, e);
  return {p, e};
}

inline ExtReal operator*(const ExtReal& a, double b) {
  using namespace ddetail;
  double e;
  double p = two_prod(a.hi, b, e);
  e += a.lo * b;
  p = quick_two_sum(p, e, e);
  return {p, e};
}
inline ExtReal operator*(double a, const ExtReal& b) { return b * a; }

inline ExtReal operator/(const ExtReal& a, const ExtReal& b) {
  using namespace ddetail;
  double q1 = a.hi / b.hi;
  ExtReal r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  double e;
  q1 = quick_two_sum(q1, q2, e);
  return ExtReal(q1, e) + q3;
}
inline ExtReal operator/(const ExtReal& a, double b) { return a / ExtReal(b); }
inline ExtReal operator/(double a, const ExtReal& b) { return ExtReal(a) / b; }

inline ExtReal& operator+=(ExtReal& a, const ExtReal& b) { return a = a + b; }
inline ExtReal& operator-=(ExtReal& a, const ExtReal& b) { return a = a - b; }
inline ExtReal& operator*=(ExtReal& a, const ExtReal& b) { return a = a * b; }
inline ExtReal& operator/=(ExtReal& a, const ExtReal& b) { return a = a / b; }

inline bool operator==(const ExtReal& a, const ExtReal& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
inline bool operator<(const ExtReal& a, const ExtReal& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
inline bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
inline bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

inline ExtReal abs(const ExtReal& a) { return a.hi < 0.0 ? -a : a; }
inline bool isfinite(const ExtReal& a) { return std::isfinite(a.hi) && std::isfinite(a.lo); }

inline ExtReal sqr(const ExtReal& a) { return a * a; }

inline ExtReal sqrt(const ExtReal& a) {
  if (a.hi <= 0.0) return ExtReal(a.hi == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
  double q = std::sqrt(a.hi);
  ExtReal qq(q);
  return qq + (a - qq * qq) / (2.0 * q);
}

namespace ddconst {
inline constexpr ExtReal pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr ExtReal two_pi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr ExtReal half_pi{1.570796326794896558e+00, 6.123233995736766036e-17};
}  // namespace ddconst

// sin and cos to full double-double accuracy for |x| up to a few thousand.
inline void sincos(const ExtReal& x, ExtReal& s, ExtReal& c) {
  double kd = std::nearbyint(x.hi / ddconst::half_pi.hi);
  ExtReal r = x - ddconst::half_pi * kd;
  // Taylor series on |r| <= pi/4 (plus reduction slack).
  ExtReal r2 = r * r;
  ExtReal term = r;
  ExtReal ss = r;
  for (int n = 3; n < 60; n += 2) {
    term = -(term * r2) / static_cast<double>((n - 1) * n);
    ss += term;
    if (std::abs(term.hi) < 1e-34) break;
  }
  term = ExtReal(1.0);
  ExtReal cc(1.0);
  for (int n = 2; n < 60; n += 2) {
    term = -(term * r2) / static_cast<double>((n - 1) * n);
    cc += term;
    if (std::abs(term.hi) < 1e-34) break;
  }
  long k = static_cast<long>(kd) % 4;
  if (k < 0) k += 4;
  switch (k) {
    case 0: s = ss; c = cc; break;
    case 1: s = cc; c = -ss; break;
    case 2: s = -ss; c = -cc; break;
    default: s = -cc; c = ss; break;
  }
}

}  // namespace pspec
