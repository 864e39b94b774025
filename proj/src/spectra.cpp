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

#include "pspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <fftw3.h>

#include "pspec/error.hpp"
#include "fftw_lock.hpp"

namespace pspec {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
using cd = std::complex<double>;

// Welford running moments of a complex variable.
struct Moments {
  long n = 0;
  cd mean = 0.0;
  double m2 = 0.0;

  void add(cd x) {
    ++n;
    const cd d = x - mean;
    mean += d / double(n);
    m2 += std::real(std::conj(d) * (x - mean));
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = double(n), nb = double(o.n), nt = na + nb;
    const cd d = o.mean - mean;
    mean += d * (nb / nt);
    m2 += o.m2 + std::norm(d) * na * nb / nt;
    n += o.n;
  }
  double variance() const { return n > 0 ? m2 / double(n) : 0.0; }
};

}  // namespace

LevelSequence::LevelSequence(std::vector<double> lv, double delta) : levels(std::move(lv)), mean_spacing(delta) {
  require(!levels.empty(), Status::domain, "LevelSequence: need at least one level");
  require(delta > 0.0, Status::domain, "LevelSequence: mean spacing must be positive");
  for (std::size_t i = 1; i < levels.size(); ++i)
    require(levels[i] >= levels[i - 1], Status::domain, "LevelSequence: levels must be non-decreasing");
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::monte_carlo: return "monte-carlo";
    case Provenance::exact_baseline: return "exact-baseline";
    case Provenance::tcue_theory: return "tcue-theory";
    case Provenance::universal_law: return "universal-law";
  }
  return "unknown";
}

Provenance provenance_from_name(const std::string& s) {
  for (Provenance p : {Provenance::monte_carlo, Provenance::exact_baseline, Provenance::tcue_theory,
                       Provenance::universal_law})
    if (s == provenance_name(p)) return p;
  fail(Status::domain, "unknown provenance '" + s + "'");
}

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::omega: return "omega";
    case Axis::tau: return "tau";
    case Axis::other: return "x";
  }
  return "x";
}

Axis axis_from_name(const std::string& s) {
  if (s == "omega") return Axis::omega;
  if (s == "tau") return Axis::tau;
  if (s == "x") return Axis::other;
  fail(Status::domain, "unknown axis '" + s + "'");
}

void SpectrumCurve::push(double xv, double v, double err) {
  x.push_back(xv);
  value.push_back(v);
  stderr_.push_back(err);
}

void SpectrumCurve::validate() const {
  require(value.size() == x.size() && stderr_.size() == x.size(), Status::domain,
          "SpectrumCurve: column lengths differ");
  for (const auto& [name, col] : extra)
    require(col.size() == x.size(), Status::domain, "SpectrumCurve: column '" + name + "' has wrong length");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) require(x[i] > x[i - 1], Status::domain, "SpectrumCurve: abscissae must increase strictly");
    if (axis == Axis::omega)
      require(x[i] > 0.0 && x[i] <= kPi * (1.0 + 1e-14), Status::domain, "SpectrumCurve: omega outside (0, pi]");
    if (axis == Axis::tau) require(x[i] >= 0.0, Status::domain, "SpectrumCurve: tau must be non-negative");
    if (provenance == Provenance::monte_carlo && quantity == "S")
      require(value[i] >= 0.0, Status::domain, "SpectrumCurve: Monte Carlo variance is negative");
  }
}

cd fourier_coefficient(std::span<const double> d, int k) {
  const int N = static_cast<int>(d.size());
  require(N >= 1, Status::domain, "fourier_coefficient: empty realization");
  if (k < 1 || 2 * k > N) {
    std::ostringstream os;
    os << "fourier_coefficient: k=" << k << " outside 1.." << N / 2;
    fail(Status::domain, os.str());
  }
  const double w = kTwoPi * k / N;
  cd acc = 0.0;
  for (int l = 1; l <= N; ++l) acc += d[l - 1] * std::polar(1.0, w * l);
  return acc / std::sqrt(double(N));
}

std::vector<double> discrete_grid(int N) {
  require(N >= 2, Status::domain, "discrete_grid: need N >= 2");
  std::vector<double> g;
  for (int k = 1; 2 * k <= N; ++k) g.push_back(kTwoPi * k / N);
  return g;
}

DisplacementEnsemble center_ensemble(const std::vector<LevelSequence>& seqs) {
  require(seqs.size() >= 2, Status::insufficient_data, "center_ensemble: need at least 2 sequences");
  const int N = seqs.front().size();
  for (const auto& s : seqs) require(s.size() == N, Status::domain, "center_ensemble: ragged sequence lengths");
  DisplacementEnsemble e;
  e.N = N;
  e.R = static_cast<int>(seqs.size());
  std::vector<double> mean(N, 0.0);
  for (const auto& s : seqs)
    for (int l = 0; l < N; ++l) mean[l] += s.levels[l];
  for (double& m : mean) m /= e.R;
  e.data.resize(std::size_t(e.R) * N);
  for (int r = 0; r < e.R; ++r)
    for (int l = 0; l < N; ++l) e.data[std::size_t(r) * N + l] = seqs[r].levels[l] - mean[l];
  return e;
}

SpectrumCurve power_spectrum_mc(const DisplacementEnsemble& ens, double delta, const std::vector<double>& grid) {
  require(ens.R >= 2, Status::insufficient_data, "power_spectrum_mc: need R >= 2 realizations");
  require(!grid.empty(), Status::domain, "power_spectrum_mc: empty frequency grid");
  require(delta > 0.0, Status::domain, "power_spectrum_mc: mean spacing must be positive");
  SpectrumCurve c;
  c.provenance = Provenance::monte_carlo;
  for (double w : grid) {
    require(w > 0.0 && w <= kPi * (1.0 + 1e-14), Status::domain, "power_spectrum_mc: omega outside (0, pi]");
    Moments m;
    for (int r = 0; r < ens.R; ++r) {
      auto d = ens.row(r);
      cd acc = 0.0;
      for (int l = 1; l <= ens.N; ++l) acc += d[l - 1] * std::polar(1.0, w * l);
      m.add(acc);
    }
    c.push(w, m.variance() / (ens.N * delta * delta), std::numeric_limits<double>::quiet_NaN());
  }
  c.meta["N"] = std::to_string(ens.N);
  c.meta["R"] = std::to_string(ens.R);
  return c;
}

SpectrumCurve form_factor_mc(const std::vector<LevelSequence>& seqs, const std::vector<double>& tau) {
  require(seqs.size() >= 2, Status::insufficient_data, "form_factor_mc: need at least 2 sequences");
  const int N = seqs.front().size();
  for (const auto& s : seqs) require(s.size() == N, Status::domain, "form_factor_mc: ragged sequence lengths");
  SpectrumCurve c;
  c.provenance = Provenance::monte_carlo;
  c.axis = Axis::tau;
  c.quantity = "K";
  for (double t : tau) {
    require(t >= 0.0, Status::domain, "form_factor_mc: tau must be non-negative");
    Moments m;
    for (const auto& s : seqs) {
      cd z = 0.0;
      for (double e : s.levels) z += std::polar(1.0, kTwoPi * t * e);
      m.add(z);
    }
    c.push(t, m.variance() / N, std::numeric_limits<double>::quiet_NaN());
  }
  c.meta["N"] = std::to_string(N);
  c.meta["R"] = std::to_string(seqs.size());
  return c;
}

// ---------------------------------------------------------------------------

struct SpectrumAccumulator::Impl {
  int N;
  double delta;
  std::vector<double> omega, tau;
  long total;
  int nb;
  std::vector<int> fft_index;  // per omega: FFT bin, or -1 for a direct sum
  bool use_fft = false;
  fftw_plan plan = nullptr;
  std::vector<cd> phase_table;  // omega.size() x N, when direct sums are needed
  struct Batch {
    std::vector<Moments> s, k;
    double* in = nullptr;
    fftw_complex* out = nullptr;
  };
  std::vector<Batch> b;

  ~Impl() {
    for (auto& x : b) {
      if (x.in) fftw_free(x.in);
      if (x.out) fftw_free(x.out);
    }
    if (plan) {
      std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
      fftw_destroy_plan(plan);
    }
  }
};

SpectrumAccumulator::SpectrumAccumulator(int N, double delta, std::vector<double> omega_grid,
                                         std::vector<double> tau_grid, long total_realizations, int batches)
    : impl_(std::make_unique<Impl>()) {
  require(N >= 1, Status::domain, "SpectrumAccumulator: N must be >= 1");
  require(delta > 0.0, Status::domain, "SpectrumAccumulator: mean spacing must be positive");
  require(batches >= 1, Status::domain, "SpectrumAccumulator: need at least one batch");
  require(total_realizations >= 1, Status::domain, "SpectrumAccumulator: need at least one realization");
  auto& m = *impl_;
  m.N = N;
  m.delta = delta;
  m.omega = std::move(omega_grid);
  m.tau = std::move(tau_grid);
  m.total = total_realizations;
  m.nb = batches;
  for (double w : m.omega)
    require(w > 0.0 && w <= kPi * (1.0 + 1e-14), Status::domain, "SpectrumAccumulator: omega outside (0, pi]");
  for (double t : m.tau) require(t >= 0.0, Status::domain, "SpectrumAccumulator: tau must be non-negative");

  bool direct = false;
  for (double w : m.omega) {
    const double kf = w * N / kTwoPi;
    const long k = std::lround(kf);
    if (std::abs(kf - double(k)) < 1e-9 * std::max(1.0, kf)) {
      m.fft_index.push_back(static_cast<int>(k));
      m.use_fft = true;
    } else {
      m.fft_index.push_back(-1);
      direct = true;
    }
  }
  if (direct) {
    m.phase_table.resize(m.omega.size() * std::size_t(N));
    for (std::size_t i = 0; i < m.omega.size(); ++i)
      for (int l = 1; l <= N; ++l) m.phase_table[i * N + (l - 1)] = std::polar(1.0, m.omega[i] * l);
  }
  m.b.resize(batches);
  for (auto& x : m.b) {
    x.s.resize(m.omega.size());
    x.k.resize(m.tau.size());
    if (m.use_fft) {
      x.in = static_cast<double*>(fftw_malloc(sizeof(double) * N));
      x.out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (N / 2 + 1)));
    }
  }
  if (m.use_fft) {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    m.plan = fftw_plan_dft_r2c_1d(N, m.b[0].in, m.b[0].out, FFTW_ESTIMATE);
  }
}

SpectrumAccumulator::~SpectrumAccumulator() = default;
SpectrumAccumulator::SpectrumAccumulator(SpectrumAccumulator&&) noexcept = default;
SpectrumAccumulator& SpectrumAccumulator::operator=(SpectrumAccumulator&&) noexcept = default;

int SpectrumAccumulator::batches() const { return impl_->nb; }

int SpectrumAccumulator::batch_of(long index) const {
  const long b = index * impl_->nb / impl_->total;
  return static_cast<int>(std::clamp<long>(b, 0, impl_->nb - 1));
}

void SpectrumAccumulator::add(int batch, std::span<const double> levels) {
  auto& m = *impl_;
  require(static_cast<int>(levels.size()) == m.N, Status::domain, "SpectrumAccumulator: realization has wrong length");
  require(batch >= 0 && batch < m.nb, Status::internal, "SpectrumAccumulator: batch index out of range");
  auto& B = m.b[batch];
  if (m.use_fft) {
    std::copy(levels.begin(), levels.end(), B.in);
    fftw_execute_dft_r2c(m.plan, B.in, B.out);
  }
  for (std::size_t i = 0; i < m.omega.size(); ++i) {
    cd x;
    if (m.fft_index[i] >= 0) {
      const int k = m.fft_index[i];
      x = cd(B.out[k][0], B.out[k][1]);
    } else {
      const cd* ph = &m.phase_table[i * m.N];
      cd acc = 0.0;
      for (int l = 0; l < m.N; ++l) acc += levels[l] * ph[l];
      x = acc;
    }
    B.s[i].add(x);
  }
  for (std::size_t i = 0; i < m.tau.size(); ++i) {
    const double f = kTwoPi * m.tau[i];
    double re = 0.0, im = 0.0;
    for (double e : levels) {
      re += std::cos(f * e);
      im += std::sin(f * e);
    }
    B.k[i].add(cd(re, im));
  }
}

long SpectrumAccumulator::count() const {
  long n = 0;
  for (const auto& x : impl_->b)
    if (!x.s.empty())
      n += x.s[0].n;
    else if (!x.k.empty())
      n += x.k[0].n;
  return n;
}

namespace {

// Combined estimate plus the batch-means standard error.
void summarize(const std::vector<const Moments*>& per_batch, double scale, double& value, double& se) {
  Moments all;
  std::vector<double> bv;
  for (const Moments* p : per_batch) {
    all.merge(*p);
    if (p->n >= 2) bv.push_back(p->variance() * scale);
  }
  value = all.variance() * scale;
  se = std::numeric_limits<double>::quiet_NaN();
  if (bv.size() >= 2) {
    double mu = 0.0;
    for (double v : bv) mu += v;
    mu /= double(bv.size());
    double ss = 0.0;
    for (double v : bv) ss += (v - mu) * (v - mu);
    se = std::sqrt(ss / double(bv.size() - 1) / double(bv.size()));
  }
}

}  // namespace

SpectrumCurve SpectrumAccumulator::power_spectrum() const {
  const auto& m = *impl_;
  require(count() >= 2, Status::insufficient_data, "power spectrum needs at least 2 realizations");
  SpectrumCurve c;
  c.provenance = Provenance::monte_carlo;
  const double scale = 1.0 / (m.N * m.delta * m.delta);
  for (std::size_t i = 0; i < m.omega.size(); ++i) {
    std::vector<const Moments*> pb;
    for (const auto& x : m.b) pb.push_back(&x.s[i]);
    double v, se;
    summarize(pb, scale, v, se);
    c.push(m.omega[i], v, se);
  }
  c.meta["N"] = std::to_string(m.N);
  c.meta["R"] = std::to_string(count());
  return c;
}

SpectrumCurve SpectrumAccumulator::form_factor() const {
  const auto& m = *impl_;
  require(count() >= 2, Status::insufficient_data, "form factor needs at least 2 realizations");
  SpectrumCurve c;
  c.provenance = Provenance::monte_carlo;
  c.axis = Axis::tau;
  c.quantity = "K";
  for (std::size_t i = 0; i < m.tau.size(); ++i) {
    std::vector<const Moments*> pb;
    for (const auto& x : m.b) pb.push_back(&x.k[i]);
    double v, se;
    summarize(pb, 1.0 / m.N, v, se);
    c.push(m.tau[i], v, se);
  }
  c.meta["N"] = std::to_string(m.N);
  c.meta["R"] = std::to_string(count());
  return c;
}

}  // namespace pspec
