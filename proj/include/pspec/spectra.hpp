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

// Level sequences, spectrum curves and the Monte Carlo estimators.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pspec {

struct LevelSequence {
  std::vector<double> levels;  // non-decreasing
  double mean_spacing = 1.0;

  LevelSequence() = default;
  LevelSequence(std::vector<double> levels, double mean_spacing);
  int size() const { return static_cast<int>(levels.size()); }
};

// R x N displacements, row-major.
struct DisplacementEnsemble {
  int N = 0;
  int R = 0;
  std::vector<double> data;
  std::span<const double> row(int r) const { return {data.data() + std::size_t(r) * N, std::size_t(N)}; }
};

enum class Provenance { monte_carlo, exact_baseline, tcue_theory, universal_law };
const char* provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& s);

// Abscissa kind: omega in (0, pi] for spectra, tau >= 0 for form factors, anything for figure tables.
enum class Axis { omega, tau, other };
const char* axis_name(Axis a);
Axis axis_from_name(const std::string& s);

struct SpectrumCurve {
  Provenance provenance = Provenance::monte_carlo;
  Axis axis = Axis::omega;
  std::string quantity = "S";
  std::vector<double> x;
  std::vector<double> value;
  std::vector<double> stderr_;  // NaN where no error bar is available
  // Additional named columns with the same length as x.
  std::vector<std::pair<std::string, std::vector<double>>> extra;
  std::map<std::string, std::string> meta;  // N, R, seed, grid, ...

  std::size_t size() const { return x.size(); }
  void push(double xv, double v, double err);
  // Throws Status::domain when the invariants do not hold.
  void validate() const;
};

// a_k = N^{-1/2} sum_l d_l e^{i omega_k l}, omega_k = 2 pi k / N, 1 <= k <= N/2.
std::complex<double> fourier_coefficient(std::span<const double> d, int k);

DisplacementEnsemble center_ensemble(const std::vector<LevelSequence>& seqs);

// Plug-in (1/R) variance of the Fourier sums; no error bars.
SpectrumCurve power_spectrum_mc(const DisplacementEnsemble& ens, double delta, const std::vector<double>& grid);
SpectrumCurve form_factor_mc(const std::vector<LevelSequence>& seqs, const std::vector<double>& tau);

// omega_k = 2 pi k / N for k = 1..N/2.
std::vector<double> discrete_grid(int N);

// Streaming estimator for S(omega) and K(tau) over many realizations. Realizations are
// assigned to batches by index, each batch keeps Welford sums, and batches are merged in
// a fixed order so the result does not depend on scheduling.
class SpectrumAccumulator {
 public:
  SpectrumAccumulator(int N, double delta, std::vector<double> omega_grid, std::vector<double> tau_grid,
                      long total_realizations, int batches = 16);
  ~SpectrumAccumulator();
  SpectrumAccumulator(SpectrumAccumulator&&) noexcept;
  SpectrumAccumulator& operator=(SpectrumAccumulator&&) noexcept;

  int batch_of(long index) const;
  int batches() const;
  // Adds one realization (levels, length N) into batch b. Not thread-safe per batch;
  // distinct batches may be filled concurrently with separate workspaces.
  void add(int batch, std::span<const double> levels);
  long count() const;

  SpectrumCurve power_spectrum() const;
  SpectrumCurve form_factor() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pspec
