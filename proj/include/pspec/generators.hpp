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

// Seeded ensemble generators.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pspec/baselines.hpp"
#include "pspec/spectra.hpp"

namespace pspec {

// Independent stream for realization `index` of a run seeded with `seed`.
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t index, std::uint32_t stream_id = 0);
  std::mt19937_64& engine() { return eng_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t seed_, index_;
  std::mt19937_64 eng_;
};

double sample_spacing(const SpacingDistribution& dist, std::mt19937_64& eng);

LevelSequence gen_uncorrelated(int N, const SpacingDistribution& dist, SeededStream& stream);
// Same, written into a caller-owned buffer of length N.
void gen_uncorrelated_into(const SpacingDistribution& dist, SeededStream& stream, std::vector<double>& out);

enum class CueMethod {
  qr,   // Gaussian matrix, QR with phase fix, dense eigenvalues: O(N^3)
  cmv,  // random Verblunsky coefficients and the zeros of the paraorthogonal polynomial: O(N^2)
};
CueMethod cue_method_from_name(const std::string& s);

// Sorted eigenangles in [0, 2pi) of a Haar unitary.
std::vector<double> gen_cue(int N, SeededStream& stream, CueMethod method = CueMethod::qr);
// Zeros of z Phi_{N-1} - conj(alpha) Phi*_{N-1} for given Verblunsky coefficients (|alpha_{N-1}| = 1).
std::vector<double> paraorthogonal_zeros(const std::vector<std::complex<double>>& alpha);

LevelSequence unfold_cue(const std::vector<double>& angles);

// Sorted angles in (0, 2pi) of the CUE_{N+1} spectrum rotated so one uniformly chosen angle sits at 0.
std::vector<double> gen_tcue(int N, SeededStream& stream, CueMethod method = CueMethod::qr);
// Mean spacing 2pi/(N+1): levels = angles (N+1)/(2pi).
LevelSequence unfold_tcue(const std::vector<double>& angles);

}  // namespace pspec
