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

// Command implementations shared by the C API and the command-line tool.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pspec/io.hpp"
#include "pspec/spectra.hpp"

namespace pspec {

struct RunResult {
  std::string report_json;
  std::vector<std::pair<std::string, SpectrumCurve>> curves;
  std::vector<std::string> files;
  bool passed = true;
};

// command: simulate | theory | universal | compare | verify | figures
RunResult run_experiment(const std::string& command, const Config& cfg);

struct CompareReport {
  std::size_t points = 0;
  double max_rel = 0.0;
  double rms_rel = 0.0;
  double chi2_per_point = 0.0;  // NaN when neither curve has error bars
  double tolerance = 0.0;
  double lo = 0.0, hi = 0.0;
  bool passed = false;
};

// Relative deviation (a - b)/|b| on the points of the sparser curve inside [lo, hi];
// the denser curve is interpolated linearly. Passes when the RMS deviation is <= tol.
CompareReport compare_curves(const SpectrumCurve& a, const SpectrumCurve& b, double tol, double lo, double hi);

// Worker count: `threads` config key, then PSPEC_THREADS, then the hardware.
int worker_count(const Config* cfg = nullptr);

// Runs body(i) for i in [0, n) on `workers` threads. Each index runs exactly once; the
// caller stores results by index, so the outcome does not depend on scheduling.
void parallel_for(int n, int workers, const std::function<void(int)>& body);

}  // namespace pspec
