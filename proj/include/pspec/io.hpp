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

// Experiment configuration and curve files.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pspec/spectra.hpp"

namespace pspec {

inline constexpr const char* kCurveSchema = "pspec.curve/1";
inline constexpr const char* kReportSchema = "pspec.report/1";

// Flat key=value configuration. Unknown keys are rejected so typos surface early.
class Config {
 public:
  Config();
  void set(const std::string& key, const std::string& value);
  // Lines "key = value"; '#' starts a comment.
  void load_file(const std::string& path);
  void parse(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int_or(const std::string& key, long long fallback) const;
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& values() const { return kv_; }
  std::string to_text() const;
  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> kv_;
};

// Grid specs: "discrete" (2 pi k/N, k = 1..N/2), "discrete1" (2 pi k/(N+1)),
// "linspace:a:b:n", "logspace:a:b:n" (a, b are the end values), "list:x1,x2,...".
std::vector<double> parse_grid(const std::string& spec, int N);

void save_curve_csv(const SpectrumCurve& c, const std::string& path, const Config* cfg = nullptr);
void save_curve_json(const SpectrumCurve& c, const std::string& path, const Config* cfg = nullptr);
std::string curve_to_json_text(const SpectrumCurve& c, const Config* cfg = nullptr);
SpectrumCurve curve_from_json_text(const std::string& text);
// Dispatches on the extension (.csv or .json).
void save_curve(const SpectrumCurve& c, const std::string& path, const Config* cfg = nullptr);
SpectrumCurve load_curve(const std::string& path);

}  // namespace pspec
