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

#include "pspec/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pspec/error.hpp"

namespace pspec {

namespace {

using json = nlohmann::json;
constexpr double kTwoPi = 6.283185307179586;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& s, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    fail(Status::usage, what + ": '" + s + "' is not a number");
  return v;
}

long long to_int(const std::string& s, const std::string& what) {
  // Accept 1e5-style integers too.
  const double d = to_double(s, what);
  if (d != std::floor(d) || std::abs(d) > 9.0e18) fail(Status::usage, what + ": '" + s + "' is not an integer");
  return static_cast<long long>(d);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

}  // namespace

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = {
      "generator", "cue_method", "N",        "R",         "seed",     "grid",    "tau_grid",
      "engine",    "precision",  "tol",      "delta_scale", "proxy_N", "out",     "format",
      "tolerance", "window",     "figure",   "scale",     "long_run", "suite",   "batches",
      "curve_a",   "curve_b",    "threads",  "sigma2",    "panel_scale", "check_convergence"};
  return keys;
}

Config::Config() = default;

void Config::set(const std::string& key, const std::string& value) {
  const auto& k = known_keys();
  if (std::find(k.begin(), k.end(), key) == k.end()) fail(Status::usage, "unknown configuration key '" + key + "'");
  kv_[key] = value;
}

void Config::parse(const std::string& text, const std::string& origin) {
  std::istringstream is(text);
  std::string line;
  int no = 0;
  while (std::getline(is, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(Status::usage, origin + ":" + std::to_string(no) + ": expected key = value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void Config::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Status::io, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  parse(ss.str(), path);
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) fail(Status::usage, "missing configuration key '" + key + "'");
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

long long Config::get_int(const std::string& key) const { return to_int(get(key), key); }
long long Config::get_int_or(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}
std::uint64_t Config::get_u64_or(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get(key);
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 0);
  if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE)
    fail(Status::usage, key + ": '" + s + "' is not an unsigned 64-bit integer");
  return v;
}
double Config::get_double(const std::string& key) const { return to_double(get(key), key); }
double Config::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}
bool Config::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get(key);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  fail(Status::usage, key + ": '" + v + "' is not a boolean");
}

std::string Config::to_text() const {
  std::ostringstream os;
  for (const auto& [k, v] : kv_) os << k << " = " << v << "\n";
  return os.str();
}

std::vector<double> parse_grid(const std::string& spec, int N) {
  std::vector<double> g;
  if (spec == "discrete") {
    require(N >= 2, Status::usage, "grid 'discrete' needs N >= 2");
    for (int k = 1; 2 * k <= N; ++k) g.push_back(kTwoPi * k / N);
    return g;
  }
  if (spec == "discrete1") {
    require(N >= 1, Status::usage, "grid 'discrete1' needs N >= 1");
    for (int k = 1; 2 * k <= N + 1; ++k) g.push_back(kTwoPi * k / (N + 1));
    return g;
  }
  const auto parts = split(spec, ':');
  if (parts.size() == 4 && (parts[0] == "linspace" || parts[0] == "logspace")) {
    const double a = to_double(parts[1], "grid"), b = to_double(parts[2], "grid");
    const long long n = to_int(parts[3], "grid");
    require(n >= 1, Status::usage, "grid: need at least one point");
    require(b >= a, Status::usage, "grid: end value below start value");
    if (parts[0] == "logspace") require(a > 0.0, Status::usage, "grid: logspace needs positive ends");
    for (long long i = 0; i < n; ++i) {
      const double t = n == 1 ? 0.0 : double(i) / double(n - 1);
      g.push_back(parts[0] == "linspace" ? a + (b - a) * t : a * std::pow(b / a, t));
    }
    if (n > 1) g.back() = b;
    return g;
  }
  if (parts.size() == 2 && parts[0] == "list") {
    for (const auto& s : split(parts[1], ',')) g.push_back(to_double(trim(s), "grid"));
    require(!g.empty(), Status::usage, "grid: empty list");
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  }
  fail(Status::usage, "unrecognized grid spec '" + spec + "'");
}

// ---------------------------------------------------------------------------

namespace {

const char* column_name(const SpectrumCurve& c) { return axis_name(c.axis); }

}  // namespace

void save_curve_csv(const SpectrumCurve& c, const std::string& path, const Config* cfg) {
  c.validate();
  std::ofstream f(path);
  if (!f) fail(Status::io, "cannot write '" + path + "'");
  f << "# schema: " << kCurveSchema << "\n";
  f << "# provenance: " << provenance_name(c.provenance) << "\n";
  f << "# quantity: " << c.quantity << "\n";
  for (const auto& [k, v] : c.meta) f << "# meta: " << k << " = " << v << "\n";
  if (cfg)
    for (const auto& [k, v] : cfg->values()) f << "# config: " << k << " = " << v << "\n";
  f << column_name(c) << ",value,stderr";
  for (const auto& col : c.extra) f << "," << col.first;
  f << "\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    f << fmt(c.x[i]) << "," << fmt(c.value[i]) << "," << fmt(c.stderr_[i]);
    for (const auto& col : c.extra) f << "," << fmt(col.second[i]);
    f << "\n";
  }
  if (!f) fail(Status::io, "write failed for '" + path + "'");
}

namespace {

SpectrumCurve load_curve_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Status::io, "cannot open '" + path + "'");
  SpectrumCurve c;
  std::string line;
  bool header = false, schema_ok = false;
  std::vector<std::string> cols;
  int no = 0;
  while (std::getline(f, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      const std::string tag = body.substr(0, colon), rest = trim(body.substr(colon + 1));
      if (tag == "schema") {
        require(rest == kCurveSchema, Status::io, path + ": unsupported schema '" + rest + "'");
        schema_ok = true;
      } else if (tag == "provenance") {
        c.provenance = provenance_from_name(rest);
      } else if (tag == "quantity") {
        c.quantity = rest;
      } else if (tag == "meta") {
        const auto eq = rest.find('=');
        if (eq != std::string::npos) c.meta[trim(rest.substr(0, eq))] = trim(rest.substr(eq + 1));
      }
      continue;
    }
    if (!header) {
      cols = split(line, ',');
      require(cols.size() >= 3 && cols[1] == "value" && cols[2] == "stderr", Status::io,
              path + ": unexpected CSV header");
      c.axis = axis_from_name(cols[0]);
      for (std::size_t j = 3; j < cols.size(); ++j) c.extra.push_back({cols[j], {}});
      header = true;
      continue;
    }
    const auto f_ = split(line, ',');
    if (f_.size() != cols.size()) fail(Status::io, path + ":" + std::to_string(no) + ": wrong number of fields");
    auto num = [&](const std::string& s) {
      if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
      return to_double(s, path);
    };
    c.push(num(f_[0]), num(f_[1]), num(f_[2]));
    for (std::size_t j = 3; j < f_.size(); ++j) c.extra[j - 3].second.push_back(num(f_[j]));
  }
  require(schema_ok, Status::io, path + ": missing schema line");
  require(header, Status::io, path + ": missing CSV header");
  c.validate();
  return c;
}

json num_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }
double from_num_or_null(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string curve_to_json_text(const SpectrumCurve& c, const Config* cfg) {
  c.validate();
  json j;
  j["schema"] = kCurveSchema;
  j["provenance"] = provenance_name(c.provenance);
  j["quantity"] = c.quantity;
  j["axis"] = axis_name(c.axis);
  j["meta"] = c.meta;
  j["config"] = cfg ? json(cfg->values()) : json::object();
  json cols = json::array({axis_name(c.axis), "value", "stderr"});
  for (const auto& col : c.extra) cols.push_back(col.first);
  j["columns"] = cols;
  json pts = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    json row = json::array({num_or_null(c.x[i]), num_or_null(c.value[i]), num_or_null(c.stderr_[i])});
    for (const auto& col : c.extra) row.push_back(num_or_null(col.second[i]));
    pts.push_back(row);
  }
  j["points"] = pts;
  return j.dump(1);
}

SpectrumCurve curve_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Status::io, std::string("curve JSON: ") + e.what());
  }
  try {
    require(j.value("schema", "") == kCurveSchema, Status::io, "curve JSON: unsupported schema");
    SpectrumCurve c;
    c.provenance = provenance_from_name(j.at("provenance").get<std::string>());
    c.quantity = j.at("quantity").get<std::string>();
    c.axis = axis_from_name(j.at("axis").get<std::string>());
    c.meta = j.at("meta").get<std::map<std::string, std::string>>();
    const auto cols = j.at("columns").get<std::vector<std::string>>();
    require(cols.size() >= 3, Status::io, "curve JSON: need at least 3 columns");
    for (std::size_t k = 3; k < cols.size(); ++k) c.extra.push_back({cols[k], {}});
    for (const auto& row : j.at("points")) {
      require(row.size() == cols.size(), Status::io, "curve JSON: row length differs from columns");
      c.push(from_num_or_null(row[0]), from_num_or_null(row[1]), from_num_or_null(row[2]));
      for (std::size_t k = 3; k < cols.size(); ++k) c.extra[k - 3].second.push_back(from_num_or_null(row[k]));
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    fail(Status::io, std::string("curve JSON: ") + e.what());
  }
}

void save_curve_json(const SpectrumCurve& c, const std::string& path, const Config* cfg) {
  const std::string text = curve_to_json_text(c, cfg);
  std::ofstream f(path);
  if (!f) fail(Status::io, "cannot write '" + path + "'");
  f << text << "\n";
  if (!f) fail(Status::io, "write failed for '" + path + "'");
}

namespace {
bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}
}  // namespace

void save_curve(const SpectrumCurve& c, const std::string& path, const Config* cfg) {
  if (ends_with(path, ".json"))
    save_curve_json(c, path, cfg);
  else if (ends_with(path, ".csv"))
    save_curve_csv(c, path, cfg);
  else
    fail(Status::usage, "curve path '" + path + "' must end in .csv or .json");
}

SpectrumCurve load_curve(const std::string& path) {
  if (ends_with(path, ".csv")) return load_curve_csv(path);
  if (ends_with(path, ".json")) {
    std::ifstream f(path);
    if (!f) fail(Status::io, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return curve_from_json_text(ss.str());
  }
  fail(Status::usage, "curve path '" + path + "' must end in .csv or .json");
}

}  // namespace pspec
