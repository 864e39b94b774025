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

// Command-line front end over the C interface.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pspec/pspec.h"

namespace {

struct Flag {
  const char* key;
  const char* help;
};

// Flags offered by each subcommand; each maps onto a configuration key.
const std::map<std::string, std::vector<Flag>> kFlags = {
    {"simulate",
     {{"generator", "exp|erlang3|ig13|uniform|degenerate|cue|tcue"},
      {"cue_method", "qr|cmv"},
      {"N", "levels per realization"},
      {"R", "number of realizations"},
      {"seed", "master seed"},
      {"grid", "omega grid spec, or none"},
      {"tau_grid", "tau grid spec for the form factor"},
      {"batches", "batches for error bars"}}},
    {"theory",
     {{"generator", "tcue|cue or an uncorrelated spacing law"},
      {"N", "number of levels"},
      {"grid", "omega grid spec"},
      {"tau_grid", "tau grid spec (uncorrelated only)"},
      {"sigma2", "spacing variance override"},
      {"engine", "dpv|toeplitz"},
      {"precision", "extended|double"},
      {"tol", "quadrature tolerance"},
      {"delta_scale", "endpoint series cutoff scale"},
      {"panel_scale", "initial panel width in units of 2pi/N"}}},
    {"universal",
     {{"grid", "omega grid spec"},
      {"proxy_N", "finite-N proxy size"},
      {"tolerance", "convergence tolerance"},
      {"check_convergence", "compare against proxy_N/2"},
      {"engine", "dpv|toeplitz"},
      {"precision", "extended|double"},
      {"tol", "quadrature tolerance"}}},
    {"compare",
     {{"curve_a", "first curve file"},
      {"curve_b", "reference curve file"},
      {"tolerance", "RMS relative tolerance"},
      {"window", "lo:hi restriction of the axis"}}},
    {"verify", {{"suite", "oracles|dpv|pipeline|all"}}},
    {"figures",
     {{"figure", "1..5"},
      {"scale", "desk|full"},
      {"long_run", "allow full-scale runs"},
      {"N", "size override"},
      {"R", "realization override"},
      {"proxy_N", "theory size override"},
      {"seed", "master seed"},
      {"cue_method", "qr|cmv"},
      {"grid", "grid override"}}},
};

const std::map<std::string, std::string> kAbout = {
    {"simulate", "Monte Carlo estimate of S(omega) and optionally K(tau)"},
    {"theory", "finite-N theoretical spectrum"},
    {"universal", "N -> infinity TCUE spectrum and small-omega law"},
    {"compare", "RMS relative comparison of two curve files"},
    {"verify", "built-in numerical self checks"},
    {"figures", "regenerate the figure data sets"},
};

int finish_error(int st) {
  std::fprintf(stderr, "pspec: %s: %s\n", pspec_status_string(st), pspec_last_error());
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power spectrum of level sequences: simulation, theory and checks"};
  app.set_version_flag("--version", pspec_version());
  app.require_subcommand(1);

  std::string config_file;
  std::vector<std::string> sets;
  std::string out, format;
  int threads = 0;
  bool quiet = false;
  std::map<std::string, std::string> values;

  for (const auto& [name, flags] : kFlags) {
    CLI::App* sub = app.add_subcommand(name, kAbout.at(name));
    sub->add_option("--config", config_file, "key = value configuration file");
    sub->add_option("--set", sets, "override a key: --set key=value")->allow_extra_args(false);
    sub->add_option("--out", out, "output file prefix");
    sub->add_option("--format", format, "csv|json|both")->check(CLI::IsMember({"csv", "json", "both"}));
    sub->add_option("--threads", threads, "worker threads");
    sub->add_flag("-q,--quiet", quiet, "do not print the report");
    for (const Flag& f : flags) sub->add_option(std::string("--") + f.key, values[std::string(name) + "." + f.key], f.help);
  }
  CLI11_PARSE(app, argc, argv);

  const std::string cmd = app.get_subcommands().front()->get_name();
  pspec_config* cfg = nullptr;
  int st = pspec_config_create(&cfg);
  if (st) return finish_error(st);
  auto set = [&](const std::string& k, const std::string& v) {
    if (st == PSPEC_OK) st = pspec_config_set(cfg, k.c_str(), v.c_str());
  };
  if (!config_file.empty()) st = pspec_config_load(cfg, config_file.c_str());
  for (const Flag& f : kFlags.at(cmd)) {
    const std::string& v = values[cmd + "." + f.key];
    if (!v.empty()) set(f.key, v);
  }
  if (!out.empty()) set("out", out);
  if (!format.empty()) set("format", format);
  if (threads > 0) set("threads", std::to_string(threads));
  for (const std::string& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "pspec: usage: --set expects key=value, got '%s'\n", s.c_str());
      pspec_config_free(cfg);
      return PSPEC_USAGE;
    }
    set(s.substr(0, eq), s.substr(eq + 1));
  }
  if (st) {
    pspec_config_free(cfg);
    return finish_error(st);
  }

  pspec_result* res = nullptr;
  st = pspec_run(cmd.c_str(), cfg, &res);
  pspec_config_free(cfg);
  if (st) return finish_error(st);
  if (!quiet) std::printf("%s\n", pspec_result_json(res));
  const int passed = pspec_result_passed(res);
  pspec_result_free(res);
  if (!passed) {
    std::fprintf(stderr, "pspec: check-failed\n");
    return PSPEC_CHECK_FAILED;
  }
  return 0;
}
