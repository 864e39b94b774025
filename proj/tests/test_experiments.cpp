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

#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pspec/error.hpp"
#include "pspec/experiments.hpp"

using namespace pspec;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Status status_of(const std::string& cmd, const Config& c) {
  try {
    run_experiment(cmd, c);
  } catch (const Error& e) {
    return e.status();
  }
  return Status::ok;
}

}  // namespace

TEST_CASE("parallel_for runs every index once and rethrows") {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](int i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](int i) {
                    if (i == 7) throw std::runtime_error("x");
                  }),
                  std::runtime_error);
}

TEST_CASE("simulate is reproducible and independent of the worker count") {
  const fs::path dir = fs::temp_directory_path() / "pspec_exp_test";
  fs::create_directories(dir);
  Config c;
  c.parse("generator = exp\nN = 128\nR = 400\nseed = 5\ntau_grid = linspace:0.01:1:5\nformat = csv\n");
  c.set("out", (dir / "a").string());
  c.set("threads", "1");
  run_experiment("simulate", c);
  c.set("out", (dir / "b").string());
  c.set("threads", "3");
  run_experiment("simulate", c);
  // Files embed the config, so compare the data lines only.
  auto data = [&](const std::string& p) {
    std::istringstream in(slurp(p));
    std::string line, out;
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#') out += line + "\n";
    return out;
  };
  CHECK(data((dir / "a_S.csv").string()) == data((dir / "b_S.csv").string()));
  CHECK(data((dir / "a_K.csv").string()) == data((dir / "b_K.csv").string()));
  // A config file alone reproduces the run.
  const auto loaded = load_curve((dir / "a_S.csv").string());
  CHECK(loaded.meta.at("seed") == "5");
  fs::remove_all(dir);
}

TEST_CASE("usage and data errors") {
  Config c;
  c.parse("N = 8\nR = 1\n");
  CHECK(status_of("simulate", c) == Status::insufficient_data);
  Config d;
  d.parse("N = 8\nR = 10\ngenerator = cauchy\n");
  CHECK(status_of("simulate", d) == Status::usage);
  CHECK(status_of("fly", d) == Status::usage);
  Config f;
  f.parse("figure = 4\nscale = full\n");
  CHECK(status_of("figures", f) == Status::usage);
  try {
    run_experiment("figures", f);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("estimated") != std::string::npos);
  }
}

TEST_CASE("compare: self comparison passes, disjoint grids fail") {
  SpectrumCurve a;
  for (int i = 1; i <= 10; ++i) a.push(0.3 * i, 1.0 / i, 0.01);
  const auto r = compare_curves(a, a, 1e-12, -1e300, 1e300);
  CHECK(r.passed);
  CHECK(r.max_rel == 0.0);
  CHECK(r.chi2_per_point == 0.0);
  SpectrumCurve b;
  b.push(0.01, 1.0, 0.1);
  b.push(0.02, 1.0, 0.1);
  CHECK_THROWS_AS(compare_curves(a, b, 0.1, -1e300, 1e300), Error);
  // Interpolation on the denser grid.
  SpectrumCurve lin, coarse;
  for (int i = 0; i <= 20; ++i) lin.push(0.1 + 0.1 * i, 2.0 + 0.1 * i, 0.0);
  coarse.push(0.35, 2.25, 0.0);
  coarse.push(1.05, 2.95, 0.0);
  const auto q = compare_curves(coarse, lin, 1e-9, -1e300, 1e300);
  CHECK(q.points == 2);
  CHECK(q.max_rel < 1e-12);
}

TEST_CASE("theory and figures desk runs produce curves") {
  Config t;
  t.parse("generator = tcue\nN = 16\ngrid = discrete1\n");
  const auto r = run_experiment("theory", t);
  REQUIRE(r.curves.size() == 1);
  CHECK(r.curves[0].second.provenance == Provenance::tcue_theory);
  const auto j = json::parse(r.report_json);
  CHECK(j["schema"] == kReportSchema);
  Config f;
  f.parse("figure = 3\nN = 50\n");
  const auto g = run_experiment("figures", f);
  REQUIRE(g.curves.size() == 1);
  CHECK(g.curves[0].second.extra.size() == 12);
}

TEST_CASE("verify oracles suite passes") {
  Config v;
  v.set("suite", "oracles");
  const auto r = run_experiment("verify", v);
  CHECK(r.passed);
  const auto j = json::parse(r.report_json);
  CHECK(j["checks"].size() >= 5);
}
