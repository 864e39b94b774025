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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "pspec/error.hpp"
#include "pspec/io.hpp"

using namespace pspec;
namespace fs = std::filesystem;
constexpr double kPi = 3.141592653589793;

namespace {

SpectrumCurve sample_curve() {
  SpectrumCurve c;
  c.provenance = Provenance::monte_carlo;
  c.push(0.1, 16.123456789012345, 0.25);
  c.push(1.0 / 3.0, 2.0 / 7.0, std::numeric_limits<double>::quiet_NaN());
  c.push(kPi, 0.5, 1e-300);
  c.extra = {{"theory", {1.0, 2.0, 3.0}}, {"flag", {0.0, std::numeric_limits<double>::quiet_NaN(), 1.0}}};
  c.meta = {{"N", "64"}, {"seed", "9"}};
  return c;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

void check_same(const SpectrumCurve& a, const SpectrumCurve& b) {
  REQUIRE(a.size() == b.size());
  CHECK(a.provenance == b.provenance);
  CHECK(a.axis == b.axis);
  CHECK(a.quantity == b.quantity);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.x[i] == b.x[i]);
    CHECK(a.value[i] == b.value[i]);
    CHECK(same(a.stderr_[i], b.stderr_[i]));
  }
  REQUIRE(a.extra.size() == b.extra.size());
  for (std::size_t j = 0; j < a.extra.size(); ++j) {
    CHECK(a.extra[j].first == b.extra[j].first);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(same(a.extra[j].second[i], b.extra[j].second[i]));
  }
  CHECK(a.meta == b.meta);
}

}  // namespace

TEST_CASE("config parsing") {
  Config c;
  c.parse("# comment\nN = 64\n  seed=7  \ngrid = linspace:0.1:3:5 # trailing\n");
  CHECK(c.get_int("N") == 64);
  CHECK(c.get_u64_or("seed", 0) == 7);
  CHECK(c.get("grid") == "linspace:0.1:3:5");
  CHECK(c.get_or("engine", "dpv") == "dpv");
  CHECK_THROWS_AS(c.set("nope", "1"), Error);
  CHECK_THROWS_AS(c.parse("N 64"), Error);
  c.set("N", "abc");
  CHECK_THROWS_AS(c.get_int("N"), Error);
  CHECK_THROWS_AS(c.get("R"), Error);
  Config d;
  d.parse(c.to_text());
  CHECK(d.values() == c.values());
  c.set("long_run", "true");
  CHECK(c.get_bool_or("long_run", false));
}

TEST_CASE("grid specs") {
  const auto g = parse_grid("discrete", 8);
  REQUIRE(g.size() == 4);
  CHECK(g.back() == doctest::Approx(kPi));
  const auto h = parse_grid("discrete1", 8);
  CHECK(h.size() == 4);
  CHECK(h[0] == doctest::Approx(2 * kPi / 9));
  const auto l = parse_grid("linspace:0.5:1.5:3", 8);
  CHECK(l == std::vector<double>{0.5, 1.0, 1.5});
  const auto lg = parse_grid("logspace:0.01:1:3", 8);
  CHECK(lg[1] == doctest::Approx(0.1));
  CHECK(parse_grid("list:0.3,0.1", 8) == std::vector<double>{0.1, 0.3});
  CHECK_THROWS_AS(parse_grid("linspace:1:0:3", 8), Error);
  CHECK_THROWS_AS(parse_grid("spiral", 8), Error);
}

TEST_CASE("csv and json round trips are exact") {
  const fs::path dir = fs::temp_directory_path() / "pspec_io_test";
  fs::create_directories(dir);
  const auto c = sample_curve();
  Config cfg;
  cfg.set("N", "64");
  for (const char* ext : {".csv", ".json"}) {
    const std::string p = (dir / (std::string("c") + ext)).string();
    save_curve(c, p, &cfg);
    check_same(c, load_curve(p));
    std::ifstream in(p);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find(kCurveSchema) != std::string::npos);
    CHECK(text.find("N") != std::string::npos);
  }
  check_same(c, curve_from_json_text(curve_to_json_text(c)));
  CHECK_THROWS_AS(load_curve((dir / "missing.csv").string()), Error);
  CHECK_THROWS_AS(save_curve(c, (dir / "x.txt").string()), Error);
  fs::remove_all(dir);
}

TEST_CASE("malformed curve files are rejected") {
  const fs::path p = fs::temp_directory_path() / "pspec_bad.csv";
  std::ofstream(p) << "# schema: pspec.curve/1\n# provenance: monte-carlo\n# quantity: S\nomega,value,stderr\n0.1,abc,1\n";
  CHECK_THROWS_AS(load_curve(p.string()), Error);
  std::ofstream(p) << "# schema: other/9\nomega,value,stderr\n0.1,1,1\n";
  CHECK_THROWS_AS(load_curve(p.string()), Error);
  fs::remove(p);
}
