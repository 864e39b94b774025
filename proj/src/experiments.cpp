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

#include "pspec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pspec/baselines.hpp"
#include "pspec/error.hpp"
#include "pspec/generators.hpp"
#include "pspec/oracles.hpp"
#include "pspec/theory.hpp"
#include "pspec/universal.hpp"

namespace pspec {

namespace {

using json = nlohmann::json;
constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool is_uncorrelated(const std::string& g) {
  return g == "exp" || g == "erlang3" || g == "ig13" || g == "uniform" || g == "degenerate";
}

json nan_safe(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

int worker_count(const Config* cfg) {
  long long n = 0;
  if (cfg && cfg->has("threads")) n = cfg->get_int("threads");
  if (n <= 0) {
    if (const char* env = std::getenv("PSPEC_THREADS")) n = std::atoll(env);
  }
  if (n <= 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<int>(std::min<long long>(n, 256));
}

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  if (n <= 0) return;
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex emu;
  int err_index = n;
  std::exception_ptr err;
  auto run = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(emu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

struct SimSpec {
  std::string generator = "exp";
  int N = 0;
  long R = 0;
  std::uint64_t seed = 1;
  CueMethod method = CueMethod::qr;
  std::vector<double> grid, tau;
  int batches = 16;
  int workers = 1;
};

struct SimOut {
  SpectrumCurve S, K;
  bool has_K = false;
  double seconds = 0.0;
};

SimOut simulate(const SimSpec& sp) {
  require(sp.N >= 1, Status::usage, "simulate: N must be >= 1");
  if (sp.R < 2) fail(Status::insufficient_data, "simulate: need R >= 2 realizations");
  const bool unc = is_uncorrelated(sp.generator);
  require(unc || sp.generator == "cue" || sp.generator == "tcue", Status::usage,
          "simulate: unknown generator '" + sp.generator + "'");
  const SpacingDistribution dist = unc ? SpacingDistribution::by_name(sp.generator) : SpacingDistribution{};
  const auto t0 = std::chrono::steady_clock::now();
  const int B = static_cast<int>(std::min<long>(sp.batches, sp.R));
  SpectrumAccumulator acc(sp.N, 1.0, sp.grid, sp.tau, sp.R, B);
  parallel_for(B, sp.workers, [&](int b) {
    const long lo = (long(b) * sp.R + B - 1) / B, hi = (long(b + 1) * sp.R + B - 1) / B;
    std::vector<double> lv(sp.N);
    for (long r = lo; r < hi; ++r) {
      SeededStream s(sp.seed, static_cast<std::uint64_t>(r));
      if (unc) {
        gen_uncorrelated_into(dist, s, lv);
      } else if (sp.generator == "cue") {
        lv = unfold_cue(gen_cue(sp.N, s, sp.method)).levels;
      } else {
        lv = unfold_tcue(gen_tcue(sp.N, s, sp.method)).levels;
      }
      acc.add(b, lv);
    }
  });
  SimOut out;
  if (!sp.grid.empty()) out.S = acc.power_spectrum();
  if (!sp.tau.empty()) {
    out.K = acc.form_factor();
    out.has_K = true;
  }
  out.seconds = seconds_since(t0);
  for (SpectrumCurve* c : {&out.S, &out.K}) {
    c->meta["generator"] = sp.generator;
    c->meta["seed"] = std::to_string(sp.seed);
    c->meta["batches"] = std::to_string(B);
    if (!unc) c->meta["cue_method"] = sp.method == CueMethod::qr ? "qr" : "cmv";
  }
  return out;
}

SimSpec sim_spec_from(const Config& cfg, const std::string& default_generator = "exp") {
  SimSpec sp;
  sp.generator = cfg.get_or("generator", default_generator);
  sp.N = static_cast<int>(cfg.get_int("N"));
  sp.R = static_cast<long>(cfg.get_int("R"));
  sp.seed = cfg.get_u64_or("seed", 1);
  sp.method = cue_method_from_name(cfg.get_or("cue_method", "qr"));
  const std::string grid = cfg.get_or("grid", "discrete");
  sp.grid = grid == "none" ? std::vector<double>{} : parse_grid(grid, sp.N);
  const std::string tau = cfg.get_or("tau_grid", "none");
  sp.tau = tau == "none" ? std::vector<double>{} : parse_grid(tau, sp.N);
  sp.batches = static_cast<int>(cfg.get_int_or("batches", 16));
  require(sp.batches >= 2, Status::usage, "batches must be >= 2 for error bars");
  sp.workers = worker_count(&cfg);
  require(!sp.grid.empty() || !sp.tau.empty(), Status::usage, "simulate: both grids are empty");
  return sp;
}

// ---------------------------------------------------------------------------
// Theory

QuadOptions quad_from(const Config& cfg) {
  QuadOptions q;
  const std::string eng = cfg.get_or("engine", "dpv");
  if (eng == "dpv")
    q.engine = Engine::dpv;
  else if (eng == "toeplitz")
    q.engine = Engine::toeplitz;
  else
    fail(Status::usage, "engine must be dpv or toeplitz");
  const std::string prec = cfg.get_or("precision", "extended");
  if (prec == "extended")
    q.phi.precision = Precision::extended;
  else if (prec == "double")
    q.phi.precision = Precision::standard;
  else
    fail(Status::usage, "precision must be double or extended");
  q.tolerance = cfg.get_double_or("tol", q.tolerance);
  q.phi.delta_scale = cfg.get_double_or("delta_scale", q.phi.delta_scale);
  q.panel_scale = cfg.get_double_or("panel_scale", q.panel_scale);
  require(q.tolerance > 0.0 && q.phi.delta_scale > 0.0 && q.panel_scale > 0.0, Status::usage,
          "tol, delta_scale and panel_scale must be positive");
  return q;
}

// S_N at omega, using the discrete form on 2 pi k/(N+1).
TcueResult tcue_at(int N, double omega, const QuadOptions& q) {
  const double kf = omega * (N + 1) / kTwoPi;
  const long k = std::lround(kf);
  if (k >= 1 && 2 * k <= N + 1 && std::abs(kf - double(k)) < 1e-10) return s_tcue_discrete(N, int(k), q);
  return s_tcue(N, omega, q);
}

SpectrumCurve tcue_curve(int N, const std::vector<double>& grid, const QuadOptions& q, int workers) {
  std::vector<TcueResult> res(grid.size());
  parallel_for(static_cast<int>(grid.size()), workers, [&](int i) { res[i] = tcue_at(N, grid[i], q); });
  SpectrumCurve c;
  c.provenance = Provenance::tcue_theory;
  std::vector<double> err, im, evals;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    c.push(grid[i], res[i].value, kNaN);
    err.push_back(res[i].error);
    im.push_back(res[i].imag_residue);
    evals.push_back(double(res[i].integrals.evaluations));
  }
  c.extra = {{"quad_error", err}, {"imag_residue", im}, {"evaluations", evals}};
  c.meta["N"] = std::to_string(N);
  c.meta["engine"] = q.engine == Engine::dpv ? "dpv" : "toeplitz";
  c.meta["precision"] = q.phi.precision == Precision::extended ? "extended" : "double";
  return c;
}

SpectrumCurve uncorrelated_curve(int N, const std::vector<double>& grid, double sigma2) {
  SpectrumCurve c;
  c.provenance = Provenance::exact_baseline;
  for (double w : grid) c.push(w, s_uncorrelated_exact(N, w, sigma2), kNaN);
  c.meta["N"] = std::to_string(N);
  c.meta["sigma2"] = std::to_string(sigma2);
  return c;
}

SpectrumCurve form_factor_curve(int N, const std::vector<double>& tau, const SpacingDistribution& d) {
  SpectrumCurve c;
  c.provenance = Provenance::exact_baseline;
  c.axis = Axis::tau;
  c.quantity = "K";
  for (double t : tau) c.push(t, t == 0.0 ? 0.0 : form_factor_exact(N, t, d), kNaN);
  c.meta["N"] = std::to_string(N);
  c.meta["distribution"] = d.name;
  return c;
}

// ---------------------------------------------------------------------------
// Output

struct Writer {
  const Config& cfg;
  RunResult& rr;
  void emit(const std::string& name, SpectrumCurve c) {
    c.validate();
    const std::string out = cfg.get_or("out", "");
    if (!out.empty()) {
      const std::string f = cfg.get_or("format", "both");
      require(f == "csv" || f == "json" || f == "both", Status::usage, "format must be csv, json or both");
      if (f != "json") {
        save_curve_csv(c, out + "_" + name + ".csv", &cfg);
        rr.files.push_back(out + "_" + name + ".csv");
      }
      if (f != "csv") {
        save_curve_json(c, out + "_" + name + ".json", &cfg);
        rr.files.push_back(out + "_" + name + ".json");
      }
    }
    rr.curves.emplace_back(name, std::move(c));
  }
};

json curve_summary(const std::string& name, const SpectrumCurve& c) {
  json j;
  j["name"] = name;
  j["provenance"] = provenance_name(c.provenance);
  j["quantity"] = c.quantity;
  j["points"] = c.size();
  if (c.size() > 0) {
    j["x_min"] = c.x.front();
    j["x_max"] = c.x.back();
  }
  return j;
}

void finish(RunResult& rr, json& report, const std::string& command, const Config& cfg) {
  report["schema"] = kReportSchema;
  report["command"] = command;
  report["config"] = cfg.values();
  json cs = json::array();
  for (const auto& [n, c] : rr.curves) cs.push_back(curve_summary(n, c));
  report["curves"] = cs;
  report["files"] = rr.files;
  report["passed"] = rr.passed;
  rr.report_json = report.dump(2);
}

// ---------------------------------------------------------------------------
// Commands

RunResult cmd_simulate(const Config& cfg) {
  RunResult rr;
  Writer w{cfg, rr};
  SimSpec sp = sim_spec_from(cfg);
  SimOut o = simulate(sp);
  json report;
  if (!sp.grid.empty()) w.emit("S", o.S);
  if (o.has_K) w.emit("K", o.K);
  report["seconds"] = o.seconds;
  finish(rr, report, "simulate", cfg);
  return rr;
}

RunResult cmd_theory(const Config& cfg) {
  RunResult rr;
  Writer w{cfg, rr};
  const std::string g = cfg.get_or("generator", "tcue");
  const int N = static_cast<int>(cfg.get_int("N"));
  require(N >= 1, Status::usage, "theory: N must be >= 1");
  const std::string gs = cfg.get_or("grid", is_uncorrelated(g) ? "discrete" : "discrete1");
  json report;
  const auto t0 = std::chrono::steady_clock::now();
  if (is_uncorrelated(g)) {
    const SpacingDistribution d = SpacingDistribution::by_name(g);
    const double s2 = cfg.get_double_or("sigma2", d.variance);
    if (gs != "none") w.emit("S", uncorrelated_curve(N, parse_grid(gs, N), s2));
    const std::string ts = cfg.get_or("tau_grid", "none");
    if (ts != "none") w.emit("K", form_factor_curve(N, parse_grid(ts, N), d));
  } else if (g == "tcue" || g == "cue") {
    // The CUE has no finite-N closed form here; the tuned ensemble is its theory proxy.
    SpectrumCurve c = tcue_curve(N, parse_grid(gs, N), quad_from(cfg), worker_count(&cfg));
    w.emit("S", std::move(c));
  } else {
    fail(Status::usage, "theory: unknown generator '" + g + "'");
  }
  report["seconds"] = seconds_since(t0);
  finish(rr, report, "theory", cfg);
  return rr;
}

UniversalConfig universal_from(const Config& cfg) {
  UniversalConfig u;
  u.proxy_N = static_cast<int>(cfg.get_int_or("proxy_N", u.proxy_N));
  u.convergence_check = cfg.get_bool_or("check_convergence", true);
  u.tolerance = cfg.get_double_or("tolerance", u.tolerance);
  u.quad = quad_from(cfg);
  return u;
}

SpectrumCurve universal_curve(const std::vector<double>& grid, const UniversalConfig& u, int workers,
                              std::vector<std::string>& warnings) {
  std::vector<UniversalResult> res(grid.size());
  parallel_for(static_cast<int>(grid.size()), workers, [&](int i) { res[i] = s_infinity(grid[i], u); });
  SpectrumCurve c;
  c.provenance = Provenance::universal_law;
  std::vector<double> dS, ref, dref, conv;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid[i];
    const double sing = 1.0 / (kTwoPi * w);
    c.push(w, res[i].value, kNaN);
    dS.push_back(res[i].value - sing);
    ref.push_back(s_small_omega(w));
    dref.push_back(s_small_omega(w) - sing);
    conv.push_back(res[i].convergence);
    if (!res[i].warning.empty()) warnings.push_back("omega=" + std::to_string(w) + ": " + res[i].warning);
  }
  c.extra = {{"delta_S", dS}, {"small_omega", ref}, {"small_omega_delta", dref}, {"convergence", conv}};
  c.meta["proxy_N"] = std::to_string(u.proxy_N);
  return c;
}

RunResult cmd_universal(const Config& cfg) {
  RunResult rr;
  Writer w{cfg, rr};
  const UniversalConfig u = universal_from(cfg);
  const std::vector<double> grid = parse_grid(cfg.get_or("grid", "logspace:0.02:3.0:24"), u.proxy_N);
  std::vector<std::string> warnings;
  json report;
  const auto t0 = std::chrono::steady_clock::now();
  w.emit("S", universal_curve(grid, u, worker_count(&cfg), warnings));
  report["warnings"] = warnings;
  report["seconds"] = seconds_since(t0);
  finish(rr, report, "universal", cfg);
  return rr;
}

std::pair<double, double> parse_window(const std::string& s) {
  if (s.empty()) return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  const auto c = s.find(':');
  require(c != std::string::npos, Status::usage, "window must look like lo:hi");
  char* e = nullptr;
  const double lo = std::strtod(s.substr(0, c).c_str(), &e);
  const double hi = std::strtod(s.substr(c + 1).c_str(), &e);
  require(lo < hi, Status::usage, "window: lo must be below hi");
  return {lo, hi};
}

json compare_json(const CompareReport& r) {
  json j;
  j["points"] = r.points;
  j["max_rel"] = r.max_rel;
  j["rms_rel"] = r.rms_rel;
  j["chi2_per_point"] = nan_safe(r.chi2_per_point);
  j["tolerance"] = r.tolerance;
  j["window"] = {nan_safe(r.lo), nan_safe(r.hi)};
  j["passed"] = r.passed;
  return j;
}

RunResult cmd_compare(const Config& cfg) {
  RunResult rr;
  const SpectrumCurve a = load_curve(cfg.get("curve_a"));
  const SpectrumCurve b = load_curve(cfg.get("curve_b"));
  const auto [lo, hi] = parse_window(cfg.get_or("window", ""));
  const CompareReport r = compare_curves(a, b, cfg.get_double_or("tolerance", 0.01), lo, hi);
  json report;
  report["comparison"] = compare_json(r);
  rr.passed = r.passed;
  finish(rr, report, "compare", cfg);
  return rr;
}

// ---------------------------------------------------------------------------
// Verification suites

struct Check {
  std::string name;
  double value;
  double threshold;
  bool passed;
};

void add_check(std::vector<Check>& v, const std::string& name, double value, double threshold) {
  v.push_back({name, value, threshold, std::isfinite(value) && value <= threshold});
}

cd zeta_of(double omega) { return 1.0 - std::polar(1.0, omega); }

std::vector<double> probabilities_from(int N, const std::function<cd(cd)>& phi_of_zeta) {
  // Phi is a degree-N polynomial in x = 1 - zeta; invert at the (N+1)-th roots of unity.
  const int M = N + 1;
  std::vector<cd> vals(M);
  for (int j = 0; j < M; ++j) vals[j] = phi_of_zeta(1.0 - std::polar(1.0, kTwoPi * j / M));
  std::vector<double> e(M);
  for (int l = 0; l < M; ++l) {
    cd s = 0.0;
    for (int j = 0; j < M; ++j) s += vals[j] * std::polar(1.0, -kTwoPi * double(j) * l / M);
    e[l] = s.real() / M;
  }
  return e;
}

void suite_oracles(std::vector<Check>& out) {
  const double phis[] = {0.5, kPi, 5.0};
  const double omegas[] = {0.3, 1.0, 2.0};
  double bf = 0.0;
  for (int N = 1; N <= 3; ++N)
    for (double p : phis)
      for (double w : omegas)
        bf = std::max(bf, std::abs(phi_bruteforce(N, p, zeta_of(w)) - phi_toeplitz(N, p, zeta_of(w), false).value));
  add_check(out, "toeplitz_vs_bruteforce_N<=3", bf, 1e-8);

  double n1 = 0.0;
  for (double p : {0.3, 2.0, 4.5})
    for (double w : omegas) {
      const cd z = zeta_of(w);
      n1 = std::max(n1, std::abs(phi_toeplitz(1, p, z, false).value - (1.0 - z / kTwoPi * (p - std::sin(p)))));
    }
  add_check(out, "toeplitz_N1_closed_form", n1, 1e-13);

  double fr = 0.0;
  for (int N : {2, 4, 6})
    for (double p : phis)
      for (double w : omegas)
        fr = std::max(fr, std::abs(phi_fredholm(N, p, zeta_of(w)) - phi_toeplitz(N, p, zeta_of(w), false).value));
  add_check(out, "fredholm_vs_toeplitz_N<=6", fr, 1e-8);

  double sym = 0.0;
  for (int N : {4, 16, 64})
    for (double p : {0.4, 1.7, 2.9})
      for (double w : {0.1, 1.0, 2.5}) {
        const cd z = zeta_of(w), x = 1.0 - z;
        const cd lhs = phi_toeplitz(N, kTwoPi - p, z, false).value;
        const cd rhs = std::pow(x, N) * std::conj(phi_toeplitz(N, p, z, false).value);
        sym = std::max(sym, std::abs(lhs - rhs));
      }
  add_check(out, "toeplitz_symmetry_N<=64", sym, 1e-10);

  double neg = 0.0, sum = 0.0, vsbf = 0.0;
  for (int N : {2, 3, 16, 48})
    for (double p : {0.7, 3.0, 5.5}) {
      const auto e = extract_probabilities(N, p);
      double s = 0.0;
      for (double v : e) {
        neg = std::max(neg, -v);
        s += v;
      }
      sum = std::max(sum, std::abs(s - 1.0));
      if (N <= 3) {
        const auto eb = probabilities_from(N, [&](cd z) { return phi_bruteforce(N, p, z); });
        for (std::size_t l = 0; l < e.size(); ++l) vsbf = std::max(vsbf, std::abs(e[l] - eb[l]));
      }
    }
  add_check(out, "probabilities_negativity", neg, 1e-9);
  add_check(out, "probabilities_sum", sum, 1e-10);
  add_check(out, "probabilities_vs_bruteforce_N<=3", vsbf, 1e-7);
}

void suite_dpv(std::vector<Check>& out) {
  double dv = 0.0, dd = 0.0;
  for (int N : {1, 2, 3, 5, 8, 16, 32, 64})
    for (double p : {0.02, 0.5, 2.0, kPi, 5.0})
      for (double w : {0.3, 1.0, 2.0}) {
        const cd z = zeta_of(w);
        const GfPoint a = phi_eval(N, p, z, true);
        const GfPoint b = phi_toeplitz(N, p, z, true);
        dv = std::max(dv, std::abs(a.value - b.value));
        dd = std::max(dd, std::abs(a.dzeta - b.dzeta) / std::max(std::abs(b.dzeta), 1e-300));
      }
  add_check(out, "dpv_vs_toeplitz_value_N<=64", dv, 1e-10);
  add_check(out, "dpv_vs_toeplitz_derivative_rel_N<=64", dd, 1e-8);

  PhiOptions direct;
  direct.use_symmetry = false;
  double sym = 0.0;
  for (int N : {16, 128, 512})
    for (double p : {0.3, 1.3, 2.8})
      for (double w : {0.3, 1.0, 2.5}) {
        const cd z = zeta_of(w);
        const cd x = 1.0 - z;
        const cd lhs = phi_eval(N, kTwoPi - p, z, false, direct).value;
        const cd rhs = ipow(Cx<ExtReal>(x), N).to_std() * std::conj(phi_eval(N, p, z, false, direct).value);
        sym = std::max(sym, std::abs(lhs - rhs));
      }
  add_check(out, "dpv_symmetry_N<=512", sym, 1e-12);
}

void suite_pipeline(std::vector<Check>& out) {
  double in0 = 0.0;
  for (int N : {64, 256, 512})
    for (double w : {0.3, 1.0, 2.5}) in0 = std::max(in0, i_n0_check(N, zeta_of(w)).residual);
  add_check(out, "i_n0_residual_N<=512", in0, 1e-8);

  double s1 = 0.0;
  for (double w : {0.3, 1.0, 3.0}) s1 = std::max(s1, std::abs(s_tcue(1, w).value - (1.0 / 3.0 - 2.0 / (kPi * kPi))));
  add_check(out, "s_tcue_N1_exact", s1, 1e-10);

  QuadOptions toe;
  toe.engine = Engine::toeplitz;
  double eng = 0.0;
  for (double w : {0.3, 1.0, 2.0}) eng = std::max(eng, std::abs(s_tcue(64, w).value - s_tcue(64, w, toe).value));
  add_check(out, "s_tcue_engine_agreement_N64", eng, 1e-7);

  double disc = 0.0;
  for (int k : {3, 10, 32}) {
    const double a = s_tcue_discrete(64, k).value, b = s_tcue(64, kTwoPi * k / 65.0).value;
    disc = std::max(disc, std::abs(a - b) / std::abs(a));
  }
  add_check(out, "s_tcue_discrete_vs_general_N64", disc, 1e-9);
}

RunResult cmd_verify(const Config& cfg) {
  RunResult rr;
  const std::string suite = cfg.get_or("suite", "all");
  require(suite == "all" || suite == "oracles" || suite == "dpv" || suite == "pipeline", Status::usage,
          "suite must be oracles, dpv, pipeline or all");
  std::vector<Check> checks;
  const auto t0 = std::chrono::steady_clock::now();
  if (suite == "all" || suite == "oracles") suite_oracles(checks);
  if (suite == "all" || suite == "dpv") suite_dpv(checks);
  if (suite == "all" || suite == "pipeline") suite_pipeline(checks);
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"value", nan_safe(c.value)}, {"threshold", c.threshold}, {"passed", c.passed}});
    rr.passed = rr.passed && c.passed;
  }
  json report;
  report["suite"] = suite;
  report["checks"] = arr;
  report["seconds"] = seconds_since(t0);
  finish(rr, report, "verify", cfg);
  return rr;
}

// ---------------------------------------------------------------------------
// Figures

std::string hours(double s) {
  std::ostringstream os;
  os.precision(3);
  if (s < 3600.0)
    os << s / 60.0 << " min";
  else
    os << s / 3600.0 << " h";
  return os.str();
}

// Rough single-core cost model used for the full-scale refusal message.
double estimate_seconds(int figure) {
  const double tcue_point_1e4 = 4.0 * 1e4 * 1e4 * 1.9e-6;  // ~4N evaluations of an N-step recurrence
  switch (figure) {
    case 1: return 1e7 * 2048 * 2.5e-8;
    case 2: return 1e7 * 2048 * 24 * 2.0e-8;
    case 3: return 1.0;
    case 4: return 1e7 * 2.9e-3 + 64 * tcue_point_1e4;
    case 5: return 4e8 * 1.2e-2 + 64 * 3 * tcue_point_1e4;
    default: return 0.0;
  }
}

RunResult cmd_figures(const Config& cfg) {
  RunResult rr;
  Writer w{cfg, rr};
  const int fig = static_cast<int>(cfg.get_int("figure"));
  require(fig >= 1 && fig <= 5, Status::usage, "figure must be 1..5");
  const std::string scale = cfg.get_or("scale", "desk");
  require(scale == "desk" || scale == "full", Status::usage, "scale must be desk or full");
  const bool full = scale == "full";
  if (full && !cfg.get_bool_or("long_run", false))
    fail(Status::usage, "figure " + std::to_string(fig) + " at full scale needs long_run=true (estimated " +
                            hours(estimate_seconds(fig)) + " on one core)");
  const int workers = worker_count(&cfg);
  const std::uint64_t seed = cfg.get_u64_or("seed", 1);
  json report;
  const auto t0 = std::chrono::steady_clock::now();

  if (fig == 1 || fig == 2) {
    SimSpec sp;
    sp.generator = "exp";
    sp.N = static_cast<int>(cfg.get_int_or("N", 2048));
    sp.R = static_cast<long>(cfg.get_int_or("R", full ? 10000000 : 100000));
    sp.seed = seed;
    sp.workers = workers;
    sp.batches = static_cast<int>(cfg.get_int_or("batches", 16));
    const auto dist = SpacingDistribution::exponential();
    if (fig == 1) {
      sp.grid = parse_grid(cfg.get_or("grid", "discrete"), sp.N);
      SimOut o = simulate(sp);
      std::vector<double> th;
      for (double x : o.S.x) th.push_back(s_uncorrelated_exact(sp.N, x, 1.0));
      o.S.extra.push_back({"theory", th});
      w.emit("fig1", o.S);
    } else {
      sp.tau = parse_grid(cfg.get_or("tau_grid", "logspace:" + std::to_string(1.0 / sp.N) + ":2:24"), sp.N);
      SimOut o = simulate(sp);
      std::vector<double> th, k1, k2, k3;
      for (double t : o.K.x) {
        th.push_back(form_factor_exact(sp.N, t, dist));
        k1.push_back(form_factor_scaling(Regime::infrared, t * sp.N, dist));
        k2.push_back(form_factor_scaling(Regime::intermediate, t * std::sqrt(double(sp.N)), dist));
        k3.push_back(form_factor_scaling(Regime::fixed, t, dist));
      }
      o.K.extra = {{"theory", th}, {"regime_I", k1}, {"regime_II", k2}, {"regime_III", k3}};
      w.emit("fig2", o.K);
    }
  } else if (fig == 3) {
    // Compactified axis: each regime variable runs over tan(u), u in (0, pi/2).
    const int n = static_cast<int>(cfg.get_int_or("N", 200));
    SpectrumCurve c;
    c.provenance = Provenance::exact_baseline;
    c.axis = Axis::other;
    c.quantity = "tan_u";
    std::vector<std::pair<std::string, std::vector<double>>> cols;
    const SpacingDistribution ds[] = {SpacingDistribution::erlang3(), SpacingDistribution::inverse_gaussian(),
                                      SpacingDistribution::uniform()};
    for (const auto& d : ds)
      for (const char* r : {"I", "II", "III"}) cols.push_back({std::string("K_") + r + "_" + d.name, {}});
    for (const char* r : {"I", "II", "III"}) cols.push_back({std::string("S_") + r, {}});
    const double s2 = 1.0 / 3.0;
    for (int i = 1; i < n; ++i) {
      const double u = 0.5 * kPi * i / n, t = std::tan(u);
      c.push(u, t, kNaN);
      std::size_t k = 0;
      for (const auto& d : ds) {
        cols[k++].second.push_back(form_factor_scaling(Regime::infrared, t, d));
        cols[k++].second.push_back(form_factor_scaling(Regime::intermediate, t, d));
        cols[k++].second.push_back(form_factor_scaling(Regime::fixed, t, d));
      }
      cols[k++].second.push_back(s_scaling(Regime::infrared, kTwoPi * t, s2));
      cols[k++].second.push_back(s_scaling(Regime::intermediate, kTwoPi * t, s2));
      cols[k++].second.push_back(t <= 0.5 ? s_scaling(Regime::fixed, kTwoPi * t, s2) : kNaN);
    }
    c.extra = cols;
    c.meta["sigma2"] = "1/3";
    w.emit("fig3", c);
  } else if (fig == 4) {
    const int N = static_cast<int>(cfg.get_int_or("N", 256));
    const int Nt = static_cast<int>(cfg.get_int_or("proxy_N", full ? 10000 : N));
    SimSpec sp;
    sp.generator = "cue";
    sp.N = N;
    sp.R = static_cast<long>(cfg.get_int_or("R", full ? 10000000 : 100000));
    sp.seed = seed;
    sp.method = cue_method_from_name(cfg.get_or("cue_method", "cmv"));
    sp.workers = workers;
    sp.batches = static_cast<int>(cfg.get_int_or("batches", 16));
    sp.grid = parse_grid(cfg.get_or("grid", "discrete"), N);
    SimOut o = simulate(sp);
    SpectrumCurve th = tcue_curve(Nt, o.S.x, quad_from(cfg), workers);
    o.S.extra.push_back({"theory_N" + std::to_string(Nt), th.value});
    w.emit("fig4", o.S);
  } else {
    UniversalConfig u = universal_from(cfg);
    if (!cfg.has("proxy_N")) u.proxy_N = full ? 10000 : 1000;
    const std::vector<double> grid = parse_grid(cfg.get_or("grid", "linspace:0.05:3.09:24"), u.proxy_N);
    std::vector<std::string> warnings;
    SpectrumCurve c = universal_curve(grid, u, workers, warnings);
    const int N = static_cast<int>(cfg.get_int_or("N", 512));
    SimSpec sp;
    sp.generator = "cue";
    sp.N = N;
    sp.R = static_cast<long>(cfg.get_int_or("R", full ? 400000000 : 20000));
    sp.seed = seed;
    sp.method = cue_method_from_name(cfg.get_or("cue_method", "cmv"));
    sp.workers = workers;
    sp.batches = static_cast<int>(cfg.get_int_or("batches", 16));
    sp.grid = parse_grid("discrete", N);
    SimOut o = simulate(sp);
    // Monte Carlo delta S on its own grid, as a separate table.
    std::vector<double> d;
    for (std::size_t i = 0; i < o.S.size(); ++i) d.push_back(o.S.value[i] - 1.0 / (kTwoPi * o.S.x[i]));
    o.S.extra.push_back({"delta_S", d});
    report["warnings"] = warnings;
    w.emit("fig5_theory", c);
    w.emit("fig5_mc", o.S);
  }
  report["figure"] = fig;
  report["scale"] = scale;
  report["seconds"] = seconds_since(t0);
  finish(rr, report, "figures", cfg);
  return rr;
}

}  // namespace

// ---------------------------------------------------------------------------

CompareReport compare_curves(const SpectrumCurve& a, const SpectrumCurve& b, double tol, double lo, double hi) {
  require(a.size() > 0 && b.size() > 0, Status::domain, "compare: empty curve");
  require(tol > 0.0, Status::usage, "compare: tolerance must be positive");
  const bool a_sparse = a.size() <= b.size();
  const SpectrumCurve& sparse = a_sparse ? a : b;
  const SpectrumCurve& dense = a_sparse ? b : a;
  auto interp = [&](const std::vector<double>& col, double x, double& out) {
    const auto& xs = dense.x;
    if (x < xs.front() - 1e-12 * std::abs(xs.front()) || x > xs.back() + 1e-12 * std::abs(xs.back())) return false;
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    std::size_t j = static_cast<std::size_t>(it - xs.begin());
    if (j < xs.size() && std::abs(xs[j] - x) <= 1e-12 * std::max(1.0, std::abs(x))) {
      out = col[j];
      return true;
    }
    if (j == 0) j = 1;
    if (j >= xs.size()) j = xs.size() - 1;
    const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    out = (1.0 - t) * col[j - 1] + t * col[j];
    return true;
  };
  CompareReport r;
  r.tolerance = tol;
  r.lo = lo;
  r.hi = hi;
  double ss = 0.0, chi2 = 0.0;
  std::size_t nchi = 0;
  for (std::size_t i = 0; i < sparse.size(); ++i) {
    const double x = sparse.x[i];
    if (x < lo || x > hi) continue;
    double dv, de;
    if (!interp(dense.value, x, dv)) continue;
    if (!interp(dense.stderr_, x, de)) de = kNaN;
    const double va = a_sparse ? sparse.value[i] : dv;
    const double vb = a_sparse ? dv : sparse.value[i];
    const double rel = (va - vb) / std::abs(vb);
    r.max_rel = std::max(r.max_rel, std::abs(rel));
    ss += rel * rel;
    ++r.points;
    double var = 0.0;
    const double e1 = sparse.stderr_[i];
    if (std::isfinite(e1)) var += e1 * e1;
    if (std::isfinite(de)) var += de * de;
    if (var > 0.0) {
      chi2 += (va - vb) * (va - vb) / var;
      ++nchi;
    }
  }
  if (r.points == 0) fail(Status::domain, "compare: the curves have no overlapping points in the window");
  r.rms_rel = std::sqrt(ss / double(r.points));
  r.chi2_per_point = nchi > 0 ? chi2 / double(nchi) : kNaN;
  r.passed = r.rms_rel <= tol;
  return r;
}

RunResult run_experiment(const std::string& command, const Config& cfg) {
  if (command == "simulate") return cmd_simulate(cfg);
  if (command == "theory") return cmd_theory(cfg);
  if (command == "universal") return cmd_universal(cfg);
  if (command == "compare") return cmd_compare(cfg);
  if (command == "verify") return cmd_verify(cfg);
  if (command == "figures") return cmd_figures(cfg);
  fail(Status::usage, "unknown command '" + command + "'");
}

}  // namespace pspec
