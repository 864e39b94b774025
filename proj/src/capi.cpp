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

#include "pspec/pspec.h"

#include <complex>
#include <exception>
#include <new>
#include <string>

#include "pspec/baselines.hpp"
#include "pspec/dpv.hpp"
#include "pspec/error.hpp"
#include "pspec/experiments.hpp"
#include "pspec/io.hpp"
#include "pspec/theory.hpp"
#include "pspec/universal.hpp"

struct pspec_config {
  pspec::Config cfg;
};
struct pspec_result {
  pspec::RunResult run;
};
struct pspec_curve {
  pspec::SpectrumCurve curve;
};

namespace {

thread_local std::string g_last_error;

template <class F>
int guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return PSPEC_OK;
  } catch (const pspec::Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.status());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PSPEC_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PSPEC_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return PSPEC_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) pspec::fail(pspec::Status::usage, std::string(what) + " is NULL");
}

}  // namespace

extern "C" {

const char* pspec_version(void) { return "1.0.0"; }

const char* pspec_status_string(int status) { return pspec::status_name(static_cast<pspec::Status>(status)); }

const char* pspec_last_error(void) { return g_last_error.c_str(); }

int pspec_config_create(pspec_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new pspec_config();
  });
}

void pspec_config_free(pspec_config* cfg) { delete cfg; }

int pspec_config_set(pspec_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    cfg->cfg.set(key, value);
  });
}

int pspec_config_load(pspec_config* cfg, const char* path) {
  return guarded([&] {
    need(cfg, "cfg");
    need(path, "path");
    cfg->cfg.load_file(path);
  });
}

int pspec_config_parse(pspec_config* cfg, const char* text) {
  return guarded([&] {
    need(cfg, "cfg");
    need(text, "text");
    cfg->cfg.parse(text);
  });
}

int pspec_run(const char* command, const pspec_config* cfg, pspec_result** out) {
  return guarded([&] {
    need(command, "command");
    need(cfg, "cfg");
    need(out, "out");
    *out = nullptr;
    auto* r = new pspec_result{pspec::run_experiment(command, cfg->cfg)};
    *out = r;
  });
}

void pspec_result_free(pspec_result* r) { delete r; }

const char* pspec_result_json(const pspec_result* r) { return r ? r->run.report_json.c_str() : ""; }

int pspec_result_passed(const pspec_result* r) { return r && r->run.passed ? 1 : 0; }

size_t pspec_result_curve_count(const pspec_result* r) { return r ? r->run.curves.size() : 0; }

int pspec_result_curve(const pspec_result* r, size_t i, const char** name, pspec_curve** out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    if (i >= r->run.curves.size()) pspec::fail(pspec::Status::usage, "curve index out of range");
    if (name) *name = r->run.curves[i].first.c_str();
    *out = new pspec_curve{r->run.curves[i].second};
  });
}

int pspec_curve_load(const char* path, pspec_curve** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new pspec_curve{pspec::load_curve(path)};
  });
}

int pspec_curve_save(const pspec_curve* c, const char* path) {
  return guarded([&] {
    need(c, "curve");
    need(path, "path");
    pspec::save_curve(c->curve, path);
  });
}

size_t pspec_curve_size(const pspec_curve* c) { return c ? c->curve.size() : 0; }

int pspec_curve_points(const pspec_curve* c, double* x, double* value, double* err) {
  return guarded([&] {
    need(c, "curve");
    for (std::size_t i = 0; i < c->curve.size(); ++i) {
      if (x) x[i] = c->curve.x[i];
      if (value) value[i] = c->curve.value[i];
      if (err) err[i] = c->curve.stderr_[i];
    }
  });
}

void pspec_curve_free(pspec_curve* c) { delete c; }

int pspec_compare(const pspec_curve* a, const pspec_curve* b, double tol, double lo, double hi, double* rms_rel,
                  double* max_rel, int* passed) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    const auto r = pspec::compare_curves(a->curve, b->curve, tol, lo, hi);
    if (rms_rel) *rms_rel = r.rms_rel;
    if (max_rel) *max_rel = r.max_rel;
    if (passed) *passed = r.passed ? 1 : 0;
  });
}

int pspec_phi(int N, double phi, double zr, double zi, double out_value[2], double out_dzeta[2]) {
  return guarded([&] {
    need(out_value, "out_value");
    const auto g = pspec::phi_eval(N, phi, {zr, zi}, out_dzeta != nullptr);
    out_value[0] = g.value.real();
    out_value[1] = g.value.imag();
    if (out_dzeta) {
      out_dzeta[0] = g.dzeta.real();
      out_dzeta[1] = g.dzeta.imag();
    }
  });
}

int pspec_s_tcue(int N, double omega, double* value, double* error) {
  return guarded([&] {
    need(value, "value");
    const auto r = pspec::s_tcue(N, omega);
    *value = r.value;
    if (error) *error = r.error;
  });
}

int pspec_s_uncorrelated_exact(int N, double omega, double sigma2, double* value) {
  return guarded([&] {
    need(value, "value");
    *value = pspec::s_uncorrelated_exact(N, omega, sigma2);
  });
}

int pspec_s_small_omega(double omega, double* value) {
  return guarded([&] {
    need(value, "value");
    *value = pspec::s_small_omega(omega);
  });
}

int pspec_prefactors(double wt, double* A, double* B) {
  return guarded([&] {
    if (A) *A = pspec::prefactor_A(wt);
    if (B) *B = pspec::prefactor_B(wt);
  });
}

}  // extern "C"
