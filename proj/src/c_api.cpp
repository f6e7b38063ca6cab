#include "rebound/rebound.h"

#include "rebound/bounds.hpp"
#include "rebound/commands.hpp"
#include "rebound/config.hpp"
#include "rebound/errors.hpp"
#include "rebound/report.hpp"
#include "rebound/validation.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

struct rb_dataset {
  rebound::Dataset ds;
};

struct rb_config {
  rebound::RunConfig cfg;
  std::optional<rebound::Dataset> data_override;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_kind;

rb_status status_of(rebound::ErrorKind k) {
  using rebound::ErrorKind;
  switch (k) {
    case ErrorKind::IoError: return RB_ERR_IO;
    case ErrorKind::ParseError: return RB_ERR_PARSE;
    case ErrorKind::ValidationError:
    case ErrorKind::DomainError:
    case ErrorKind::InvalidBracket:
    case ErrorKind::InvalidInterval: return RB_ERR_INVALID_ARGUMENT;
    case ErrorKind::NonConvergence: return RB_ERR_NUMERIC;
    default: return RB_ERR_PRECONDITION;
  }
}

template <class F>
rb_status guarded(F&& f) {
  try {
    g_error.clear();
    g_kind.clear();
    f();
    return RB_OK;
  } catch (const rebound::Error& e) {
    g_error = e.what();
    g_kind = rebound::error_kind_name(e.kind());
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    g_kind = "Internal";
    return RB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    g_kind = "Internal";
    return RB_ERR_INTERNAL;
  }
}

rb_status null_arg(const char* what) {
  g_error = std::string("null argument: ") + what;
  g_kind = "ValidationError";
  return RB_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rebound::Dataset dataset_of(const rb_config* c) {
  return c->data_override ? *c->data_override : rebound::resolve_dataset(c->cfg);
}

rebound::ValidationContext context_from(const rb_config* c, std::uint64_t seed) {
  using namespace rebound;
  ValidationContext ctx = default_validation_context(seed);
  if (!c || !c->cfg.fixed) return ctx;
  CertificateCase cc;
  cc.label = "configured";
  cc.ds = dataset_of(c);
  cc.h = resolve_hyper(c->cfg, cc.ds);
  cc.sampler = c->cfg.sampler;
  cc.point = *c->cfg.fixed;
  ctx.drift_cases = {cc};
  ctx.rho1_slack = c->cfg.rho1_slack;
  if (cc.sampler == SamplerKind::block) ctx.block_case = cc;
  else ctx.gibbs_case = cc;
  return ctx;
}

}  // namespace

extern "C" {

const char* rb_version(void) { return "0.1.0"; }

const char* rb_status_name(rb_status s) {
  switch (s) {
    case RB_OK: return "ok";
    case RB_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case RB_ERR_PRECONDITION: return "precondition";
    case RB_ERR_NUMERIC: return "numeric";
    case RB_ERR_PARSE: return "parse";
    case RB_ERR_IO: return "io";
    case RB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* rb_last_error(void) { return g_error.c_str(); }
const char* rb_last_error_kind(void) { return g_kind.c_str(); }

void rb_string_free(char* s) { std::free(s); }

rb_status rb_dataset_read_csv(const char* path, rb_dataset** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new rb_dataset{rebound::read_data_csv(path)}; });
}

rb_status rb_dataset_from_summaries(size_t k, const int* m, const double* ybar, double sse, rb_dataset** out) {
  if (!m || !ybar) return null_arg("m/ybar");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new rb_dataset{rebound::Dataset::from_summaries(std::vector<int>(m, m + k), std::vector<double>(ybar, ybar + k), sse)};
  });
}

void rb_dataset_free(rb_dataset* ds) { delete ds; }

size_t rb_dataset_group_count(const rb_dataset* ds) { return ds ? ds->ds.K() : 0; }

double rb_dataset_grand_mean(const rb_dataset* ds) { return ds ? ds->ds.ybar_grand : 0.0; }

rb_status rb_dataset_stats(const rb_dataset* ds, char** json_out) {
  if (!ds) return null_arg("ds");
  if (!json_out) return null_arg("json_out");
  return guarded([&] { *json_out = dup_string(rebound::stats_report(ds->ds)); });
}

rb_status rb_config_load(const char* path, rb_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new rb_config{rebound::load_config(path), std::nullopt}; });
}

rb_status rb_config_parse(const char* text, const char* base_dir, rb_config** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new rb_config{rebound::parse_config(text, base_dir ? base_dir : "."), std::nullopt}; });
}

void rb_config_free(rb_config* cfg) { delete cfg; }

rb_status rb_config_set_seed(rb_config* cfg, uint64_t seed) {
  if (!cfg) return null_arg("cfg");
  cfg->cfg.seed = seed;
  return RB_OK;
}

rb_status rb_config_set_data(rb_config* cfg, const rb_dataset* ds) {
  if (!cfg) return null_arg("cfg");
  if (!ds) return null_arg("ds");
  cfg->data_override = ds->ds;
  return RB_OK;
}

rb_status rb_config_output_path(const rb_config* cfg, char** path_out) {
  if (!cfg) return null_arg("cfg");
  if (!path_out) return null_arg("path_out");
  return guarded([&] { *path_out = cfg->cfg.output ? dup_string(*cfg->cfg.output) : nullptr; });
}

rb_status rb_config_iterations(const rb_config* cfg, uint64_t* out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = cfg->cfg.iterations;
  return RB_OK;
}

rb_status rb_burnin(const rb_config* cfg, char** report_out) {
  if (!cfg) return null_arg("cfg");
  if (!report_out) return null_arg("report_out");
  return guarded([&] { *report_out = dup_string(rebound::burnin_report(cfg->cfg, dataset_of(cfg))); });
}

rb_status rb_sweep(const rb_config* cfg, rb_sweep_param param, const double* values, size_t count, char** csv_out) {
  if (!cfg) return null_arg("cfg");
  if (!csv_out) return null_arg("csv_out");
  return guarded([&] {
    rebound::SweepParam p;
    if (param == RB_SWEEP_A2B2) p = rebound::SweepParam::a2b2;
    else if (param == RB_SWEEP_A1B1) p = rebound::SweepParam::a1b1;
    else if (cfg->cfg.sweep_param) p = *cfg->cfg.sweep_param;
    else throw rebound::Error(rebound::ErrorKind::ValidationError, "sweep parameter not given (use a2b2 or a1b1)");
    std::vector<double> v = values ? std::vector<double>(values, values + count) : cfg->cfg.sweep_values;
    if (v.empty()) throw rebound::Error(rebound::ErrorKind::ValidationError, "sweep needs at least one value");
    *csv_out = dup_string(rebound::sweep_csv(cfg->cfg, dataset_of(cfg), p, v));
  });
}

rb_status rb_simulate(const rb_config* cfg, uint64_t iterations, const char* path) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] {
    const rebound::Dataset ds = dataset_of(cfg);
    if (!path) {
      rebound::simulate_csv(cfg->cfg, ds, iterations, std::cout);
      std::cout.flush();
      return;
    }
    std::ofstream os(path);
    if (!os) throw rebound::Error(rebound::ErrorKind::IoError, std::string("cannot open output file '") + path + "'");
    rebound::simulate_csv(cfg->cfg, ds, iterations, os);
    if (!os) throw rebound::Error(rebound::ErrorKind::IoError, std::string("write failed for '") + path + "'");
  });
}

rb_status rb_validate(const rb_config* cfg, const char* suite, uint64_t seed, char** report_out, int* all_passed) {
  if (!report_out) return null_arg("report_out");
  return guarded([&] {
    const auto ctx = context_from(cfg, seed);
    const auto results = rebound::run_validation(ctx, suite ? suite : "all");
    rebound::report::Json j;
    j["seed"] = seed;
    j["suites"] = rebound::report::Json::array();
    bool ok = true;
    for (const auto& r : results) {
      ok = ok && r.passed;
      j["suites"].push_back({{"name", r.name},
                             {"passed", r.passed},
                             {"checks", r.checks},
                             {"violations", r.violations},
                             {"worst_margin", r.worst_margin},
                             {"detail", r.detail}});
    }
    j["all_passed"] = ok;
    *report_out = dup_string(rebound::report::dump(j));
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

rb_status rb_rosenthal_bound(double gamma, double b, double epsilon, double d_R, double r, double V0, double n,
                             double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = rebound::rosenthal_bound({gamma, b, epsilon, d_R, r, V0}, n); });
}

rb_status rb_rt_bound(double rho, double L, double epsilon, double d_RT, double W0, double k, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = rebound::rt_bound({rho, L, epsilon, d_RT, W0, std::nullopt}, k); });
}

}  // extern "C"
