#include "rebound/rebound.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

struct ConfigDeleter {
  void operator()(rb_config* c) const { rb_config_free(c); }
};
struct DatasetDeleter {
  void operator()(rb_dataset* d) const { rb_dataset_free(d); }
};
struct StringDeleter {
  void operator()(char* s) const { rb_string_free(s); }
};
using ConfigPtr = std::unique_ptr<rb_config, ConfigDeleter>;
using DatasetPtr = std::unique_ptr<rb_dataset, DatasetDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Failure {
  int code;
};

int exit_code(rb_status s) { return s == RB_ERR_IO || s == RB_ERR_PARSE ? 2 : 1; }

void check(rb_status s) {
  if (s == RB_OK) return;
  std::fprintf(stderr, "error (%s): %s\n", rb_last_error_kind(), rb_last_error());
  throw Failure{exit_code(s)};
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream os(out);
  if (!os || !(os << text)) {
    std::fprintf(stderr, "error (IoError): cannot write '%s'\n", out.c_str());
    throw Failure{2};
  }
}

ConfigPtr open_config(const std::string& path, const std::string& data, std::optional<std::uint64_t> seed) {
  rb_config* raw = nullptr;
  check(rb_config_load(path.c_str(), &raw));
  ConfigPtr cfg(raw);
  if (!data.empty()) {
    rb_dataset* ds = nullptr;
    check(rb_dataset_read_csv(data.c_str(), &ds));
    DatasetPtr owned(ds);
    check(rb_config_set_data(cfg.get(), owned.get()));
  }
  if (seed) check(rb_config_set_seed(cfg.get(), *seed));
  return cfg;
}

std::string output_for(const rb_config* cfg, const std::string& flag) {
  if (!flag.empty()) return flag;
  char* p = nullptr;
  check(rb_config_output_path(cfg, &p));
  StringPtr owned(p);
  return p ? std::string(p) : std::string();
}

std::vector<double> spaced(double from, double to, std::size_t points) {
  if (points == 1) return {from};
  std::vector<double> v(points);
  const bool geometric = from > 0.0 && to > 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    v[i] = geometric ? std::exp(std::log(from) + t * (std::log(to) - std::log(from))) : from + t * (to - from);
  }
  v.back() = to;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Burn-in bounds for Gibbs samplers on the one-way random effects model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rb_version()));

  std::string config, data, out, vary, suite = "all";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> iterations;
  std::optional<double> from, to;
  std::size_t points = 5;
  std::vector<double> values;

  auto* stats = app.add_subcommand("stats", "Reduce a group,value CSV to sufficient statistics");
  stats->add_option("--data", data, "Raw data CSV")->required();
  stats->add_option("--out", out, "Write the summary here instead of stdout");

  auto* burnin = app.add_subcommand("burnin", "Derive certificates and the sufficient burn-in");
  burnin->add_option("--config", config, "Run configuration (JSON)")->required();
  burnin->add_option("--data", data, "Override the configured data with this CSV");
  burnin->add_option("--out", out, "Report path");
  burnin->add_option("--seed", seed, "Seed recorded in the report");

  auto* sweep = app.add_subcommand("sweep", "Re-optimize the burn-in across prior settings");
  sweep->add_option("--config", config, "Run configuration (JSON)")->required();
  sweep->add_option("--data", data, "Override the configured data with this CSV");
  sweep->add_option("--out", out, "CSV path");
  sweep->add_option("--vary", vary, "Which prior pair to vary")->check(CLI::IsMember({"a2b2", "a1b1"}));
  auto* from_opt = sweep->add_option("--from", from, "First value of the swept pair");
  auto* to_opt = sweep->add_option("--to", to, "Last value of the swept pair");
  sweep->add_option("--points", points, "Number of values (geometric spacing)")->check(CLI::PositiveNumber);
  auto* values_opt = sweep->add_option("--values", values, "Explicit list of values")->delimiter(',');
  from_opt->needs(to_opt);
  to_opt->needs(from_opt);
  values_opt->excludes(from_opt);
  sweep->add_option("--seed", seed, "Unused by the sweep; accepted for symmetry");

  auto* simulate = app.add_subcommand("simulate", "Run a chain and write its trace");
  simulate->add_option("--config", config, "Run configuration (JSON)")->required();
  simulate->add_option("--data", data, "Override the configured data with this CSV");
  simulate->add_option("--out", out, "Trace CSV path");
  simulate->add_option("--seed", seed, "Random seed");
  simulate->add_option("--iterations", iterations, "Number of transitions");

  auto* validate = app.add_subcommand("validate", "Run the numerical certificate checks");
  validate->add_option("--config", config, "Check the configured certificate instead of the built-in cases");
  validate->add_option("--data", data, "Override the configured data with this CSV");
  validate->add_option("--suite", suite, "Suite name or 'all'");
  validate->add_option("--seed", seed, "Random seed");
  validate->add_option("--out", out, "Report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats->parsed()) {
      rb_dataset* raw = nullptr;
      check(rb_dataset_read_csv(data.c_str(), &raw));
      DatasetPtr ds(raw);
      char* json = nullptr;
      check(rb_dataset_stats(ds.get(), &json));
      StringPtr owned(json);
      emit(json, out);
    } else if (burnin->parsed()) {
      ConfigPtr cfg = open_config(config, data, seed);
      char* report = nullptr;
      check(rb_burnin(cfg.get(), &report));
      StringPtr owned(report);
      emit(report, output_for(cfg.get(), out));
    } else if (sweep->parsed()) {
      ConfigPtr cfg = open_config(config, data, seed);
      rb_sweep_param p = vary.empty() ? RB_SWEEP_FROM_CONFIG : vary == "a2b2" ? RB_SWEEP_A2B2 : RB_SWEEP_A1B1;
      if (from) values = spaced(*from, *to, points);
      char* csv = nullptr;
      check(rb_sweep(cfg.get(), p, values.empty() ? nullptr : values.data(), values.size(), &csv));
      StringPtr owned(csv);
      emit(csv, output_for(cfg.get(), out));
    } else if (simulate->parsed()) {
      ConfigPtr cfg = open_config(config, data, seed);
      std::uint64_t n = 0;
      check(rb_config_iterations(cfg.get(), &n));
      if (iterations) n = *iterations;
      const std::string path = output_for(cfg.get(), out);
      check(rb_simulate(cfg.get(), n, path.empty() ? nullptr : path.c_str()));
    } else if (validate->parsed()) {
      ConfigPtr cfg;
      if (!config.empty()) cfg = open_config(config, data, seed);
      char* report = nullptr;
      int ok = 0;
      check(rb_validate(cfg.get(), suite.c_str(), seed.value_or(0), &report, &ok));
      StringPtr owned(report);
      emit(report, out);
      if (!ok) return 1;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
