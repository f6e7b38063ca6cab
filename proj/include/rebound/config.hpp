#pragma once

#include "rebound/model.hpp"
#include "rebound/planning.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rebound {

struct RunConfig {
  std::optional<std::string> data_csv;
  std::optional<Dataset> data_inline;
  Hyperparameters hyper;
  bool m0_is_ybar = false;
  SamplerKind sampler = SamplerKind::block;
  TheoremKind theorem = TheoremKind::rosenthal;
  double target_tv = 0.01;
  std::optional<ParameterPoint> fixed;
  std::optional<GridSpec> grid;
  std::uint64_t seed = 0;
  std::optional<std::string> output;
  double a = 1.0;
  double rho1_slack = 1e-5;
  std::size_t iterations = 1000;
  std::optional<SweepParam> sweep_param;
  std::vector<double> sweep_values;
  // Names of every field that fell back to its default.
  std::vector<std::string> defaulted;
};

RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

GridSpec default_grid(SamplerKind sampler, TheoremKind theorem);

// Reads the `group,value` CSV layout and reduces it to summaries.
Dataset read_data_csv(const std::string& path);

Dataset resolve_dataset(const RunConfig& cfg);
Hyperparameters resolve_hyper(const RunConfig& cfg, const Dataset& ds);
// The grid actually searched: the configured one, the fixed point as a
// singleton, or the default grid.
GridSpec resolve_grid(const RunConfig& cfg);

}  // namespace rebound
