#pragma once

#include "rebound/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rebound {

std::string stats_report(const Dataset& ds);
std::string burnin_report(const RunConfig& cfg, const Dataset& ds);
std::string sweep_csv(const RunConfig& cfg, const Dataset& ds, SweepParam param, const std::vector<double>& values);
void simulate_csv(const RunConfig& cfg, const Dataset& ds, std::size_t iterations, std::ostream& os);

// Chain start used by the simulate command.
ChainState simulation_start(const RunConfig& cfg, const Dataset& ds, const Hyperparameters& h);

}  // namespace rebound
