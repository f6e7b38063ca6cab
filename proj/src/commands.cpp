#include "rebound/commands.hpp"

#include "rebound/errors.hpp"
#include "rebound/report.hpp"
#include "rebound/samplers.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace rebound {

using report::Json;

std::string stats_report(const Dataset& ds) { return report::dump(report::dataset_summary(ds)); }

std::string burnin_report(const RunConfig& cfg, const Dataset& ds) {
  const Hyperparameters h = resolve_hyper(cfg, ds);
  Json inputs;
  inputs["data"] = report::dataset_summary(ds);
  inputs["hyper"] = report::hyperparameters(h);
  inputs["m0_source"] = cfg.m0_is_ybar ? "ybar" : "value";
  inputs["sampler"] = sampler_name(cfg.sampler);
  inputs["theorem"] = theorem_name(cfg.theorem);
  inputs["target_tv"] = cfg.target_tv;
  inputs["seed"] = cfg.seed;
  inputs["a"] = cfg.a;
  inputs["rho1_slack"] = cfg.rho1_slack;
  inputs["defaulted"] = cfg.defaulted;

  PointEvaluation ev;
  Json search;
  if (cfg.fixed) {
    inputs["mode"] = "fixed";
    ev = evaluate_point(ds, h, cfg.sampler, cfg.theorem, *cfg.fixed, cfg.target_tv, cfg.rho1_slack);
  } else {
    inputs["mode"] = cfg.grid ? "grid" : "default-grid";
    const GridSpec grid = resolve_grid(cfg);
    const GridResult g = grid_optimize(ds, h, cfg.sampler, cfg.theorem, grid);
    ev = g.best;
    search["feasible"] = g.feasible;
    search["infeasible"] = g.infeasible;
    Json reasons = Json::object();
    for (const auto& [k, n] : g.infeasible_reasons) reasons[k] = n;
    search["infeasible_reasons"] = reasons;
    search["d_relative"] = grid.d_relative;
  }
  const Json body = report::evaluation(ev);
  Json out;
  out["inputs"] = inputs;
  out["constants"] = body["constants"];
  out["certificates"] = body["certificates"];
  Json result = body["result"];
  result["parameters"] = body["parameters"];
  if (!search.empty()) result["grid_search"] = search;
  out["result"] = result;
  return report::dump(out);
}

std::string sweep_csv(const RunConfig& cfg, const Dataset& ds, SweepParam param, const std::vector<double>& values) {
  const Hyperparameters h = resolve_hyper(cfg, ds);
  GridSpec grid = cfg.grid ? *cfg.grid : default_grid(cfg.sampler, cfg.theorem);
  grid.target_tv = cfg.target_tv;
  grid.rho1_slack = cfg.rho1_slack;
  const auto rows = run_sweep(ds, h, cfg.sampler, cfg.theorem, grid, param, values);
  std::ostringstream os;
  os << "param_value,epsilon,n_star,bound_at_n_star\n";
  for (const auto& r : rows) {
    os << report::format_double(r.value) << ',' << (r.feasible ? report::format_double(r.epsilon) : "nan") << ','
       << r.n_star << ',' << (r.feasible ? report::format_double(r.bound_at_n_star) : "nan") << '\n';
  }
  return os.str();
}

ChainState simulation_start(const RunConfig& cfg, const Dataset& ds, const Hyperparameters& h) {
  if (cfg.fixed) {
    const ParameterPoint& p = *cfg.fixed;
    if (cfg.sampler == SamplerKind::block) {
      BlockDriftSpec spec{p.phi1, std::isnan(p.phi2) ? 1.0 / ds.m.front() : p.phi2, p.gamma};
      const BlockStart st = optimal_start_block(spec, ds);
      ChainState s;
      s.theta = st.theta;
      s.mu = st.mu;
      return s;
    }
    return optimal_start_gibbs(GibbsDriftSpec{p.c3, p.gamma, cfg.rho1_slack}, ds, h);
  }
  ChainState s;
  s.theta = ds.ybar;
  s.mu = ds.ybar_grand;
  return s;
}

void simulate_csv(const RunConfig& cfg, const Dataset& ds, std::size_t iterations, std::ostream& os) {
  const Hyperparameters h = resolve_hyper(cfg, ds);
  const Kernel k = cfg.sampler == SamplerKind::block ? Kernel::block : Kernel::gibbs;
  write_trace_header(os, ds.K());
  run_chain_visit(k, simulation_start(cfg, ds, h), iterations, cfg.seed, ds, h,
                  [&](std::size_t i, const ChainState& s) { write_trace_row(os, i, s); });
}

}  // namespace rebound
