#include "rebound/planning.hpp"

#include "rebound/errors.hpp"

#include <cmath>

namespace rebound {

const char* sampler_name(SamplerKind s) { return s == SamplerKind::block ? "block" : "gibbs"; }
const char* theorem_name(TheoremKind t) { return t == TheoremKind::rosenthal ? "rosenthal" : "roberts-tweedie"; }

PreparedDrift prepare_drift(const Dataset& ds, const Hyperparameters& h, SamplerKind sampler,
                            const ParameterPoint& p, double rho1_slack) {
  PreparedDrift out;
  if (sampler == SamplerKind::block) {
    if (std::isnan(p.phi1)) throw Error(ErrorKind::ValidationError, "block drift needs phi or phi1/phi2");
    if (std::isnan(p.phi2)) {
      out.block = derive_block_drift_balanced(ds, h, p.phi1, p.gamma);
    } else {
      out.block = derive_block_drift(ds, h, p.phi1, p.phi2, p.gamma);
    }
    out.gamma = out.block->spec.gamma;
    out.b = out.block->b;
    out.phi1 = out.block->spec.phi1;
    out.phi2 = out.block->spec.phi2;
    const BlockStart st = optimal_start_block(out.block->spec, ds);
    out.start.theta = st.theta;
    out.start.mu = st.mu;
    out.V0 = eval_block_drift(out.start, out.block->spec, ds);
  } else {
    if (std::isnan(p.c3)) throw Error(ErrorKind::ValidationError, "gibbs drift needs c3");
    out.gibbs = derive_gibbs_drift(ds, h, p.c3, p.gamma, rho1_slack);
    out.gamma = out.gibbs->spec.gamma;
    out.b = out.gibbs->b;
    out.c3 = p.c3;
    out.start = optimal_start_gibbs(out.gibbs->spec, ds, h);
    out.V0 = eval_gibbs_drift(out.start, out.gibbs->spec, h, ds);
  }
  return out;
}

namespace {

MinorizationCertificate minorize(const Dataset& ds, const Hyperparameters& h, const PreparedDrift& drift, double d) {
  if (drift.block) return block_minorization(ds, h, drift.phi1, drift.phi2, d);
  return gibbs_minorization(ds, h, drift.c3, d);
}

}  // namespace

PointEvaluation evaluate_prepared(const Dataset& ds, const Hyperparameters& h, TheoremKind theorem,
                                  const PreparedDrift& drift, const ParameterPoint& p, double target_tv) {
  PointEvaluation ev;
  ev.point = p;
  ev.sampler = drift.block ? SamplerKind::block : SamplerKind::gibbs;
  ev.theorem = theorem;
  ev.drift = drift;
  if (theorem == TheoremKind::rosenthal) {
    RosenthalInputs in{drift.gamma, drift.b, 0.0, p.d, p.r, drift.V0};
    const double floor = 2.0 * drift.b / (1.0 - drift.gamma);
    if (!(p.d > floor)) throw Error(ErrorKind::PreconditionViolated, "d_R > 2b/(1 - gamma)", floor - p.d);
    ev.minorization = minorize(ds, h, drift, p.d);
    in.epsilon = ev.minorization.epsilon;
    RosenthalEvaluator eval(in);
    ev.rosenthal = in;
    ev.rosenthal_k = eval.constants();
    ev.result = find_burnin(eval, target_tv);
  } else {
    ev.geometric = convert_drift(drift.gamma, drift.b, p.a);
    // The drift indicator set must sit inside the set where minorization holds.
    if (!(p.d >= ev.geometric->d_C))
      throw Error(ErrorKind::PreconditionViolated, "d_RT >= d_C", ev.geometric->d_C - p.d);
    ev.minorization = minorize(ds, h, drift, p.d - 1.0);
    RTInputs in{ev.geometric->rho, ev.geometric->L, ev.minorization.epsilon, p.d, 1.0 + drift.V0, p.beta};
    RTEvaluator eval(in);
    ev.rt = in;
    ev.rt_k = eval.constants();
    ev.result = find_burnin(eval, target_tv);
  }
  return ev;
}

PointEvaluation evaluate_point(const Dataset& ds, const Hyperparameters& h, SamplerKind sampler, TheoremKind theorem,
                               const ParameterPoint& p, double target_tv, double rho1_slack) {
  return evaluate_prepared(ds, h, theorem, prepare_drift(ds, h, sampler, p, rho1_slack), p, target_tv);
}

std::vector<double> grid_values(double lo, double hi, std::size_t points, bool log_scale) {
  if (points == 0) throw Error(ErrorKind::ValidationError, "grid needs at least one point");
  if (points == 1) return {lo};
  if (!(lo < hi)) throw Error(ErrorKind::ValidationError, "grid range needs lo < hi");
  if (log_scale && !(lo > 0.0)) throw Error(ErrorKind::ValidationError, "log-scale grid needs lo > 0");
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    v[i] = log_scale ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
  }
  v.back() = hi;
  return v;
}

namespace {

std::string reason_of(const Error& e) {
  std::string key = error_kind_name(e.kind());
  if (e.has_slack()) key += ": " + e.inequality();
  return key;
}

const std::vector<double> kUnsetAxis{ParameterPoint::unset};

const std::vector<double>& axis(const std::vector<double>& v) { return v.empty() ? kUnsetAxis : v; }

}  // namespace

GridResult grid_optimize(const Dataset& ds, const Hyperparameters& h, SamplerKind sampler, TheoremKind theorem,
                         const GridSpec& grid) {
  if (grid.gamma.empty() || grid.d.empty()) throw Error(ErrorKind::ValidationError, "grid needs gamma and d values");
  if (sampler == SamplerKind::block && grid.phi1.empty()) throw Error(ErrorKind::ValidationError, "block grid needs phi values");
  if (sampler == SamplerKind::gibbs && grid.c3.empty()) throw Error(ErrorKind::ValidationError, "gibbs grid needs c3 values");
  if (theorem == TheoremKind::rosenthal && grid.r.empty()) throw Error(ErrorKind::ValidationError, "Rosenthal grid needs r values");
  if (theorem == TheoremKind::roberts_tweedie && grid.a.empty()) throw Error(ErrorKind::ValidationError, "W-drift grid needs a values");
  if (!(grid.target_tv > 0.0 && grid.target_tv < 1.0)) throw Error(ErrorKind::ValidationError, "target_tv must lie in (0, 1)");

  const auto& phi1s = sampler == SamplerKind::block ? grid.phi1 : kUnsetAxis;
  const auto& phi2s = sampler == SamplerKind::block ? axis(grid.phi2) : kUnsetAxis;
  const auto& c3s = sampler == SamplerKind::gibbs ? grid.c3 : kUnsetAxis;
  const auto& tails = theorem == TheoremKind::rosenthal ? grid.r : grid.a;
  const std::size_t inner = grid.d.size() * tails.size();

  GridResult out;
  bool have = false;
  auto reject = [&](const Error& e, std::size_t count) {
    out.infeasible += count;
    out.infeasible_reasons[reason_of(e)] += count;
  };

  for (double gamma : grid.gamma) {
    for (double phi1 : phi1s) {
      for (double phi2 : phi2s) {
        for (double c3v : c3s) {
          ParameterPoint p;
          p.gamma = gamma;
          p.phi1 = phi1;
          p.phi2 = phi2;
          p.c3 = grid.c3_relative ? c3v * std::min(h.b1, h.b2) : c3v;
          PreparedDrift drift;
          try {
            drift = prepare_drift(ds, h, sampler, p, grid.rho1_slack);
          } catch (const Error& e) {
            reject(e, inner);
            continue;
          }
          for (double dv : grid.d) {
            for (double tail : tails) {
              ParameterPoint q = p;
              if (theorem == TheoremKind::rosenthal) q.r = tail;
              else q.a = tail;
              double scale = 1.0;
              if (grid.d_relative) {
                scale = theorem == TheoremKind::rosenthal ? 2.0 * drift.b / (1.0 - drift.gamma)
                                                          : convert_drift(drift.gamma, drift.b, q.a).d_C;
              }
              q.d = dv * scale;
              try {
                PointEvaluation ev = evaluate_prepared(ds, h, theorem, drift, q, grid.target_tv);
                ++out.feasible;
                if (!have || ev.result.n_star_value < out.best.result.n_star_value) {
                  out.best = std::move(ev);
                  have = true;
                }
              } catch (const Error& e) {
                reject(e, 1);
              }
            }
          }
        }
      }
    }
  }
  if (!have) throw Error(ErrorKind::AllPointsInfeasible, "no grid point produced a finite burn-in");
  return out;
}

std::vector<SweepRow> run_sweep(const Dataset& ds, const Hyperparameters& base, SamplerKind sampler,
                                TheoremKind theorem, const GridSpec& grid, SweepParam param,
                                const std::vector<double>& values) {
  std::vector<SweepRow> rows;
  for (double v : values) {
    Hyperparameters h = base;
    if (param == SweepParam::a2b2) {
      h.a2 = v;
      h.b2 = v;
    } else {
      h.a1 = v;
      h.b1 = v;
    }
    SweepRow row;
    row.value = v;
    try {
      const GridResult g = grid_optimize(ds, h, sampler, theorem, grid);
      row.feasible = true;
      row.epsilon = g.best.minorization.epsilon;
      row.n_star = g.best.result.n_star;
      row.n_star_value = g.best.result.n_star_value;
      row.bound_at_n_star = g.best.result.bound_at_n_star;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AllPointsInfeasible) throw;
      row.n_star = "infeasible";
      row.epsilon = std::numeric_limits<double>::quiet_NaN();
      row.bound_at_n_star = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rebound
