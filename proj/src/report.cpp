#include "rebound/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace rebound::report {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep a float marker so the value reads back as floating point.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

void write(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(k).dump() << ": ";
        write(os, v, depth + 1);
      }
      os << '\n' << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ", ";
        first = false;
        write(os, v, depth + 1);
      }
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

Json number_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

Json dataset_summary(const Dataset& ds) {
  Json j;
  j["summaries"] = {{"m", ds.m}, {"ybar", number_array(ds.ybar)}, {"sse", ds.sse}};
  j["derived"] = {{"K", ds.K()},
                  {"M", ds.M},
                  {"ybar_grand", ds.ybar_grand},
                  {"ybar_cell_mean", ds.ybar_cell_mean},
                  {"s2", ds.s2},
                  {"balanced", ds.balanced},
                  {"m_min", ds.m_min()},
                  {"m_max", ds.m_max()}};
  return j;
}

Json hyperparameters(const Hyperparameters& h) {
  return {{"a1", h.a1}, {"b1", h.b1}, {"a2", h.a2}, {"b2", h.b2}, {"m0", h.m0}, {"s0", h.s0}};
}

Json block_drift(const BlockDriftCertificate& c) {
  Json j;
  j["form"] = c.balanced ? "balanced" : "general";
  j["phi1"] = c.spec.phi1;
  j["phi2"] = c.spec.phi2;
  j["gamma"] = c.spec.gamma;
  j["delta1"] = c.delta1;
  j["delta2"] = c.delta2;
  j["delta3"] = c.delta3;
  j["delta4"] = c.delta4;
  j["delta5"] = c.delta5;
  j["delta"] = c.delta;
  j["c1"] = c.c1;
  j["c2"] = c.c2;
  j["hull_length"] = c.hull;
  j["b"] = c.b;
  j["preconditions"] = {
      {{"inequality", "gamma > delta"}, {"slack", c.spec.gamma - c.delta}},
      {{"inequality", c.balanced ? "phi*delta5 + delta < gamma" : "phi1*delta4/phi2 + delta < gamma"},
       {"slack", c.spec.gamma - c.weight_condition}}};
  return j;
}

Json gibbs_drift(const GibbsDriftCertificate& c) {
  Json j;
  j["c3"] = c.spec.c3;
  j["gamma"] = c.spec.gamma;
  j["delta1"] = c.delta1;
  j["delta6"] = c.delta6;
  j["delta7"] = c.delta7;
  j["rho1_limit"] = c.rho1_limit;
  j["rho1"] = c.rho1;
  j["rho1_slack"] = c.spec.rho1_slack;
  j["b"] = c.b;
  j["preconditions"] = {
      {{"inequality", "rho1 < 1"}, {"slack", 1.0 - c.rho1}},
      {{"inequality", "gamma > max(rho1, delta6, delta7)"},
       {"slack", c.spec.gamma - std::max({c.rho1, c.delta6, c.delta7})}}};
  return j;
}

Json minorization(const MinorizationCertificate& m) {
  Json j;
  j["d"] = m.d;
  j["epsilon"] = m.epsilon;
  j["log_epsilon"] = m.log_epsilon;
  if (const auto* b = std::get_if<BlockSplit>(&m.split)) {
    j["kind"] = "block";
    j["lambda_theta_star"] = b->lambda_theta_star;
    j["lambda_e_star"] = b->lambda_e_star;
    j["integral_theta"] = b->integral_theta;
    j["integral_e"] = b->integral_e;
  } else {
    const auto& g = std::get<GibbsSplit>(m.split);
    j["kind"] = "gibbs";
    j["c4"] = g.c4;
    j["c_l"] = g.c_l;
    j["c_u"] = g.c_u;
    j["v"] = g.v;
    j["m_l"] = g.m_l;
    j["m_u"] = g.m_u;
  }
  return j;
}

Json geometric(const GeometricDriftCertificate& g) {
  return {{"a", g.a}, {"rho", g.rho}, {"L", g.L}, {"d_C", g.d_C}};
}

Json state(const ChainState& s) {
  return {{"theta", number_array(s.theta)}, {"mu", s.mu}, {"lambda_theta", s.lambda_theta}, {"lambda_e", s.lambda_e}};
}

Json burnin(const BurninResult& r) {
  Json j;
  j["target_tv"] = r.target;
  j["n_star"] = r.n_star;
  j["bound_at_n_star"] = r.bound_at_n_star;
  j["bound_at_n_star_minus_1"] = r.bound_before;
  j["geometric_factors"] = number_array(r.geometric_factors);
  j["log_geometric_factors"] = number_array(r.log_geometric_factors);
  return j;
}

Json point(const ParameterPoint& p) {
  Json j = Json::object();
  auto put = [&](const char* k, double v) {
    if (!std::isnan(v)) j[k] = v;
  };
  put("gamma", p.gamma);
  put("phi1", p.phi1);
  put("phi2", p.phi2);
  put("c3", p.c3);
  put("d", p.d);
  put("r", p.r);
  j["a"] = p.a;
  if (p.beta) j["beta"] = *p.beta;
  return j;
}

Json evaluation(const PointEvaluation& ev) {
  Json j;
  j["parameters"] = point(ev.point);
  Json consts;
  if (ev.rosenthal) {
    consts["theorem"] = "rosenthal";
    consts["alpha"] = ev.rosenthal_k->alpha;
    consts["U"] = ev.rosenthal_k->U;
    consts["V0"] = ev.rosenthal->V0;
  } else if (ev.rt) {
    consts["theorem"] = "roberts-tweedie";
    consts["rho"] = ev.rt->rho;
    consts["L"] = ev.rt->L;
    consts["W0"] = ev.rt->W0;
    consts["kappa"] = ev.rt_k->kappa;
    consts["J"] = ev.rt_k->J;
    consts["zeta"] = ev.rt_k->zeta;
    consts["eta"] = ev.rt_k->eta;
    consts["beta_RT"] = ev.rt_k->beta_RT;
  }
  j["constants"] = consts;
  Json certs;
  if (ev.drift.block) certs["drift"] = block_drift(*ev.drift.block);
  if (ev.drift.gibbs) certs["drift"] = gibbs_drift(*ev.drift.gibbs);
  certs["minorization"] = minorization(ev.minorization);
  if (ev.geometric) certs["w_drift"] = geometric(*ev.geometric);
  certs["start"] = state(ev.drift.start);
  certs["drift_at_start"] = ev.drift.V0;
  j["certificates"] = certs;
  j["result"] = burnin(ev.result);
  return j;
}

}  // namespace rebound::report
