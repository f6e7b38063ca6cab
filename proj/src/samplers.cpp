#include "rebound/samplers.hpp"

#include "rebound/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace rebound {

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RngStream::normal(double mean, double sd) {
  return normal_(engine_, std::normal_distribution<double>::param_type(mean, sd));
}

double RngStream::gamma(double shape, double rate) {
  if (!(shape >= 1.0)) throw Error(ErrorKind::DomainError, "gamma variates need shape >= 1");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw Error(ErrorKind::NonpositivePrecision, "gamma rate must be positive");
  return gamma_(engine_, std::gamma_distribution<double>::param_type(shape, 1.0 / rate));
}

double RngStream::uniform() { return uniform_(engine_); }

const char* kernel_name(Kernel k) { return k == Kernel::gibbs ? "gibbs" : "block"; }

PosteriorNormalParams posterior_normal_params(double lt, double le, const Dataset& ds, const Hyperparameters& h) {
  if (!(lt > 0.0) || !(le > 0.0)) throw Error(ErrorKind::NonpositivePrecision, "precisions must be strictly positive");
  const std::size_t K = ds.K();
  PosteriorNormalParams p;
  std::vector<double> denom(K);
  double weighted = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    denom[i] = lt + ds.m[i] * le;
    p.t += ds.m[i] * lt * le / denom[i];
    weighted += ds.m[i] * lt * le * ds.ybar[i] / denom[i];
  }
  const double st = h.s0 + p.t;
  p.var_mu = 1.0 / st;
  p.mean_mu = (weighted + h.m0 * h.s0) / st;
  p.mean_theta.resize(K);
  p.var_theta.resize(K);
  p.cov_theta_mu.resize(K);
  p.cov_theta_pairs.assign(K, std::vector<double>(K));
  for (std::size_t i = 0; i < K; ++i) {
    p.mean_theta[i] = lt / denom[i] * p.mean_mu + le * ds.m[i] * ds.ybar[i] / denom[i];
    p.var_theta[i] = (1.0 + lt * lt / (denom[i] * st)) / denom[i];
    p.cov_theta_mu[i] = lt / (denom[i] * st);
    for (std::size_t j = 0; j < K; ++j)
      p.cov_theta_pairs[i][j] = i == j ? p.var_theta[i] : lt * lt / (denom[i] * denom[j] * st);
  }
  return p;
}

namespace {

void draw_theta_given_mu(ChainState& out, double lt, double le, const Dataset& ds, RngStream& rng) {
  for (std::size_t i = 0; i < ds.K(); ++i) {
    const double prec = lt + ds.m[i] * le;
    out.theta[i] = rng.normal((lt * out.mu + ds.m[i] * le * ds.ybar[i]) / prec, 1.0 / std::sqrt(prec));
  }
}

double draw_lambda_theta(const ChainState& s, const Dataset& ds, const Hyperparameters& h, RngStream& rng) {
  return rng.gamma(0.5 * static_cast<double>(ds.K()) + h.a1, 0.5 * v1(s) + h.b1);
}

double draw_lambda_e(const ChainState& s, const Dataset& ds, const Hyperparameters& h, RngStream& rng) {
  return rng.gamma(0.5 * ds.M + h.a2, 0.5 * (ds.sse + v2(s, ds)) + h.b2);
}

}  // namespace

ChainState sample_xi_given_lambda(double lt, double le, const Dataset& ds, const Hyperparameters& h, RngStream& rng) {
  if (!(lt > 0.0) || !(le > 0.0)) throw Error(ErrorKind::NonpositivePrecision, "precisions must be strictly positive");
  double t = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < ds.K(); ++i) {
    const double w = ds.m[i] * lt * le / (lt + ds.m[i] * le);
    t += w;
    weighted += w * ds.ybar[i];
  }
  ChainState out;
  out.lambda_theta = lt;
  out.lambda_e = le;
  out.theta.resize(ds.K());
  out.mu = rng.normal((weighted + h.m0 * h.s0) / (h.s0 + t), 1.0 / std::sqrt(h.s0 + t));
  draw_theta_given_mu(out, lt, le, ds, rng);
  return out;
}

ChainState block_gibbs_step(const ChainState& s, const Dataset& ds, const Hyperparameters& h, RngStream& rng) {
  require_state(s, ds);
  const double lt = draw_lambda_theta(s, ds, h, rng);
  const double le = draw_lambda_e(s, ds, h, rng);
  return sample_xi_given_lambda(lt, le, ds, h, rng);
}

ChainState gibbs_step(const ChainState& s, const Dataset& ds, const Hyperparameters& h, RngStream& rng) {
  require_state(s, ds);
  const double K = static_cast<double>(ds.K());
  ChainState out = s;
  const double tbar = std::accumulate(s.theta.begin(), s.theta.end(), 0.0) / K;
  const double prec_mu = h.s0 + K * s.lambda_theta;
  out.mu = rng.normal((h.s0 * h.m0 + K * s.lambda_theta * tbar) / prec_mu, 1.0 / std::sqrt(prec_mu));
  draw_theta_given_mu(out, s.lambda_theta, s.lambda_e, ds, rng);
  out.lambda_theta = draw_lambda_theta(out, ds, h, rng);
  out.lambda_e = draw_lambda_e(out, ds, h, rng);
  return out;
}

ChainState step(Kernel k, const ChainState& s, const Dataset& ds, const Hyperparameters& h, RngStream& rng) {
  return k == Kernel::gibbs ? gibbs_step(s, ds, h, rng) : block_gibbs_step(s, ds, h, rng);
}

void run_chain_visit(Kernel k, const ChainState& start, std::size_t n, std::uint64_t seed, const Dataset& ds,
                     const Hyperparameters& h, const std::function<void(std::size_t, const ChainState&)>& visit) {
  require_state(start, ds);
  RngStream rng(seed);
  ChainState cur = start;
  visit(0, cur);
  for (std::size_t i = 1; i <= n; ++i) {
    cur = step(k, cur, ds, h, rng);
    visit(i, cur);
  }
}

Trace run_chain(Kernel k, const ChainState& start, std::size_t n, std::uint64_t seed, const Dataset& ds,
                const Hyperparameters& h) {
  Trace tr;
  tr.kernel = k;
  tr.seed = seed;
  tr.states.reserve(n + 1);
  run_chain_visit(k, start, n, seed, ds, h, [&](std::size_t, const ChainState& s) { tr.states.push_back(s); });
  return tr;
}

void write_trace_header(std::ostream& os, std::size_t K) {
  os << "iter,mu,lambda_theta,lambda_e";
  for (std::size_t i = 1; i <= K; ++i) os << ",theta_" << i;
  os << '\n';
}

void write_trace_row(std::ostream& os, std::size_t iter, const ChainState& s) {
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << ',' << buf;
  };
  os << iter;
  put(s.mu);
  put(s.lambda_theta);
  put(s.lambda_e);
  for (double t : s.theta) put(t);
  os << '\n';
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
  write_trace_header(os, trace.states.empty() ? 0 : trace.states.front().theta.size());
  for (std::size_t i = 0; i < trace.states.size(); ++i) write_trace_row(os, i, trace.states[i]);
}

McEstimate mc_one_step_expectation(const std::function<double(const ChainState&)>& drift, const ChainState& x,
                                   Kernel k, std::size_t n_rep, std::uint64_t seed, const Dataset& ds,
                                   const Hyperparameters& h) {
  if (n_rep < 100) throw Error(ErrorKind::DomainError, "n_rep >= 100", 100.0 - static_cast<double>(n_rep));
  RngStream rng(seed);
  // Welford accumulation keeps the variance exact for constant evaluators.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n_rep; ++i) {
    const double v = drift(step(k, x, ds, h, rng));
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(n_rep - 1);
  return {mean, std::sqrt(var / static_cast<double>(n_rep))};
}

}  // namespace rebound
