#include "rebound/model.hpp"

#include "rebound/errors.hpp"
#include "rebound/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rebound {

namespace {

void finish(Dataset& ds) {
  const std::size_t K = ds.m.size();
  ds.M = std::accumulate(ds.m.begin(), ds.m.end(), 0);
  double weighted = 0.0;
  for (std::size_t i = 0; i < K; ++i) weighted += ds.m[i] * ds.ybar[i];
  ds.ybar_grand = weighted / ds.M;
  ds.ybar_cell_mean = std::accumulate(ds.ybar.begin(), ds.ybar.end(), 0.0) / static_cast<double>(K);
  ds.s2 = 0.0;
  for (double y : ds.ybar) ds.s2 += (y - ds.ybar_grand) * (y - ds.ybar_grand);
  ds.balanced = std::all_of(ds.m.begin(), ds.m.end(), [&](int mi) { return mi == ds.m.front(); });
}

void check_shape(const std::vector<int>& m) {
  // The per-group count is checked first so that a tiny file reports the
  // observation-count gate even when it also has too few groups.
  const int mmin = m.empty() ? 0 : *std::min_element(m.begin(), m.end());
  if (!m.empty() && mmin < 2)
    throw Error(ErrorKind::TooFewObservations, "m' >= 2", 2.0 - mmin);
  if (m.size() < 3)
    throw Error(ErrorKind::TooFewGroups, "K >= 3", 3.0 - static_cast<double>(m.size()));
}

}  // namespace

int Dataset::m_min() const { return *std::min_element(m.begin(), m.end()); }
int Dataset::m_max() const { return *std::max_element(m.begin(), m.end()); }

double Dataset::sum_inverse_m() const {
  double s = 0.0;
  for (int mi : m) s += 1.0 / mi;
  return s;
}

double Dataset::delta_hull(double m0) const {
  auto [lo, hi] = std::minmax_element(ybar.begin(), ybar.end());
  return std::max(*hi, m0) - std::min(*lo, m0);
}

Dataset Dataset::from_groups(const std::vector<std::vector<double>>& groups) {
  Dataset ds;
  for (const auto& g : groups) ds.m.push_back(static_cast<int>(g.size()));
  check_shape(ds.m);
  for (const auto& g : groups) {
    double mean = 0.0;
    for (double y : g) {
      if (!std::isfinite(y)) throw Error(ErrorKind::ValidationError, "observations must be finite");
      mean += y;
    }
    mean /= static_cast<double>(g.size());
    ds.ybar.push_back(mean);
    for (double y : g) ds.sse += (y - mean) * (y - mean);
  }
  finish(ds);
  return ds;
}

Dataset Dataset::from_summaries(std::vector<int> m, std::vector<double> ybar, double sse) {
  if (m.size() != ybar.size())
    throw Error(ErrorKind::ValidationError, "group counts and group means differ in length");
  check_shape(m);
  if (!(sse >= 0.0) || !std::isfinite(sse)) throw Error(ErrorKind::ValidationError, "SSE must be finite and >= 0");
  for (double y : ybar)
    if (!std::isfinite(y)) throw Error(ErrorKind::ValidationError, "group means must be finite");
  Dataset ds;
  ds.m = std::move(m);
  ds.ybar = std::move(ybar);
  ds.sse = sse;
  finish(ds);
  return ds;
}

void Hyperparameters::validate() const {
  const std::pair<const char*, double> positives[] = {{"a1", a1}, {"b1", b1}, {"a2", a2}, {"b2", b2}, {"s0", s0}};
  for (auto [name, v] : positives) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorKind::ValidationError, std::string("hyperparameter ") + name + " must be positive and finite");
  }
  if (!std::isfinite(m0)) throw Error(ErrorKind::ValidationError, "hyperparameter m0 must be finite");
}

void require_state(const ChainState& s, const Dataset& ds) {
  if (s.theta.size() != ds.K()) throw Error(ErrorKind::DomainError, "state theta length differs from K");
  if (!(s.lambda_theta > 0.0) || !(s.lambda_e > 0.0))
    throw Error(ErrorKind::NonpositivePrecision, "precisions must be strictly positive");
}

double v1(const ChainState& s) {
  double acc = 0.0;
  for (double t : s.theta) acc += (t - s.mu) * (t - s.mu);
  return acc;
}

double v2(const ChainState& s, const Dataset& ds) {
  double acc = 0.0;
  for (std::size_t i = 0; i < ds.K(); ++i) acc += ds.m[i] * (s.theta[i] - ds.ybar[i]) * (s.theta[i] - ds.ybar[i]);
  return acc;
}

double eval_block_drift(const ChainState& s, const BlockDriftSpec& spec, const Dataset& ds) {
  return spec.phi1 * v1(s) + spec.phi2 * v2(s, ds);
}

double eval_balanced_drift(const ChainState& s, double phi, const Dataset& ds) {
  if (!ds.balanced) throw Error(ErrorKind::NotBalanced, "balanced drift needs equal group sizes");
  double within = 0.0;
  double spread = 0.0;
  for (std::size_t i = 0; i < ds.K(); ++i) {
    within += (s.theta[i] - ds.ybar[i]) * (s.theta[i] - ds.ybar[i]);
    spread += (s.theta[i] - s.mu) * (s.theta[i] - s.mu);
  }
  // With every m_i equal to m, v2 / m is the plain sum of squares.
  return phi * spread + within;
}

double gibbs_inverse_weight(const Dataset& ds, const Hyperparameters& h) {
  const double K = static_cast<double>(ds.K());
  const double delta1 = 1.0 / (2.0 * h.a1 + K - 2.0);
  const double delta7 = 1.0 / (2.0 * (h.a1 - 1.0));
  return delta7 / (K * delta1);
}

double gibbs_v3(const ChainState& s, const Dataset& ds, const Hyperparameters& h) {
  const double K = static_cast<double>(ds.K());
  const double tbar = std::accumulate(s.theta.begin(), s.theta.end(), 0.0) / K;
  const double w = K * s.lambda_theta / (h.s0 + K * s.lambda_theta);
  return w * (tbar - ds.ybar_grand) * (tbar - ds.ybar_grand);
}

double eval_gibbs_drift(const ChainState& s, const GibbsDriftSpec& spec, const Hyperparameters& h,
                        const Dataset& ds) {
  if (!(s.lambda_theta > 0.0) || !(s.lambda_e > 0.0))
    throw Error(ErrorKind::NonpositivePrecision, "precisions must be strictly positive");
  return std::exp(spec.c3 * s.lambda_theta) + std::exp(spec.c3 * s.lambda_e) +
         gibbs_inverse_weight(ds, h) / s.lambda_theta + gibbs_v3(s, ds, h);
}

double log_unnormalized_posterior(const ChainState& s, const Dataset& ds, const Hyperparameters& h) {
  require_state(s, ds);
  const double K = static_cast<double>(ds.K());
  const double lt = s.lambda_theta;
  const double le = s.lambda_e;
  // Likelihood via sufficient statistics: sum_ij (y_ij - theta_i)^2 = SSE + sum m_i (theta_i - ybar_i)^2.
  double lp = 0.5 * ds.M * std::log(le) - 0.5 * le * (ds.sse + v2(s, ds));
  lp += 0.5 * K * std::log(lt) - 0.5 * lt * v1(s);
  lp += (h.a2 - 1.0) * std::log(le) - h.b2 * le;
  lp += (h.a1 - 1.0) * std::log(lt) - h.b1 * lt;
  lp += -0.5 * h.s0 * (s.mu - h.m0) * (s.mu - h.m0);
  return lp;
}

BlockStart optimal_start_block(const BlockDriftSpec& spec, const Dataset& ds) {
  const std::size_t K = ds.K();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < K; ++j) {
    const double w = ds.m[j] / (spec.phi1 + spec.phi2 * ds.m[j]);
    num += w * ds.ybar[j];
    den += w;
  }
  const double centre = num / den;
  BlockStart out;
  out.theta.resize(K);
  for (std::size_t i = 0; i < K; ++i) {
    out.theta[i] = (spec.phi1 * centre + spec.phi2 * ds.m[i] * ds.ybar[i]) / (spec.phi1 + spec.phi2 * ds.m[i]);
  }
  out.mu = std::accumulate(out.theta.begin(), out.theta.end(), 0.0) / static_cast<double>(K);
  return out;
}

ChainState optimal_start_gibbs(const GibbsDriftSpec& spec, const Dataset& ds, const Hyperparameters& h) {
  if (!(spec.c3 > 0.0)) throw Error(ErrorKind::DomainError, "c3 must be positive");
  const double w = gibbs_inverse_weight(ds, h);
  auto objective = [&](double lam) { return std::exp(spec.c3 * lam) + w / lam; };
  // The stationary point solves c3 e^{c3 x} x^2 = w; it lies below sqrt(w / c3)
  // and above the root of the same equation with e^{c3 x} replaced by its bound.
  const double hi = std::sqrt(w / spec.c3);
  const double lo = hi * std::exp(-0.5 * spec.c3 * hi) * 0.5;
  const auto best = numerics::minimize_scalar(objective, lo, hi);
  ChainState s;
  s.theta.assign(ds.K(), ds.ybar_grand);
  s.mu = ds.ybar_grand;
  s.lambda_theta = best.x;
  s.lambda_e = 1e-6;
  return s;
}

}  // namespace rebound
