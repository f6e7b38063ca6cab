#include "rebound/certificates.hpp"

#include "rebound/errors.hpp"
#include "rebound/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rebound {

namespace {

struct BlockDeltas {
  double d1, d2, d3, d4, d5, delta, c1, c2;
};

BlockDeltas block_deltas(const Dataset& ds, const Hyperparameters& h) {
  const double K = static_cast<double>(ds.K());
  BlockDeltas o{};
  o.d1 = 1.0 / (2.0 * h.a1 + K - 2.0);
  o.d2 = 1.0 / (2.0 * h.a2 + ds.M - 2.0);
  o.d3 = (K + 1.0) * o.d2;
  o.d4 = o.d2 * ds.sum_inverse_m();
  o.d5 = K * o.d2;
  o.delta = std::max(o.d1, o.d3);
  o.c1 = 2.0 * h.b1 * o.d1;
  o.c2 = (2.0 * h.b2 + ds.sse) * o.d2;
  return o;
}

void require_gamma_window(double gamma, double lower, const char* name) {
  if (!(gamma > lower)) throw Error(ErrorKind::DriftPreconditionViolated, std::string("gamma > ") + name, lower - gamma);
  if (!(gamma < 1.0)) throw Error(ErrorKind::DriftPreconditionViolated, "gamma < 1", gamma - 1.0);
}

BlockDriftCertificate fill(const BlockDeltas& o, const Dataset& ds, const Hyperparameters& h) {
  BlockDriftCertificate c;
  c.delta1 = o.d1;
  c.delta2 = o.d2;
  c.delta3 = o.d3;
  c.delta4 = o.d4;
  c.delta5 = o.d5;
  c.delta = o.delta;
  c.c1 = o.c1;
  c.c2 = o.c2;
  c.hull = ds.delta_hull(h.m0);
  return c;
}

}  // namespace

BlockDriftCertificate derive_block_drift(const Dataset& ds, const Hyperparameters& h, double phi1, double phi2,
                                         double gamma) {
  h.validate();
  if (!(phi1 > 0.0) || !(phi2 > 0.0)) throw Error(ErrorKind::DomainError, "phi1 and phi2 must be positive");
  const BlockDeltas o = block_deltas(ds, h);
  require_gamma_window(gamma, o.delta, "delta");
  const double lhs = phi1 * o.d4 / phi2 + o.delta;
  if (!(lhs < gamma)) throw Error(ErrorKind::DriftPreconditionViolated, "phi1*delta4/phi2 + delta < gamma", lhs - gamma);

  BlockDriftCertificate c = fill(o, ds, h);
  c.spec = {phi1, phi2, gamma};
  c.weight_condition = lhs;
  const double K = static_cast<double>(ds.K());
  const double hull2 = c.hull * c.hull;
  c.b = phi1 * (o.c1 + o.c2 * ds.sum_inverse_m() + K * hull2) + phi2 * (o.c2 * (K + 1.0) + ds.M * hull2);
  return c;
}

BlockDriftCertificate derive_block_drift_balanced(const Dataset& ds, const Hyperparameters& h, double phi,
                                                  double gamma) {
  h.validate();
  if (!ds.balanced) throw Error(ErrorKind::NotBalanced, "balanced drift requires equal group sizes");
  if (!(phi > 0.0)) throw Error(ErrorKind::DomainError, "phi must be positive");
  const BlockDeltas o = block_deltas(ds, h);
  require_gamma_window(gamma, o.delta, "delta");
  const double lhs = phi * o.d5 + o.delta;
  if (!(lhs < gamma)) throw Error(ErrorKind::DriftPreconditionViolated, "phi*delta5 + delta < gamma", lhs - gamma);

  const double K = static_cast<double>(ds.K());
  const double m = ds.m.front();
  BlockDriftCertificate c = fill(o, ds, h);
  c.spec = {phi, 1.0 / m, gamma};
  c.balanced = true;
  c.weight_condition = lhs;
  // This form uses the unweighted mean of the group means.
  double spread = 0.0;
  for (double y : ds.ybar) {
    const double a = (ds.ybar_cell_mean - y) * (ds.ybar_cell_mean - y);
    const double b = (h.m0 - y) * (h.m0 - y);
    spread += std::max(a, b);
  }
  c.b = phi * o.c1 + (phi * K + K + 1.0) / m * o.c2 + std::max(phi, 1.0) * spread;
  return c;
}

GibbsDriftCertificate derive_gibbs_drift(const Dataset& ds, const Hyperparameters& h, double c3, double gamma,
                                         double rho1_slack) {
  h.validate();
  if (!(h.a1 > 1.5)) throw Error(ErrorKind::AssumptionViolated, "a1 > 3/2", 1.5 - h.a1);
  const double ratio_gap = ds.m_max() - 5.0 * ds.m_min();
  if (!(ratio_gap < 0.0)) throw Error(ErrorKind::AssumptionViolated, "5 m' > m''", ratio_gap);
  if (!(c3 > 0.0)) throw Error(ErrorKind::AssumptionViolated, "c3 > 0", -c3);
  const double cap = std::min(h.b1, h.b2);
  if (!(c3 < cap)) throw Error(ErrorKind::AssumptionViolated, "c3 < min(b1, b2)", c3 - cap);
  if (!(rho1_slack > 0.0)) throw Error(ErrorKind::AssumptionViolated, "rho1 slack > 0", -rho1_slack);

  const double K = static_cast<double>(ds.K());
  GibbsDriftCertificate c;
  c.spec = {c3, gamma, rho1_slack};
  c.delta1 = 1.0 / (2.0 * h.a1 + K - 2.0);
  c.delta6 = (K * K + 2.0 * K * h.a1) / (2.0 * h.s0 * h.b1 + K * K + 2.0 * K * h.a1);
  c.delta7 = 1.0 / (2.0 * (h.a1 - 1.0));
  c.rho1_limit = (K + c.delta6 / c.delta7) * c.delta1;
  c.rho1 = c.rho1_limit + rho1_slack;
  if (!(c.rho1 < 1.0)) throw Error(ErrorKind::AssumptionViolated, "rho1 < 1", c.rho1 - 1.0);
  const double floor = std::max({c.rho1, c.delta6, c.delta7});
  if (!(gamma > floor)) throw Error(ErrorKind::AssumptionViolated, "gamma > max(rho1, delta6, delta7)", floor - gamma);
  if (!(gamma < 1.0)) throw Error(ErrorKind::AssumptionViolated, "gamma < 1", gamma - 1.0);

  const double ybar = ds.ybar_grand;
  const double lead_theta = std::pow(h.b1 / (h.b1 - c3), h.a1 + 0.5 * K);
  const double lead_e = std::pow(h.b2 / (h.b2 - c3), h.a2 + 0.5 * ds.M);
  const double centre = 1.0 / h.s0 + (h.m0 - ybar) * (h.m0 - ybar) + ds.s2 / K;
  c.b = lead_theta + lead_e + (c.delta6 + c.delta7) * centre + 2.0 * h.b1 * c.delta7 / K;
  return c;
}

double gamma_inf_threshold(double alpha, double b, double c) {
  if (!(alpha > 1.0)) throw Error(ErrorKind::AlphaNotGreaterThanOne, "alpha > 1", 1.0 - alpha);
  if (!(b > 0.0) || !(c > 0.0)) throw Error(ErrorKind::DomainError, "gamma_inf_threshold needs b, c > 0");
  return 2.0 * alpha / c * std::log1p(c / (2.0 * b));
}

MinorizationCertificate block_minorization(const Dataset& ds, const Hyperparameters& h, double phi1, double phi2,
                                           double d) {
  if (!(d > 0.0)) throw Error(ErrorKind::NonpositiveRadius, "d > 0", -d);
  if (!(phi1 > 0.0) || !(phi2 > 0.0)) throw Error(ErrorKind::DomainError, "phi1 and phi2 must be positive");
  const double K = static_cast<double>(ds.K());
  const double shape_t = 0.5 * K + h.a1;
  const double shape_e = 0.5 * ds.M + h.a2;
  const double rate_e = 0.5 * ds.sse + h.b2;

  BlockSplit s;
  s.phi1 = phi1;
  s.phi2 = phi2;
  s.lambda_theta_star = phi1 * (K + 2.0 * h.a1) / d * std::log1p(d / (2.0 * h.b1 * phi1));
  s.lambda_e_star = phi2 * (ds.M + 2.0 * h.a2) / d * std::log1p(d / (phi2 * (2.0 * h.b2 + ds.sse)));
  s.integral_theta = numerics::reg_lower_inc_gamma(shape_t, h.b1 * s.lambda_theta_star) +
                     numerics::reg_upper_inc_gamma(shape_t, (0.5 * d / phi1 + h.b1) * s.lambda_theta_star);
  s.integral_e = numerics::reg_lower_inc_gamma(shape_e, rate_e * s.lambda_e_star) +
                 numerics::reg_upper_inc_gamma(shape_e, ((phi2 * ds.sse + d) / (2.0 * phi2) + h.b2) * s.lambda_e_star);

  MinorizationCertificate out;
  out.d = d;
  out.log_epsilon = std::log(s.integral_theta) + std::log(s.integral_e);
  out.epsilon = std::exp(out.log_epsilon);
  out.split = s;
  return out;
}

MinorizationCertificate gibbs_minorization(const Dataset& ds, const Hyperparameters& h, double c3, double d) {
  h.validate();
  if (!(d > 0.0)) throw Error(ErrorKind::NonpositiveRadius, "d > 0", -d);
  if (!(c3 > 0.0)) throw Error(ErrorKind::DomainError, "c3 must be positive");
  const double K = static_cast<double>(ds.K());
  const double inv_weight = gibbs_inverse_weight(ds, h);
  const double threshold = c3 * inv_weight;
  if (!(d > 1.0) || !(d * std::log(d) > threshold))
    throw Error(ErrorKind::EmptySmallSet, "d log d > c3 delta7 / (K delta1)", threshold - (d > 0 ? d * std::log(d) : 0.0));

  const double L = std::log(d);
  const double lc = L / c3;
  const double ybar = ds.ybar_grand;
  GibbsSplit s;
  s.c3 = c3;
  s.c4 = inv_weight / d;
  const double half_width = std::sqrt((h.m0 - ybar) * (h.m0 - ybar) + d);
  s.c_l = ybar - half_width;
  s.c_u = ybar + half_width;
  double sum_w = 0.0;
  double sum_wy = 0.0;
  double sum_wy2 = 0.0;
  double log_prod = 0.0;
  for (std::size_t i = 0; i < ds.K(); ++i) {
    const double w = ds.m[i] / (1.0 + ds.m[i]);
    sum_w += w;
    sum_wy += w * ds.ybar[i];
    sum_wy2 += w * ds.ybar[i] * ds.ybar[i];
    log_prod -= std::log1p(static_cast<double>(ds.m[i]));
  }
  s.v = 1.0 / (h.s0 + lc * (K + sum_w));
  s.m_l = s.v * (s.c_l * h.s0 + lc * (K * s.c_l + sum_wy));
  s.m_u = s.v * (s.c_u * h.s0 + lc * (K * s.c_u + sum_wy));

  const double sd = std::sqrt(s.v);
  const double upper = -0.5 * s.c_u * s.c_u * h.s0 - 0.5 * K * s.c_u * s.c_u * lc + 0.5 * s.m_u * s.m_u / s.v +
                       numerics::log_std_normal_cdf((ybar - s.m_u) / sd);
  // 1 - Phi(z) = Phi(-z) keeps the tail accurate.
  const double lower = -0.5 * s.c_l * s.c_l * h.s0 - 0.5 * K * s.c_l * s.c_l * lc + 0.5 * s.m_l * s.m_l / s.v +
                       numerics::log_std_normal_cdf(-(ybar - s.m_l) / sd);
  double log_eps = 0.5 * std::log(s.v * (h.s0 + K * s.c4)) + 0.5 * log_prod + 0.5 * K * std::log(s.c4 / lc) -
                   0.5 * lc * sum_wy2 + numerics::log_add_exp(upper, lower);

  MinorizationCertificate out;
  out.d = d;
  out.log_epsilon = std::min(log_eps, 0.0);
  out.epsilon = std::exp(out.log_epsilon);
  out.split = s;
  return out;
}

double normal_inf_value(double a, double b, double sigma2, double x) {
  if (!(a <= b)) throw Error(ErrorKind::InvalidInterval, "a <= b", a - b);
  if (!(sigma2 > 0.0)) throw Error(ErrorKind::DomainError, "sigma2 must be positive");
  const double tau = x <= 0.5 * (a + b) ? b : a;
  return std::exp(numerics::log_normal_density(tau, sigma2, x));
}

GeometricDriftCertificate convert_drift(double gamma, double b, double a) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error(ErrorKind::DomainError, "gamma must lie in (0, 1)");
  if (!(b >= 0.0) || !std::isfinite(b)) throw Error(ErrorKind::DomainError, "b must be finite and nonnegative");
  if (!(a > 0.0)) throw Error(ErrorKind::DomainError, "a must be positive");
  GeometricDriftCertificate g;
  g.a = a;
  g.rho = (a + gamma) / (a + 1.0);
  g.L = b + (1.0 - gamma);
  g.d_C = (a + 1.0) * g.L / (a * (1.0 - g.rho));
  return g;
}

bool check_ratio_inequality(double a, double b, double x, double y) {
  if (!(5.0 * b > a && a >= b && b > 0.0 && x > 0.0 && y > 0.0)) return false;
  const double p = a * x / (a * x + y);
  const double q = y / (b * x + y);
  return p * p + q * q < 1.0;
}

namespace minorant {

double log_h1(const Dataset& ds, const Hyperparameters& h, const BlockSplit& s, double d, double lt) {
  const double shape = 0.5 * static_cast<double>(ds.K()) + h.a1;
  const double rate = lt <= s.lambda_theta_star ? h.b1 : h.b1 + 0.5 * d / s.phi1;
  return numerics::log_gamma_density(shape, rate, lt);
}

double log_h2(const Dataset& ds, const Hyperparameters& h, const BlockSplit& s, double d, double le) {
  const double shape = 0.5 * ds.M + h.a2;
  const double base = 0.5 * ds.sse + h.b2;
  const double rate = le <= s.lambda_e_star ? base : base + 0.5 * d / s.phi2;
  return numerics::log_gamma_density(shape, rate, le);
}

double log_g1(const Dataset& ds, const GibbsSplit& s, double d, double mu, const std::vector<double>& theta) {
  const double K = static_cast<double>(ds.K());
  double q = 0.0;
  for (std::size_t i = 0; i < ds.K(); ++i)
    q += (theta[i] - mu) * (theta[i] - mu) + ds.m[i] * (theta[i] - ds.ybar[i]) * (theta[i] - ds.ybar[i]);
  return 0.5 * K * std::log(s.c4 / (2.0 * std::numbers::pi)) - std::log(d) / (2.0 * s.c3) * q;
}

double log_g2_scaled(const Dataset& ds, const Hyperparameters& h, const GibbsSplit& s, double d, double mu) {
  const double K = static_cast<double>(ds.K());
  const double prec = h.s0 + K * std::log(d) / s.c3;
  const double centre = mu <= ds.ybar_grand ? s.c_u : s.c_l;
  return numerics::log_normal_density(centre, 1.0 / prec, mu) + 0.5 * std::log((h.s0 + K * s.c4) / prec);
}

GibbsSetMembership gibbs_set_membership(const Dataset& ds, const Hyperparameters& h, const GibbsSplit& s, double d,
                                        const ChainState& state) {
  const double K = static_cast<double>(ds.K());
  const double top = std::log(d) / s.c3;
  double tbar = 0.0;
  for (double t : state.theta) tbar += t;
  tbar /= K;
  const double centre = (h.s0 * h.m0 + K * state.lambda_theta * tbar) / (h.s0 + K * state.lambda_theta);
  GibbsSetMembership m;
  m.in_g1 = s.c4 <= state.lambda_theta && state.lambda_theta <= top;
  m.in_g2 = state.lambda_e > 0.0 && state.lambda_e <= top;
  m.in_g3 = s.c_l <= centre && centre <= s.c_u;
  return m;
}

}  // namespace minorant

}  // namespace rebound
