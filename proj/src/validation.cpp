#include "rebound/validation.hpp"

#include "rebound/certificates.hpp"
#include "rebound/errors.hpp"
#include "rebound/numerics.hpp"
#include "rebound/reference_data.hpp"
#include "rebound/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

namespace rebound {

namespace {

// Tracks one family of inequality checks. A margin is lhs - rhs for a check
// that must satisfy lhs <= rhs.
struct Tally {
  SuiteResult r;
  explicit Tally(std::string name) {
    r.name = std::move(name);
    r.worst_margin = -std::numeric_limits<double>::infinity();
  }
  void check(double margin) {
    ++r.checks;
    if (std::isnan(margin) || margin > 0.0) ++r.violations;
    if (std::isnan(margin)) margin = std::numeric_limits<double>::infinity();
    r.worst_margin = std::max(r.worst_margin, margin);
  }
  SuiteResult done(std::size_t min_checks = 1) {
    r.passed = r.violations == 0 && r.checks >= min_checks;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu checks, %zu violations, worst margin %.3g", r.checks, r.violations,
                  r.worst_margin);
    if (r.detail.empty()) r.detail = buf;
    else r.detail = std::string(buf) + "; " + r.detail;
    return r;
  }
};

double log_uniform(RngStream& rng, double lo, double hi) {
  return std::exp(std::log(lo) + rng.uniform() * (std::log(hi) - std::log(lo)));
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

ChainState random_state(const Dataset& ds, SamplerKind sampler, RngStream& rng) {
  const double scale = log_uniform(rng, 1e-2, 10.0);
  ChainState s;
  s.theta.resize(ds.K());
  for (std::size_t i = 0; i < ds.K(); ++i) s.theta[i] = ds.ybar[i] + scale * rng.normal(0.0, 1.0);
  s.mu = mean_of(s.theta) + scale * rng.normal(0.0, 1.0);
  if (sampler == SamplerKind::gibbs) {
    s.lambda_theta = log_uniform(rng, 2e-2, 2.0);
    s.lambda_e = log_uniform(rng, 1e-4, 2.0);
  }
  return s;
}

double gibbs_lambda_top(const GibbsSplit& s, double d) { return std::log(d) / s.c3; }

}  // namespace

ValidationContext default_validation_context(std::uint64_t seed) {
  ValidationContext ctx;
  ctx.seed = seed;
  const Dataset five = reference::five_group_data();
  const double rows[4][3] = {{0.2596, 0.9423, 15.997}, {0.2596, 0.5385, 3.0079}, {0.4183, 0.3059, 2.8351},
                             {0.4340, 0.2965, 2.8039}};
  for (int i = 0; i < 4; ++i) {
    CertificateCase c;
    c.label = "five-group prior " + std::to_string(i + 1);
    c.ds = five;
    c.h = reference::five_group_prior(i + 1, five);
    c.point.gamma = rows[i][0];
    c.point.phi1 = rows[i][1];
    c.point.d = rows[i][2];
    ctx.drift_cases.push_back(c);
  }
  {
    CertificateCase c;
    c.label = "unbalanced five-group";
    c.ds = Dataset::from_summaries({4, 6, 8, 10, 12}, five.ybar, five.sse);
    c.h = reference::five_group_prior(2, c.ds);
    c.point.gamma = 0.5;
    c.point.phi1 = 0.5;
    c.point.phi2 = 0.4;
    c.point.d = 10.0;
    ctx.drift_cases.push_back(c);
  }
  const Dataset three = reference::three_group_data();
  {
    CertificateCase c;
    c.label = "three-group block";
    c.ds = three;
    c.h = reference::three_group_prior();
    c.point.gamma = 0.3956;
    c.point.phi1 = 0.3589;
    c.point.d = 28.328;
    ctx.drift_cases.push_back(c);
  }
  {
    CertificateCase c;
    c.label = "three-group gibbs";
    c.ds = three;
    c.h = reference::three_group_prior();
    c.sampler = SamplerKind::gibbs;
    c.point.gamma = 0.41528;
    c.point.c3 = 2.6667;
    c.point.d = 26.010;
    ctx.drift_cases.push_back(c);
    ctx.gibbs_case = c;
  }
  ctx.block_case = ctx.drift_cases[1];
  return ctx;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"drift-mc",          "minorization-block", "minorization-gibbs",
                                              "gamma-infimum",     "ratio-inequality",        "drift-conversion",
                                              "containment",       "epsilon-quadrature", "xi-moments"};
  return names;
}

SuiteResult validate_drift_mc(const ValidationContext& ctx) {
  Tally t("drift-mc");
  std::string notes;
  std::uint64_t stream = ctx.seed * 1000003u + 17u;
  for (const auto& c : ctx.drift_cases) {
    const PreparedDrift drift = prepare_drift(c.ds, c.h, c.sampler, c.point, ctx.rho1_slack);
    std::function<double(const ChainState&)> V;
    Kernel kernel = Kernel::block;
    if (drift.block) {
      const BlockDriftSpec spec = drift.block->spec;
      V = [spec, &c](const ChainState& s) { return eval_block_drift(s, spec, c.ds); };
    } else {
      const GibbsDriftSpec spec = drift.gibbs->spec;
      V = [spec, &c](const ChainState& s) { return eval_gibbs_drift(s, spec, c.h, c.ds); };
      kernel = Kernel::gibbs;
    }
    RngStream rng(stream++);
    std::size_t before = t.r.violations;
    for (std::size_t i = 0; i < ctx.drift_states; ++i) {
      const ChainState x = random_state(c.ds, c.sampler, rng);
      const McEstimate est = mc_one_step_expectation(V, x, kernel, ctx.drift_draws, stream++, c.ds, c.h);
      const double rhs = drift.gamma * V(x) + drift.b + 4.0 * est.std_error;
      t.check((est.estimate - rhs) / (1.0 + std::abs(rhs)));
    }
    if (t.r.violations != before) notes += c.label + " failed; ";
  }
  t.r.detail = notes;
  return t.done(ctx.drift_cases.size() * ctx.drift_states);
}

SuiteResult validate_block_minorization(const ValidationContext& ctx) {
  Tally t("minorization-block");
  const CertificateCase& c = ctx.block_case;
  const PreparedDrift drift = prepare_drift(c.ds, c.h, SamplerKind::block, c.point);
  const double d = c.point.d;
  const auto cert = block_minorization(c.ds, c.h, drift.phi1, drift.phi2, d);
  const auto& split = std::get<BlockSplit>(cert.split);
  const double K = static_cast<double>(c.ds.K());
  RngStream rng(ctx.seed * 7919u + 3u);
  const auto lam_grid = grid_values(1e-4, 1e2, 600, true);
  std::size_t accepted = 0;
  while (accepted < 50) {
    // Draw theta with v2 below its cap, then place mu so v1 stays below its cap.
    ChainState s;
    s.theta.resize(c.ds.K());
    double v2raw = 0.0;
    for (std::size_t i = 0; i < c.ds.K(); ++i) {
      s.theta[i] = rng.normal(0.0, 1.0);
      v2raw += c.ds.m[i] * s.theta[i] * s.theta[i];
    }
    const double scale = std::sqrt(rng.uniform() * d / drift.phi2 / v2raw);
    for (std::size_t i = 0; i < c.ds.K(); ++i) s.theta[i] = c.ds.ybar[i] + scale * s.theta[i];
    const double tbar = mean_of(s.theta);
    double spread = 0.0;
    for (double th : s.theta) spread += (th - tbar) * (th - tbar);
    const double cap = d / drift.phi1;
    if (spread >= cap) continue;
    const double target = spread + rng.uniform() * (cap - spread);
    s.mu = tbar + (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::sqrt((target - spread) / K);
    const double a1 = v1(s);
    const double a2 = v2(s, c.ds);
    if (!(drift.phi1 * a1 < d && a2 < d / drift.phi2)) continue;
    ++accepted;
    for (double lam : lam_grid) {
      const double f_theta = numerics::log_gamma_density(0.5 * K + c.h.a1, 0.5 * a1 + c.h.b1, lam);
      const double h1 = minorant::log_h1(c.ds, c.h, split, d, lam);
      t.check(h1 - f_theta - 1e-10 * (1.0 + std::abs(h1)));
      const double f_e = numerics::log_gamma_density(0.5 * c.ds.M + c.h.a2, 0.5 * (c.ds.sse + a2) + c.h.b2, lam);
      const double h2 = minorant::log_h2(c.ds, c.h, split, d, lam);
      t.check(h2 - f_e - 1e-10 * (1.0 + std::abs(h2)));
    }
  }
  return t.done(50000);
}

SuiteResult validate_gibbs_minorization(const ValidationContext& ctx) {
  Tally t("minorization-gibbs");
  const CertificateCase& c = ctx.gibbs_case;
  const double d = c.point.d;
  const auto cert = gibbs_minorization(c.ds, c.h, c.point.c3, d);
  const auto& split = std::get<GibbsSplit>(cert.split);
  const double K = static_cast<double>(c.ds.K());
  const double top = gibbs_lambda_top(split, d);
  RngStream rng(ctx.seed * 104729u + 5u);
  const auto mu_grid = grid_values(split.c_l - 3.0, split.c_u + 3.0, 1000, false);
  const auto mu_coarse = grid_values(split.c_l, split.c_u, 40, false);
  for (int k = 0; k < 50; ++k) {
    const double lt = split.c4 + rng.uniform() * (top - split.c4);
    const double le = (1.0 - rng.uniform()) * top;
    const double tau = split.c_l + rng.uniform() * (split.c_u - split.c_l);
    const double tbar = (tau * (c.h.s0 + K * lt) - c.h.s0 * c.h.m0) / (K * lt);
    const double prec_mu = c.h.s0 + K * lt;
    const double mean_mu = (c.h.s0 * c.h.m0 + K * lt * tbar) / prec_mu;
    for (double mu : mu_grid) {
      const double f = numerics::log_normal_density(mean_mu, 1.0 / prec_mu, mu);
      const double g = minorant::log_g2_scaled(c.ds, c.h, split, d, mu);
      t.check(g - f - 1e-10 * (1.0 + std::abs(g)));
    }
    for (double mu : mu_coarse) {
      for (int rep = 0; rep < 25; ++rep) {
        std::vector<double> theta(c.ds.K());
        double f = 0.0;
        for (std::size_t i = 0; i < c.ds.K(); ++i) {
          theta[i] = c.ds.ybar[i] + 2.0 * rng.normal(0.0, 1.0);
          const double prec = lt + c.ds.m[i] * le;
          f += numerics::log_normal_density((lt * mu + c.ds.m[i] * le * c.ds.ybar[i]) / prec, 1.0 / prec, theta[i]);
        }
        const double g = minorant::log_g1(c.ds, split, d, mu, theta);
        t.check(g - f - 1e-10 * (1.0 + std::abs(g)));
      }
    }
  }
  return t.done(100000);
}

SuiteResult validate_gamma_infimum(const ValidationContext& ctx) {
  Tally t("gamma-infimum");
  RngStream rng(ctx.seed * 31337u + 11u);
  for (int k = 0; k < 20; ++k) {
    const double alpha = 1.0 + log_uniform(rng, 0.05, 30.0);
    const double b = log_uniform(rng, 0.1, 20.0);
    const double c = log_uniform(rng, 0.1, 40.0);
    const double xs = gamma_inf_threshold(alpha, b, c);
    const auto betas = grid_values(0.0, c, 1000, false);
    const auto xs_grid = grid_values(xs / 20.0, xs * 5.0, 100, true);
    for (double x : xs_grid) {
      double grid_min = std::numeric_limits<double>::infinity();
      for (double beta : betas) grid_min = std::min(grid_min, numerics::log_gamma_density(alpha, b + 0.5 * beta, x));
      const double piece = numerics::log_gamma_density(alpha, x <= xs ? b : b + 0.5 * c, x);
      // Equality in density terms to 1e-10 relative, checked in both directions.
      t.check(std::abs(std::expm1(grid_min - piece)) - 1e-10);
    }
  }
  return t.done(2000);
}

SuiteResult validate_ratio_inequality(const ValidationContext& ctx) {
  Tally t("ratio-inequality");
  RngStream rng(ctx.seed * 2654435761u + 13u);
  for (int k = 0; k < 100000; ++k) {
    const double b = log_uniform(rng, 1e-3, 1e3);
    const double a = b * (1.0 + 4.0 * rng.uniform() * (1.0 - 1e-12));
    const double x = log_uniform(rng, 1e-4, 1e4);
    const double y = log_uniform(rng, 1e-4, 1e4);
    if (!(5.0 * b > a && a >= b)) continue;
    t.check(check_ratio_inequality(a, b, x, y) ? -1.0 : 1.0);
  }
  return t.done(99000);
}

SuiteResult validate_drift_conversion(const ValidationContext&) {
  Tally t("drift-conversion");
  for (double gamma : grid_values(0.05, 0.95, 19, false)) {
    for (double b : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const auto g = convert_drift(gamma, b, a);
        t.check(g.L / (1.0 - g.rho) - 1.0 - g.d_C);
        for (double v : grid_values(0.0, 2.0 * g.d_C, 400, false)) {
          const double lhs = gamma * (1.0 + v) + b + (1.0 - gamma);
          const double rhs = g.rho * (1.0 + v) + (1.0 + v <= g.d_C ? g.L : 0.0);
          t.check(lhs - rhs - 1e-12 * (1.0 + v + b));
        }
      }
    }
  }
  return t.done();
}

SuiteResult validate_containment(const ValidationContext& ctx) {
  Tally t("containment");
  const CertificateCase& c = ctx.gibbs_case;
  const double d = c.point.d;
  const auto cert = gibbs_minorization(c.ds, c.h, c.point.c3, d);
  const auto& split = std::get<GibbsSplit>(cert.split);
  const GibbsDriftSpec spec{c.point.c3, c.point.gamma, ctx.rho1_slack};
  const double K = static_cast<double>(c.ds.K());
  const double top = gibbs_lambda_top(split, d);
  RngStream rng(ctx.seed * 6364136223846793005u + 19u);
  std::size_t accepted = 0;
  for (std::size_t tries = 0; accepted < 10000 && tries < 100000000; ++tries) {
    ChainState s;
    s.lambda_theta = 0.5 * split.c4 + rng.uniform() * (1.2 * top - 0.5 * split.c4);
    s.lambda_e = (1.0 - rng.uniform()) * 1.2 * top;
    const double reach = 1.2 * std::sqrt(d * (c.h.s0 + K * s.lambda_theta) / (K * s.lambda_theta));
    const double tbar = c.ds.ybar_grand + (2.0 * rng.uniform() - 1.0) * reach;
    s.theta.resize(c.ds.K());
    double shift = 0.0;
    for (std::size_t i = 0; i < c.ds.K(); ++i) shift += s.theta[i] = rng.normal(0.0, 1.0);
    shift /= K;
    for (auto& th : s.theta) th += tbar - shift;
    s.mu = tbar;
    if (eval_gibbs_drift(s, spec, c.h, c.ds) > d) continue;
    ++accepted;
    const auto m = minorant::gibbs_set_membership(c.ds, c.h, split, d, s);
    t.check(m.in_g1 && m.in_g2 && m.in_g3 ? -1.0 : 1.0);
  }
  return t.done(10000);
}

double log_gibbs_epsilon_by_quadrature(const Dataset& ds, const Hyperparameters& h, double c3, double d) {
  const double K = static_cast<double>(ds.K());
  const double L = std::log(d);
  const double lc = L / c3;
  const double c4 = gibbs_inverse_weight(ds, h) / d;
  const double ybar = ds.ybar_grand;
  const double half = std::sqrt((h.m0 - ybar) * (h.m0 - ybar) + d);
  const double cl = ybar - half;
  const double cu = ybar + half;
  const double prec = h.s0 + K * lc;

  // log of the integral of g1 over one theta coordinate, done numerically.
  auto log_inner = [&](std::size_t i, double mu) {
    const double mi = ds.m[i];
    auto q = [&](double th) { return -0.5 * lc * ((th - mu) * (th - mu) + mi * (th - ds.ybar[i]) * (th - ds.ybar[i])); };
    const double peak = (mu + mi * ds.ybar[i]) / (1.0 + mi);
    const double qp = q(peak);
    const double span = 40.0 / std::sqrt(lc * (1.0 + mi));
    const double I = numerics::quadrature_1d([&](double th) { return std::exp(q(th) - qp); }, peak - span, peak + span);
    return 0.5 * std::log(c4 / (2.0 * std::numbers::pi)) + qp + std::log(I);
  };
  auto log_outer = [&](double mu) {
    const double centre = mu <= ybar ? cu : cl;
    double acc = numerics::log_normal_density(centre, 1.0 / prec, mu);
    for (std::size_t i = 0; i < ds.K(); ++i) acc += log_inner(i, mu);
    return acc;
  };
  double sum_w = 0.0;
  for (int mi : ds.m) sum_w += mi / (1.0 + mi);
  const double sd = 1.0 / std::sqrt(prec + lc * sum_w);
  const double span = 40.0 * sd;
  const double lo_peak = std::min(ybar, cu) - span;
  const double hi_peak = std::max(ybar, cl) + span;
  // Shift by the largest log value on a coarse scan so the integrands stay O(1).
  double shift = -std::numeric_limits<double>::infinity();
  for (double mu : grid_values(lo_peak, hi_peak, 400, false)) shift = std::max(shift, log_outer(mu));
  shift = std::max({shift, log_outer(ybar), log_outer(std::nextafter(ybar, 1e300))});
  auto f = [&](double mu) { return std::exp(log_outer(mu) - shift); };
  const double left = numerics::quadrature_1d(f, lo_peak - span, ybar);
  const double right = numerics::quadrature_1d(f, ybar, hi_peak + span);
  return 0.5 * std::log((h.s0 + K * c4) / prec) + shift + std::log(left + right);
}

SuiteResult validate_gibbs_epsilon_quadrature(const ValidationContext& ctx) {
  Tally t("epsilon-quadrature");
  const CertificateCase& c = ctx.gibbs_case;
  std::string notes;
  const std::pair<double, double> settings[] = {{c.point.c3, c.point.d}, {1.0, 10.0}, {2.0, 50.0}, {0.5, 4.0}};
  for (auto [c3, d] : settings) {
    const auto cert = gibbs_minorization(c.ds, c.h, c3, d);
    const double oracle = log_gibbs_epsilon_by_quadrature(c.ds, c.h, c3, d);
    const double rel = std::abs(std::expm1(cert.log_epsilon - oracle));
    t.check(rel - 1e-6);
    char buf[96];
    std::snprintf(buf, sizeof buf, "c3=%.4g d=%.4g rel=%.2e; ", c3, d, rel);
    notes += buf;
  }
  t.r.detail = notes;
  return t.done(4);
}

SuiteResult validate_xi_moments(const ValidationContext& ctx) {
  Tally t("xi-moments");
  const CertificateCase& c = ctx.block_case;
  const std::size_t K = c.ds.K();
  const std::size_t D = K + 1;  // theta_1..theta_K, mu
  const std::pair<double, double> lambdas[] = {{0.5, 1.0}, {2.0, 0.3}, {10.0, 5.0}};
  RngStream rng(ctx.seed * 1442695040888963407u + 23u);
  const double n = static_cast<double>(ctx.moment_draws);
  for (auto [lt, le] : lambdas) {
    const auto p = posterior_normal_params(lt, le, c.ds, c.h);
    std::vector<double> mean(D), cov(D * D);
    for (std::size_t i = 0; i < K; ++i) {
      mean[i] = p.mean_theta[i];
      for (std::size_t j = 0; j < K; ++j) cov[i * D + j] = p.cov_theta_pairs[i][j];
      cov[i * D + K] = cov[K * D + i] = p.cov_theta_mu[i];
    }
    mean[K] = p.mean_mu;
    cov[K * D + K] = p.var_mu;

    std::vector<double> s1(D, 0.0), s2(D, 0.0), p1(D * D, 0.0), p2(D * D, 0.0);
    std::vector<double> z(D);
    for (std::size_t k = 0; k < ctx.moment_draws; ++k) {
      const ChainState s = sample_xi_given_lambda(lt, le, c.ds, c.h, rng);
      for (std::size_t i = 0; i < K; ++i) z[i] = s.theta[i] - mean[i];
      z[K] = s.mu - mean[K];
      for (std::size_t i = 0; i < D; ++i) {
        s1[i] += z[i];
        s2[i] += z[i] * z[i];
        for (std::size_t j = i; j < D; ++j) {
          const double q = z[i] * z[j];
          p1[i * D + j] += q;
          p2[i * D + j] += q * q;
        }
      }
    }
    for (std::size_t i = 0; i < D; ++i) {
      const double m = s1[i] / n;
      const double se = std::sqrt((s2[i] / n - m * m) / n);
      t.check(std::abs(m) - 4.0 * se);
      for (std::size_t j = i; j < D; ++j) {
        const double e = p1[i * D + j] / n;
        const double se2 = std::sqrt((p2[i * D + j] / n - e * e) / n);
        t.check(std::abs(e - cov[i * D + j]) - 4.0 * se2);
      }
    }
  }
  return t.done(3 * (2 * D + D * (D - 1) / 2));
}

std::vector<SuiteResult> run_validation(const ValidationContext& ctx, const std::string& suite) {
  using Fn = SuiteResult (*)(const ValidationContext&);
  const std::pair<const char*, Fn> table[] = {
      {"drift-mc", validate_drift_mc},
      {"minorization-block", validate_block_minorization},
      {"minorization-gibbs", validate_gibbs_minorization},
      {"gamma-infimum", validate_gamma_infimum},
      {"ratio-inequality", validate_ratio_inequality},
      {"drift-conversion", validate_drift_conversion},
      {"containment", validate_containment},
      {"epsilon-quadrature", validate_gibbs_epsilon_quadrature},
      {"xi-moments", validate_xi_moments},
  };
  std::vector<SuiteResult> out;
  for (auto [name, fn] : table) {
    if (suite == "all" || suite == name) out.push_back(fn(ctx));
  }
  if (out.empty()) throw Error(ErrorKind::ValidationError, "unknown validation suite '" + suite + "'");
  return out;
}

}  // namespace rebound
