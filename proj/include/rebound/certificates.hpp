#pragma once

#include "rebound/model.hpp"

#include <variant>

namespace rebound {

struct BlockDriftCertificate {
  BlockDriftSpec spec;
  double delta1 = 0, delta2 = 0, delta3 = 0, delta4 = 0, delta5 = 0;
  double delta = 0;
  double c1 = 0, c2 = 0;
  double hull = 0;  // length of the convex hull of the group means and m0
  double b = 0;
  bool balanced = false;
  // Left-hand side of the weight condition that must stay below gamma.
  double weight_condition = 0;
};

BlockDriftCertificate derive_block_drift(const Dataset& ds, const Hyperparameters& h, double phi1, double phi2,
                                         double gamma);
BlockDriftCertificate derive_block_drift_balanced(const Dataset& ds, const Hyperparameters& h, double phi,
                                                  double gamma);

struct GibbsDriftCertificate {
  GibbsDriftSpec spec;
  double delta1 = 0, delta6 = 0, delta7 = 0;
  double rho1_limit = 0;
  double rho1 = 0;
  double b = 0;
};

GibbsDriftCertificate derive_gibbs_drift(const Dataset& ds, const Hyperparameters& h, double c3, double gamma,
                                         double rho1_slack = 1e-5);

// Crossing point of the Gamma(alpha, b) and Gamma(alpha, b + c/2) densities.
double gamma_inf_threshold(double alpha, double b, double c);

struct BlockSplit {
  double phi1 = 0, phi2 = 0;
  double lambda_theta_star = 0;
  double lambda_e_star = 0;
  double integral_theta = 0;
  double integral_e = 0;
};

struct GibbsSplit {
  double c3 = 0;
  double c4 = 0;
  double c_l = 0, c_u = 0;
  double v = 0;
  double m_l = 0, m_u = 0;
};

struct MinorizationCertificate {
  double d = 0;
  double epsilon = 0;
  double log_epsilon = 0;
  std::variant<BlockSplit, GibbsSplit> split;
};

MinorizationCertificate block_minorization(const Dataset& ds, const Hyperparameters& h, double phi1, double phi2,
                                           double d);
MinorizationCertificate gibbs_minorization(const Dataset& ds, const Hyperparameters& h, double c3, double d);

// Infimum over tau in [a, b] of the N(tau, sigma2) density at x.
double normal_inf_value(double a, double b, double sigma2, double x);

struct GeometricDriftCertificate {
  double rho = 0;
  double L = 0;
  double d_C = 0;
  double a = 1;
};

GeometricDriftCertificate convert_drift(double gamma, double b, double a = 1.0);

bool check_ratio_inequality(double a, double b, double x, double y);

// Pieces of the minorizing densities, exposed for the domination checks.
namespace minorant {

// log h1(lambda_theta) and log h2(lambda_e) for the block sampler.
double log_h1(const Dataset& ds, const Hyperparameters& h, const BlockSplit& s, double d, double lambda_theta);
double log_h2(const Dataset& ds, const Hyperparameters& h, const BlockSplit& s, double d, double lambda_e);

double log_g1(const Dataset& ds, const GibbsSplit& s, double d, double mu, const std::vector<double>& theta);
// log of g2(mu) times the square-root ratio of the two mu precisions.
double log_g2_scaled(const Dataset& ds, const Hyperparameters& h, const GibbsSplit& s, double d, double mu);

// Membership of a Gibbs state in the three pieces of the enlarged small set.
struct GibbsSetMembership {
  bool in_g1 = false;
  bool in_g2 = false;
  bool in_g3 = false;
};
GibbsSetMembership gibbs_set_membership(const Dataset& ds, const Hyperparameters& h, const GibbsSplit& s, double d,
                                        const ChainState& state);

}  // namespace minorant

}  // namespace rebound
