#pragma once

#include <cstddef>
#include <vector>

namespace rebound {

// Sufficient statistics of a one-way layout. Raw observations are reduced
// on ingestion and never kept.
struct Dataset {
  std::vector<int> m;
  std::vector<double> ybar;
  double sse = 0.0;

  int M = 0;
  double ybar_grand = 0.0;      // M^-1 times the double sum
  double ybar_cell_mean = 0.0;  // K^-1 times the sum of group means
  double s2 = 0.0;              // sum of (ybar_i - ybar_grand)^2
  bool balanced = false;

  std::size_t K() const { return m.size(); }
  int m_min() const;
  int m_max() const;
  double sum_inverse_m() const;
  // Length of the convex hull of {ybar_1..ybar_K, m0}.
  double delta_hull(double m0) const;

  static Dataset from_groups(const std::vector<std::vector<double>>& groups);
  static Dataset from_summaries(std::vector<int> m, std::vector<double> ybar, double sse);
};

struct Hyperparameters {
  double a1 = 1.0;
  double b1 = 1.0;
  double a2 = 1.0;
  double b2 = 1.0;
  double m0 = 0.0;
  double s0 = 1.0;

  void validate() const;
};

struct ChainState {
  std::vector<double> theta;
  double mu = 0.0;
  double lambda_theta = 1.0;
  double lambda_e = 1.0;
};

struct BlockDriftSpec {
  double phi1 = 1.0;
  double phi2 = 1.0;
  double gamma = 0.5;
};

struct GibbsDriftSpec {
  double c3 = 1.0;
  double gamma = 0.5;
  double rho1_slack = 1e-5;
};

double v1(const ChainState& s);
double v2(const ChainState& s, const Dataset& ds);

double eval_block_drift(const ChainState& s, const BlockDriftSpec& spec, const Dataset& ds);
// phi * v1 + v2 / m for balanced data, written out separately from the
// general two-weight form.
double eval_balanced_drift(const ChainState& s, double phi, const Dataset& ds);

// Coefficient delta7 / (K delta1) of the 1/lambda_theta term in the Gibbs drift.
double gibbs_inverse_weight(const Dataset& ds, const Hyperparameters& h);
double gibbs_v3(const ChainState& s, const Dataset& ds, const Hyperparameters& h);
double eval_gibbs_drift(const ChainState& s, const GibbsDriftSpec& spec, const Hyperparameters& h,
                        const Dataset& ds);

double log_unnormalized_posterior(const ChainState& s, const Dataset& ds, const Hyperparameters& h);

struct BlockStart {
  std::vector<double> theta;
  double mu = 0.0;
};

BlockStart optimal_start_block(const BlockDriftSpec& spec, const Dataset& ds);
ChainState optimal_start_gibbs(const GibbsDriftSpec& spec, const Dataset& ds, const Hyperparameters& h);

void require_state(const ChainState& s, const Dataset& ds);

}  // namespace rebound
