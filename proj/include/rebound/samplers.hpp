#pragma once

#include "rebound/model.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <vector>

namespace rebound {

class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  double normal(double mean, double sd);
  // Gamma with the given shape and rate. Shapes below one are rejected.
  double gamma(double shape, double rate);
  double uniform();

  std::uint64_t seed() const { return seed_; }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::gamma_distribution<double> gamma_;
  std::uniform_real_distribution<double> uniform_;
};

enum class Kernel { gibbs, block };

const char* kernel_name(Kernel k);

// Moments of (theta, mu) given both precisions.
struct PosteriorNormalParams {
  double t = 0.0;
  double mean_mu = 0.0;
  double var_mu = 0.0;
  std::vector<double> mean_theta;
  std::vector<double> var_theta;
  std::vector<std::vector<double>> cov_theta_pairs;  // full K x K, diagonal equals var_theta
  std::vector<double> cov_theta_mu;
};

PosteriorNormalParams posterior_normal_params(double lambda_theta, double lambda_e, const Dataset& ds,
                                              const Hyperparameters& h);

// Draws (theta, mu) given the precisions carried in `lambda`.
ChainState sample_xi_given_lambda(double lambda_theta, double lambda_e, const Dataset& ds,
                                  const Hyperparameters& h, RngStream& rng);

ChainState block_gibbs_step(const ChainState& s, const Dataset& ds, const Hyperparameters& h, RngStream& rng);
ChainState gibbs_step(const ChainState& s, const Dataset& ds, const Hyperparameters& h, RngStream& rng);
ChainState step(Kernel k, const ChainState& s, const Dataset& ds, const Hyperparameters& h, RngStream& rng);

struct Trace {
  Kernel kernel = Kernel::block;
  std::uint64_t seed = 0;
  std::vector<ChainState> states;
};

Trace run_chain(Kernel k, const ChainState& start, std::size_t n, std::uint64_t seed, const Dataset& ds,
                const Hyperparameters& h);

// Streams the chain through `visit(iter, state)` without storing it; the
// start is visited as iteration 0.
void run_chain_visit(Kernel k, const ChainState& start, std::size_t n, std::uint64_t seed, const Dataset& ds,
                     const Hyperparameters& h, const std::function<void(std::size_t, const ChainState&)>& visit);

void write_trace_header(std::ostream& os, std::size_t K);
void write_trace_row(std::ostream& os, std::size_t iter, const ChainState& s);
void write_trace_csv(std::ostream& os, const Trace& trace);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

McEstimate mc_one_step_expectation(const std::function<double(const ChainState&)>& drift, const ChainState& x,
                                   Kernel k, std::size_t n_rep, std::uint64_t seed, const Dataset& ds,
                                   const Hyperparameters& h);

}  // namespace rebound
