#pragma once

#include "rebound/model.hpp"
#include "rebound/planning.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rebound {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t violations = 0;
  // Largest observed excess over the allowed side of the inequality (<= 0 when all checks pass).
  double worst_margin = 0;
  std::string detail;
};

struct CertificateCase {
  std::string label;
  Dataset ds;
  Hyperparameters h;
  SamplerKind sampler = SamplerKind::block;
  ParameterPoint point;  // gamma plus phi or c3; d is the minorization radius
};

struct ValidationContext {
  std::vector<CertificateCase> drift_cases;
  CertificateCase block_case;
  CertificateCase gibbs_case;
  std::uint64_t seed = 0;
  std::size_t drift_states = 100;
  std::size_t drift_draws = 10000;
  std::size_t moment_draws = 1000000;
  double rho1_slack = 1e-5;
};

ValidationContext default_validation_context(std::uint64_t seed = 0);

const std::vector<std::string>& suite_names();

// `suite` is one of suite_names() or "all".
std::vector<SuiteResult> run_validation(const ValidationContext& ctx, const std::string& suite = "all");

SuiteResult validate_drift_mc(const ValidationContext& ctx);
SuiteResult validate_block_minorization(const ValidationContext& ctx);
SuiteResult validate_gibbs_minorization(const ValidationContext& ctx);
SuiteResult validate_gamma_infimum(const ValidationContext& ctx);
SuiteResult validate_ratio_inequality(const ValidationContext& ctx);
SuiteResult validate_drift_conversion(const ValidationContext& ctx);
SuiteResult validate_containment(const ValidationContext& ctx);
SuiteResult validate_gibbs_epsilon_quadrature(const ValidationContext& ctx);
SuiteResult validate_xi_moments(const ValidationContext& ctx);

// Gibbs minorization constant recomputed by nested numerical integration of
// the minorizing density, returned as a log.
double log_gibbs_epsilon_by_quadrature(const Dataset& ds, const Hyperparameters& h, double c3, double d);

}  // namespace rebound
