#pragma once

#include <functional>

namespace rebound::numerics {

struct ToleranceConfig {
  double rel_tol = 1e-12;
  double quad_tol = 1e-10;
  double opt_tol = 1e-9;

  void validate() const;
};

// Regularized lower incomplete gamma P(alpha, x). The Gamma(alpha, rate)
// CDF at t is P(alpha, rate * t).
double reg_lower_inc_gamma(double alpha, double x);
// Complement Q(alpha, x) = 1 - P(alpha, x), accurate when P is close to one.
double reg_upper_inc_gamma(double alpha, double x);

double std_normal_cdf(double x);
double log_std_normal_cdf(double x);
double std_normal_pdf(double x);

double log_gamma_density(double alpha, double rate, double x);
double log_normal_density(double mean, double var, double x);

// log(exp(a) + exp(b)) without overflow; either argument may be -inf.
double log_add_exp(double a, double b);

struct ScalarMinimum {
  double x;
  double f;
};

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              const ToleranceConfig& tol = {});

// Adaptive Gauss-Kronrod. Infinite endpoints are mapped onto a finite
// interval by the usual rational substitution.
double quadrature_1d(const std::function<double(double)>& f, double lo, double hi,
                     const ToleranceConfig& tol = {});

}  // namespace rebound::numerics
