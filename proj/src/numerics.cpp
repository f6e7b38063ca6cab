#include "rebound/numerics.hpp"

#include "rebound/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace rebound::numerics {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::DomainError, std::string(what) + " must be finite");
}

}  // namespace

void ToleranceConfig::validate() const {
  for (double v : {rel_tol, quad_tol, opt_tol}) {
    if (!(v > 0.0 && v < 1e-3))
      throw Error(ErrorKind::DomainError, "tolerances must lie in (0, 1e-3)");
  }
}

double reg_lower_inc_gamma(double alpha, double x) {
  if (!(alpha > 0.0) || !(x >= 0.0) || std::isnan(x))
    throw Error(ErrorKind::DomainError, "incomplete gamma needs alpha > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(alpha, x);
}

double reg_upper_inc_gamma(double alpha, double x) {
  if (!(alpha > 0.0) || !(x >= 0.0) || std::isnan(x))
    throw Error(ErrorKind::DomainError, "incomplete gamma needs alpha > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(alpha, x);
}

double std_normal_cdf(double x) {
  if (std::isnan(x)) throw Error(ErrorKind::DomainError, "normal cdf of NaN");
  return 0.5 * boost::math::erfc(-x / std::numbers::sqrt2);
}

double log_std_normal_cdf(double x) {
  if (std::isnan(x)) throw Error(ErrorKind::DomainError, "normal cdf of NaN");
  if (x > -30.0) return std::log(std_normal_cdf(x));
  // Mills-ratio expansion; the first omitted term is below 1e-15 relative here.
  const double z2 = 1.0 / (x * x);
  const double series = 1.0 - z2 + 3.0 * z2 * z2 - 15.0 * z2 * z2 * z2 + 105.0 * z2 * z2 * z2 * z2;
  return -0.5 * x * x - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double log_gamma_density(double alpha, double rate, double x) {
  if (!(alpha > 0.0) || !(rate > 0.0) || !(x > 0.0))
    throw Error(ErrorKind::DomainError, "gamma density needs positive shape, rate and argument");
  require_finite(x, "gamma density argument");
  return alpha * std::log(rate) - std::lgamma(alpha) + (alpha - 1.0) * std::log(x) - rate * x;
}

double log_normal_density(double mean, double var, double x) {
  if (!(var > 0.0)) throw Error(ErrorKind::DomainError, "normal density needs positive variance");
  const double z = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - 0.5 * z * z / var;
}

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              const ToleranceConfig& tol) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw Error(ErrorKind::InvalidBracket, "minimize_scalar needs a finite bracket with lo < hi");
  tol.validate();
  std::uintmax_t max_iter = 500;
  auto [x, fx] = boost::math::tools::brent_find_minima(f, lo, hi, std::numeric_limits<double>::digits,
                                                       max_iter);
  if (max_iter >= 500) throw Error(ErrorKind::NonConvergence, "Brent minimizer hit its iteration cap");
  // Brent never evaluates the bracket ends, so compare against them explicitly.
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    if (fe < fx) {
      x = edge;
      fx = fe;
    }
  }
  return {x, fx};
}

double quadrature_1d(const std::function<double(double)>& f, double lo, double hi,
                     const ToleranceConfig& tol) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
    throw Error(ErrorKind::InvalidBracket, "quadrature needs lo < hi");
  tol.validate();
  double err = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, lo, hi, 15, tol.quad_tol, &err, &l1);
  if (!std::isfinite(value)) throw Error(ErrorKind::NonConvergence, "quadrature produced a non-finite value");
  if (err > std::max(tol.quad_tol * 100.0 * std::max(1.0, l1), 1e-300) && err > 1e-6 * l1)
    throw Error(ErrorKind::NonConvergence, "quadrature error estimate too large");
  return value;
}

}  // namespace rebound::numerics
