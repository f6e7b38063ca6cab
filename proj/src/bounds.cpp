#include "rebound/bounds.hpp"

#include "rebound/errors.hpp"
#include "rebound/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace rebound {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_rosenthal(const RosenthalInputs& in) {
  if (!(in.gamma > 0.0 && in.gamma < 1.0)) throw Error(ErrorKind::PreconditionViolated, "0 < gamma < 1", in.gamma);
  if (!(in.b >= 0.0) || !std::isfinite(in.b)) throw Error(ErrorKind::PreconditionViolated, "b >= 0", -in.b);
  if (!(in.epsilon > 0.0 && in.epsilon <= 1.0))
    throw Error(ErrorKind::PreconditionViolated, "0 < epsilon <= 1", in.epsilon);
  if (!(in.r > 0.0 && in.r < 1.0)) throw Error(ErrorKind::PreconditionViolated, "0 < r < 1", in.r);
  if (!(in.V0 >= 0.0)) throw Error(ErrorKind::PreconditionViolated, "V0 >= 0", -in.V0);
  const double floor = 2.0 * in.b / (1.0 - in.gamma);
  if (!(in.d_R > floor)) throw Error(ErrorKind::PreconditionViolated, "d_R > 2b/(1 - gamma)", floor - in.d_R);
}

}  // namespace

RosenthalConstants rosenthal_constants(const RosenthalInputs& in) {
  check_rosenthal(in);
  RosenthalConstants k;
  k.alpha = (1.0 + in.d_R) / (1.0 + 2.0 * in.b + in.gamma * in.d_R);
  k.U = 1.0 + 2.0 * (in.gamma * in.d_R + in.b);
  k.log_factor_coupling = in.r * std::log1p(-in.epsilon);
  k.log_factor_drift = in.r * std::log(k.U) - (1.0 - in.r) * std::log(k.alpha);
  k.log_drift_prefactor = std::log(1.0 + in.b / (1.0 - in.gamma) + in.V0);
  return k;
}

namespace {

double log_rosenthal_from(const RosenthalConstants& k, double n) {
  if (n == 0.0) return numerics::log_add_exp(0.0, k.log_drift_prefactor);
  const double coupling = std::isinf(k.log_factor_coupling) ? kNegInf : n * k.log_factor_coupling;
  return numerics::log_add_exp(coupling, n * k.log_factor_drift + k.log_drift_prefactor);
}

}  // namespace

double log_rosenthal_bound(const RosenthalInputs& in, double n) {
  if (!(n >= 0.0)) throw Error(ErrorKind::DomainError, "iteration count must be nonnegative");
  return log_rosenthal_from(rosenthal_constants(in), n);
}

double rosenthal_bound(const RosenthalInputs& in, double n) { return std::exp(log_rosenthal_bound(in, n)); }

RTConstants rt_constants(const RTInputs& in) {
  if (!(in.rho > 0.0 && in.rho < 1.0)) throw Error(ErrorKind::PreconditionViolated, "0 < rho < 1", in.rho);
  if (!(in.L > 0.0) || !std::isfinite(in.L)) throw Error(ErrorKind::PreconditionViolated, "L > 0", -in.L);
  if (!(in.epsilon > 0.0 && in.epsilon < 1.0))
    throw Error(ErrorKind::PreconditionViolated, "0 < epsilon < 1", in.epsilon);
  if (!(in.W0 >= 1.0)) throw Error(ErrorKind::PreconditionViolated, "W0 >= 1", 1.0 - in.W0);
  const double floor = in.L / (1.0 - in.rho) - 1.0;
  if (!(in.d_RT >= floor)) throw Error(ErrorKind::PreconditionViolated, "d_RT >= L/(1 - rho) - 1", floor - in.d_RT);

  RTConstants k;
  const double d = in.d_RT;
  k.kappa = in.rho + in.L / (1.0 + d);
  if (!(k.kappa < 1.0)) throw Error(ErrorKind::PreconditionViolated, "kappa < 1", k.kappa - 1.0);
  k.J = ((k.kappa * d - in.epsilon) * (1.0 + d) + in.L * d) / ((1.0 + d) * k.kappa);
  if (!(k.J >= 1.0)) throw Error(ErrorKind::JLessThanOne, "J >= 1", 1.0 - k.J);
  const double log_inv_kappa = -std::log(k.kappa);
  const double log_keep = std::log1p(-in.epsilon);
  k.zeta = std::log(0.5 * (in.L / (1.0 - in.rho) + in.W0)) / log_inv_kappa;
  k.eta = (std::log(k.J) - log_keep) / log_inv_kappa;
  k.log_beta_RT = std::log(k.kappa) * log_keep / (std::log(k.J) - log_keep);
  k.beta_RT = std::exp(k.log_beta_RT);
  k.k_floor = k.zeta + k.eta * (1.0 - in.epsilon) / in.epsilon;
  if (in.beta) {
    const double beta = *in.beta;
    if (!(beta >= 1.0 && beta < k.beta_RT))
      throw Error(ErrorKind::BetaOutOfRange, "1 <= beta < beta_RT", beta < 1.0 ? 1.0 - beta : beta - k.beta_RT);
  }
  return k;
}

namespace {

double log_rt_from(const RTInputs& in, const RTConstants& k, double kk) {
  const double np = kk - k.zeta;
  if (!(kk > k.k_floor))
    throw Error(ErrorKind::NPrimeTooSmall, "n' > eta(1 - eps)/eps", k.eta * (1.0 - in.epsilon) / in.epsilon - np);
  const double u = k.eta / np;
  const double shrink = std::log1p(u) / k.eta;  // log of (1 + eta/n')^(1/eta)
  double log_beta = in.beta ? std::log(*in.beta) : k.log_beta_RT - shrink;
  // The suggested beta can drop below one for short runs; one is the smallest admissible value.
  if (log_beta < 0.0) log_beta = 0.0;
  const double x = log_beta + std::log1p(-in.epsilon) - shrink;
  if (x >= 0.0) return kNegInf;
  const double first = std::log(-std::expm1(x));
  return first + std::log1p(np / k.eta) + (np / k.eta) * std::log1p(u) - np * log_beta;
}

}  // namespace

double log_rt_bound(const RTInputs& in, double k) { return log_rt_from(in, rt_constants(in), k); }

double rt_bound(const RTInputs& in, double k) { return std::exp(log_rt_bound(in, k)); }

RosenthalEvaluator::RosenthalEvaluator(RosenthalInputs in) : in_(in), k_(rosenthal_constants(in)) {}

double RosenthalEvaluator::log_bound(double n) const { return log_rosenthal_from(k_, n); }

std::vector<double> RosenthalEvaluator::log_geometric_factors() const {
  return {k_.log_factor_coupling, k_.log_factor_drift};
}

RTEvaluator::RTEvaluator(RTInputs in) : in_(in), k_(rt_constants(in)) {}

double RTEvaluator::log_bound(double k) const { return log_rt_from(in_, k_, k); }

double RTEvaluator::min_index() const { return std::floor(k_.k_floor) + 1.0; }

std::vector<double> RTEvaluator::log_geometric_factors() const {
  const double log_beta = in_.beta ? std::log(*in_.beta) : k_.log_beta_RT;
  return {-log_beta};
}

std::string integer_decimal(double n) {
  if (n < 9.2e18) return std::to_string(static_cast<unsigned long long>(n));
  char buf[400];
  std::snprintf(buf, sizeof buf, "%.0f", n);
  return buf;
}

BurninResult find_burnin(const BoundEvaluator& eval, double target) {
  if (!(target > 0.0 && target < 1.0)) throw Error(ErrorKind::DomainError, "target must lie in (0, 1)");
  BurninResult res;
  res.target = target;
  res.log_geometric_factors = eval.log_geometric_factors();
  for (std::size_t i = 0; i < res.log_geometric_factors.size(); ++i) {
    const double lf = res.log_geometric_factors[i];
    res.geometric_factors.push_back(std::exp(lf));
    if (!(lf < 0.0))
      throw Error(ErrorKind::NonContractive, "geometric factor " + std::to_string(i + 1) + " < 1", std::expm1(lf));
  }
  const double start = eval.min_index();
  // Compared on the reported scale so bound_at_n_star never exceeds the target by a rounding step.
  auto ok = [&](double n) { return std::exp(eval.log_bound(n)) <= target; };

  double lo = start;  // last index known to miss the target
  double hi = start;
  if (ok(start)) {
    res.n_star_value = start;
    res.n_star = integer_decimal(start);
    res.bound_at_n_star = std::exp(eval.log_bound(start));
    res.bound_before = std::numeric_limits<double>::quiet_NaN();
    return res;
  }
  for (double step = 1.0;; step *= 2.0) {
    hi = start + step;
    if (ok(hi)) break;
    lo = hi;
    if (step > 1e300) throw Error(ErrorKind::TargetUnreachable, "bound never reaches the target");
  }
  // Real bisection down to unit width (or adjacent doubles for huge counts).
  while (hi - lo > 1.0) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (ok(mid)) hi = mid;
    else lo = mid;
  }
  double n = std::ceil(hi);
  const double below = n - 1.0;
  if (below >= start && below > lo && ok(below)) n = below;
  res.n_star_value = n;
  res.n_star = integer_decimal(n);
  res.bound_at_n_star = std::exp(eval.log_bound(n));
  res.bound_before = n - 1.0 >= start ? std::exp(eval.log_bound(n - 1.0)) : std::numeric_limits<double>::quiet_NaN();
  return res;
}

}  // namespace rebound
