#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rebound {

struct RosenthalInputs {
  double gamma = 0;
  double b = 0;
  double epsilon = 0;
  double d_R = 0;
  double r = 0;
  double V0 = 0;
};

struct RosenthalConstants {
  double alpha = 0;
  double U = 0;
  double log_factor_coupling = 0;  // log of (1 - eps)^r
  double log_factor_drift = 0;     // log of U^r / alpha^(1 - r)
  double log_drift_prefactor = 0;  // log of 1 + b / (1 - gamma) + V0
};

RosenthalConstants rosenthal_constants(const RosenthalInputs& in);
double log_rosenthal_bound(const RosenthalInputs& in, double n);
double rosenthal_bound(const RosenthalInputs& in, double n);

struct RTInputs {
  double rho = 0;
  double L = 0;
  double epsilon = 0;
  double d_RT = 0;
  double W0 = 1;
  std::optional<double> beta;
};

struct RTConstants {
  double kappa = 0;
  double J = 0;
  double zeta = 0;
  double eta = 0;
  double beta_RT = 0;
  double log_beta_RT = 0;
  // Smallest real k allowed by the n' condition (exclusive).
  double k_floor = 0;
};

RTConstants rt_constants(const RTInputs& in);
double log_rt_bound(const RTInputs& in, double k);
double rt_bound(const RTInputs& in, double k);

// Abstract view of a bound that decays in the iteration count.
class BoundEvaluator {
public:
  virtual ~BoundEvaluator() = default;
  virtual double log_bound(double n) const = 0;
  // Smallest integer n at which the bound is defined.
  virtual double min_index() const { return 0.0; }
  // Logs of the per-step contraction rates; all must be negative.
  virtual std::vector<double> log_geometric_factors() const = 0;
};

class RosenthalEvaluator final : public BoundEvaluator {
public:
  explicit RosenthalEvaluator(RosenthalInputs in);
  double log_bound(double n) const override;
  std::vector<double> log_geometric_factors() const override;
  const RosenthalConstants& constants() const { return k_; }

private:
  RosenthalInputs in_;
  RosenthalConstants k_;
};

class RTEvaluator final : public BoundEvaluator {
public:
  explicit RTEvaluator(RTInputs in);
  double log_bound(double k) const override;
  double min_index() const override;
  std::vector<double> log_geometric_factors() const override;
  const RTConstants& constants() const { return k_; }

private:
  RTInputs in_;
  RTConstants k_;
};

struct BurninResult {
  std::string n_star;       // exact decimal
  double n_star_value = 0;  // same number as a double
  double bound_at_n_star = 0;
  // Bound one step earlier; NaN when n* is the first admissible index.
  double bound_before = 0;
  std::vector<double> geometric_factors;
  std::vector<double> log_geometric_factors;
  double target = 0;
};

BurninResult find_burnin(const BoundEvaluator& eval, double target_tv);

// Decimal rendering of a nonnegative integer-valued double.
std::string integer_decimal(double n);

}  // namespace rebound
