#pragma once

#include "rebound/bounds.hpp"
#include "rebound/certificates.hpp"
#include "rebound/model.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rebound {

enum class SamplerKind { block, gibbs };
enum class TheoremKind { rosenthal, roberts_tweedie };

const char* sampler_name(SamplerKind s);
const char* theorem_name(TheoremKind t);

// One choice of the free bound parameters. Unused fields stay NaN. For the
// block sampler a NaN phi2 selects the balanced drift with phi = phi1.
struct ParameterPoint {
  static constexpr double unset = std::numeric_limits<double>::quiet_NaN();
  double gamma = unset;
  double phi1 = unset;
  double phi2 = unset;
  double c3 = unset;
  double d = unset;  // d_R for Rosenthal, d_RT for the W-drift route
  double r = unset;
  double a = 1.0;
  std::optional<double> beta;
};

struct PreparedDrift {
  std::optional<BlockDriftCertificate> block;
  std::optional<GibbsDriftCertificate> gibbs;
  double gamma = 0;
  double b = 0;
  double phi1 = 0, phi2 = 0;
  double c3 = 0;
  ChainState start;
  double V0 = 0;
};

PreparedDrift prepare_drift(const Dataset& ds, const Hyperparameters& h, SamplerKind sampler,
                            const ParameterPoint& p, double rho1_slack = 1e-5);

struct PointEvaluation {
  ParameterPoint point;
  SamplerKind sampler = SamplerKind::block;
  TheoremKind theorem = TheoremKind::rosenthal;
  PreparedDrift drift;
  MinorizationCertificate minorization;
  std::optional<GeometricDriftCertificate> geometric;
  std::optional<RosenthalInputs> rosenthal;
  std::optional<RosenthalConstants> rosenthal_k;
  std::optional<RTInputs> rt;
  std::optional<RTConstants> rt_k;
  BurninResult result;
};

PointEvaluation evaluate_prepared(const Dataset& ds, const Hyperparameters& h, TheoremKind theorem,
                                  const PreparedDrift& drift, const ParameterPoint& p, double target_tv);
PointEvaluation evaluate_point(const Dataset& ds, const Hyperparameters& h, SamplerKind sampler, TheoremKind theorem,
                               const ParameterPoint& p, double target_tv, double rho1_slack = 1e-5);

struct GridSpec {
  std::vector<double> gamma;
  std::vector<double> phi1;  // block only
  std::vector<double> phi2;  // block only; empty selects the balanced drift
  std::vector<double> c3;    // gibbs only
  std::vector<double> d;
  std::vector<double> r;  // Rosenthal only
  std::vector<double> a{1.0};  // W-drift route only
  // d values are multiples of the smallest admissible radius for the drift pair.
  bool d_relative = false;
  // c3 values are fractions of min(b1, b2).
  bool c3_relative = false;
  double target_tv = 0.01;
  double rho1_slack = 1e-5;
};

struct GridResult {
  PointEvaluation best;
  std::size_t feasible = 0;
  std::size_t infeasible = 0;
  std::map<std::string, std::size_t> infeasible_reasons;
};

GridResult grid_optimize(const Dataset& ds, const Hyperparameters& h, SamplerKind sampler, TheoremKind theorem,
                         const GridSpec& grid);

// Ordered grid values; `log_scale` spaces points geometrically.
std::vector<double> grid_values(double lo, double hi, std::size_t points, bool log_scale);

enum class SweepParam { a2b2, a1b1 };

struct SweepRow {
  double value = 0;
  bool feasible = false;
  double epsilon = 0;
  std::string n_star;
  double n_star_value = 0;
  double bound_at_n_star = 0;
};

std::vector<SweepRow> run_sweep(const Dataset& ds, const Hyperparameters& base, SamplerKind sampler,
                                TheoremKind theorem, const GridSpec& grid, SweepParam param,
                                const std::vector<double>& values);

}  // namespace rebound
