#include "rebound/errors.hpp"
#include "rebound/planning.hpp"
#include "rebound/reference_data.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rebound;

namespace {

ParameterPoint reference_point() {
  ParameterPoint p;
  p.gamma = 0.2596;
  p.phi1 = 0.5385;
  p.d = 3.0079;
  p.r = 0.0789;
  return p;
}

GridSpec singleton(const ParameterPoint& p) {
  GridSpec g;
  g.gamma = {p.gamma};
  g.phi1 = {p.phi1};
  g.d = {p.d};
  g.r = {p.r};
  return g;
}

std::vector<double> around(double centre, double spread, int points) {
  std::vector<double> v;
  for (int i = 0; i < points; ++i) v.push_back(centre * (1 + spread * (i - points / 2) / points));
  return v;
}

}  // namespace

TEST(EvaluatePoint, Setting2Row) {
  const Dataset ds = reference::five_group_data();
  const PointEvaluation ev = evaluate_point(ds, reference::five_group_prior(2, ds), SamplerKind::block,
                                            TheoremKind::rosenthal, reference_point(), 0.01);
  EXPECT_NEAR(ev.result.n_star_value, 3415, 0.02 * 3415);
  EXPECT_LE(ev.result.bound_at_n_star, 0.01);
  EXPECT_NEAR(ev.drift.V0, 0.0455, 1e-3);
}

TEST(EvaluatePoint, BalancedStartValue) {
  const Dataset ds = reference::five_group_data();
  const PointEvaluation ev = evaluate_point(ds, reference::five_group_prior(2, ds), SamplerKind::block,
                                            TheoremKind::rosenthal, reference_point(), 0.01);
  const double phi = 0.5385;
  double ss = 0;
  for (double y : ds.ybar) ss += (y - ds.ybar_grand) * (y - ds.ybar_grand);
  EXPECT_NEAR(ev.drift.V0, phi / (1 + phi) * ss, 1e-12);
}

TEST(EvaluatePoint, FreeOfS0) {
  const Dataset ds = reference::five_group_data();
  std::vector<double> bounds;
  std::vector<std::string> n;
  for (double s0 : {0.1, 1.0, 10.0}) {
    Hyperparameters h = reference::five_group_prior(2, ds);
    h.s0 = s0;
    const PointEvaluation ev = evaluate_point(ds, h, SamplerKind::block, TheoremKind::rosenthal, reference_point(), 0.01);
    bounds.push_back(ev.result.bound_at_n_star);
    n.push_back(ev.result.n_star);
  }
  EXPECT_EQ(n[0], n[1]);
  EXPECT_EQ(n[1], n[2]);
  EXPECT_NEAR(bounds[0], bounds[1], 1e-12);
  EXPECT_NEAR(bounds[1], bounds[2], 1e-12);
}

TEST(EvaluatePoint, RtRouteNeedsRadiusAboveDC) {
  const Dataset ds = reference::five_group_data();
  ParameterPoint p = reference_point();
  p.r = ParameterPoint::unset;
  p.d = 2.0;
  try {
    evaluate_point(ds, reference::five_group_prior(2, ds), SamplerKind::block, TheoremKind::roberts_tweedie, p,
                   0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("d_RT >= d_C"), std::string::npos);
  }
}

TEST(EvaluatePoint, RtRouteFinite) {
  const Dataset ds = reference::five_group_data();
  const Hyperparameters h = reference::five_group_prior(2, ds);
  ParameterPoint p = reference_point();
  p.r = ParameterPoint::unset;
  const PreparedDrift drift = prepare_drift(ds, h, SamplerKind::block, p);
  p.d = 1.5 * convert_drift(drift.gamma, drift.b).d_C;
  const PointEvaluation ev = evaluate_point(ds, h, SamplerKind::block, TheoremKind::roberts_tweedie, p, 0.01);
  EXPECT_TRUE(std::isfinite(ev.result.n_star_value));
  EXPECT_LE(ev.result.bound_at_n_star, 0.01);
}

TEST(GridOptimize, SingletonGrid) {
  const Dataset ds = reference::five_group_data();
  const Hyperparameters h = reference::five_group_prior(2, ds);
  const GridResult g = grid_optimize(ds, h, SamplerKind::block, TheoremKind::rosenthal, singleton(reference_point()));
  const PointEvaluation ev = evaluate_point(ds, h, SamplerKind::block, TheoremKind::rosenthal, reference_point(), 0.01);
  EXPECT_EQ(g.best.result.n_star, ev.result.n_star);
  EXPECT_EQ(g.feasible, 1u);
  EXPECT_DOUBLE_EQ(g.best.point.gamma, 0.2596);
}

TEST(GridOptimize, NeighbourhoodNeverWorse) {
  const Dataset ds = reference::five_group_data();
  const Hyperparameters h = reference::five_group_prior(2, ds);
  GridSpec g;
  g.gamma = around(0.2596, 0.3, 10);
  g.phi1 = around(0.5385, 0.3, 10);
  g.d = around(3.0079, 0.3, 10);
  g.r = around(0.0789, 0.3, 10);
  const GridResult res = grid_optimize(ds, h, SamplerKind::block, TheoremKind::rosenthal, g);
  EXPECT_EQ(res.feasible + res.infeasible, 10000u);
  EXPECT_LE(res.best.result.n_star_value, 1.05 * 3415);
}

TEST(GridOptimize, ExhaustiveOverSmallGrid) {
  const Dataset ds = reference::five_group_data();
  const Hyperparameters h = reference::five_group_prior(3, ds);
  GridSpec g;
  g.gamma = {0.3, 0.42, 0.5};
  g.phi1 = {0.25, 0.3, 0.4};
  g.d = {2.5, 2.8, 3.5};
  g.r = {0.03, 0.05, 0.08};
  const GridResult res = grid_optimize(ds, h, SamplerKind::block, TheoremKind::rosenthal, g);
  std::size_t feasible = 0;
  for (double gamma : g.gamma)
    for (double phi : g.phi1)
      for (double d : g.d)
        for (double r : g.r) {
          ParameterPoint p;
          p.gamma = gamma;
          p.phi1 = phi;
          p.d = d;
          p.r = r;
          try {
            const PointEvaluation ev = evaluate_point(ds, h, SamplerKind::block, TheoremKind::rosenthal, p, 0.01);
            ++feasible;
            EXPECT_LE(res.best.result.n_star_value, ev.result.n_star_value);
          } catch (const Error&) {
          }
        }
  EXPECT_EQ(res.feasible, feasible);
}

TEST(GridOptimize, AllInfeasible) {
  const Dataset ds = reference::five_group_data();
  GridSpec g = singleton(reference_point());
  g.gamma = {0.01};
  try {
    grid_optimize(ds, reference::five_group_prior(2, ds), SamplerKind::block, TheoremKind::rosenthal, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AllPointsInfeasible);
  }
}

TEST(GridOptimize, GibbsRelativeAxes) {
  const Dataset ds = reference::three_group_data();
  GridSpec g;
  g.gamma = {0.5, 0.7};
  g.c3 = {0.1, 0.2};
  g.c3_relative = true;
  g.d = {1.5, 3.0};
  g.d_relative = true;
  g.r = {0.01, 0.1};
  const GridResult res =
      grid_optimize(ds, reference::three_group_prior(), SamplerKind::gibbs, TheoremKind::rosenthal, g);
  EXPECT_GT(res.feasible, 0u);
  EXPECT_TRUE(std::isfinite(res.best.result.n_star_value));
}

TEST(GridValues, Spacing) {
  const auto lin = grid_values(0, 1, 5, false);
  EXPECT_EQ(lin, (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
  const auto lg = grid_values(1e-3, 1, 4, true);
  EXPECT_NEAR(lg[1], 1e-2, 1e-15);
  EXPECT_DOUBLE_EQ(lg.back(), 1.0);
}
