#include "rebound/bounds.hpp"
#include "rebound/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rebound;

namespace {

RosenthalInputs setting2() { return {0.2596, 0.8729, 0.0171, 3.0079, 0.0789, 0.0455}; }

// Bound that halves every step from a chosen starting value.
class Halving final : public BoundEvaluator {
public:
  explicit Halving(double start) : log_start_(std::log(start)) {}
  double log_bound(double n) const override { return log_start_ - n * std::log(2.0); }
  std::vector<double> log_geometric_factors() const override { return {-std::log(2.0)}; }

private:
  double log_start_;
};

}  // namespace

TEST(Rosenthal, Setting2Value) { EXPECT_NEAR(rosenthal_bound(setting2(), 3415), 0.00999, 5e-4); }

TEST(Rosenthal, ValueAtZero) {
  const RosenthalInputs in = setting2();
  EXPECT_NEAR(rosenthal_bound(in, 0), 1 + (1 + in.b / (1 - in.gamma) + in.V0), 1e-14);
}

TEST(Rosenthal, Constants) {
  const RosenthalConstants k = rosenthal_constants(setting2());
  EXPECT_NEAR(k.alpha, 1.1364, 1e-4);
  EXPECT_NEAR(k.U, 4.3078, 1e-4 * 4.3078);
  EXPECT_NEAR(k.U, 1 + 2 * (0.2596 * 3.0079 + 0.8729), 1e-14);
  EXPECT_NEAR(std::exp(k.log_factor_drift), 0.99743, 1e-4);
}

TEST(Rosenthal, Preconditions) {
  RosenthalInputs in = setting2();
  in.d_R = 2 * in.b / (1 - in.gamma);
  EXPECT_THROW(rosenthal_constants(in), Error);
  in = setting2();
  in.r = 1.0;
  EXPECT_THROW(rosenthal_constants(in), Error);
}

TEST(Rosenthal, NonincreasingInN) {
  for (double r : {0.01, 0.0789, 0.3}) {
    RosenthalInputs in = setting2();
    in.r = r;
    const RosenthalConstants k = rosenthal_constants(in);
    if (!(k.log_factor_drift < 0)) continue;
    double prev = rosenthal_bound(in, 0);
    for (double n = 1; n < 1e6; n *= 1.7) {
      const double v = rosenthal_bound(in, n);
      EXPECT_LE(v, prev);
      prev = v;
    }
  }
}

TEST(RobertsTweedie, SyntheticConstants) {
  RTInputs in{0.5, 1.0, 0.1, 5.0, 2.0, std::nullopt};
  const RTConstants k = rt_constants(in);
  EXPECT_NEAR(k.kappa, 0.5 + 1.0 / 6, 1e-15);
  EXPECT_NEAR(k.J, 6.1, 1e-12);
  EXPECT_GT(k.beta_RT, 1.0);
  const double v = rt_bound(in, k.k_floor + 500);
  EXPECT_GT(v, 0);
  EXPECT_LT(v, rt_bound(in, k.k_floor + 100));
}

TEST(RobertsTweedie, Guards) {
  EXPECT_EQ([] {
    try {
      rt_constants({0.5, 0.1, 0.1, 0.5, 1.0, std::nullopt});
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::IoError;
  }(), ErrorKind::JLessThanOne);
  RTInputs in{0.5, 1.0, 0.1, 5.0, 2.0, std::nullopt};
  const RTConstants k = rt_constants(in);
  EXPECT_THROW(rt_bound(in, k.k_floor - 1), Error);
  in.beta = k.beta_RT * 1.01;
  EXPECT_THROW(rt_constants(in), Error);
  in = {0.5, 1.0, 0.1, 0.5, 2.0, std::nullopt};
  EXPECT_THROW(rt_constants(in), Error);  // d_RT below L/(1 - rho) - 1
}

TEST(FindBurnin, Setting2) {
  const BurninResult r = find_burnin(RosenthalEvaluator(setting2()), 0.01);
  EXPECT_NEAR(r.n_star_value, 3415, 0.02 * 3415);
  EXPECT_LE(r.bound_at_n_star, 0.01);
  EXPECT_GT(r.bound_before, 0.01);
  EXPECT_EQ(r.n_star, std::to_string(static_cast<long long>(r.n_star_value)));
}

TEST(FindBurnin, Setting1) {
  const BurninResult r = find_burnin(RosenthalEvaluator({0.2596, 5.43699, 3.1e-7, 15.997, 0.0188, 0.0}), 0.01);
  EXPECT_NEAR(r.n_star_value, 7.94e8, 0.05 * 7.94e8);
}

TEST(FindBurnin, AlreadySatisfied) {
  const BurninResult r = find_burnin(Halving(0.005), 0.01);
  EXPECT_EQ(r.n_star, "0");
  EXPECT_TRUE(std::isnan(r.bound_before));
}

TEST(FindBurnin, ExactBracket) {
  for (double start : {1.0, 3.7, 1e6, 1e300}) {
    const BurninResult r = find_burnin(Halving(start), 1e-3);
    const double exact = std::ceil(std::log2(start / 1e-3) - 1e-12);
    EXPECT_EQ(r.n_star_value, exact) << start;
  }
}

TEST(FindBurnin, BracketingOverInputs) {
  for (double eps : {0.3, 0.01, 1e-5, 1e-12})
    for (double r : {0.01, 0.05, 0.2}) {
      RosenthalInputs in = setting2();
      in.epsilon = eps;
      in.r = r;
      RosenthalEvaluator ev(in);
      bool contractive = true;
      for (double lf : ev.log_geometric_factors()) contractive = contractive && lf < 0;
      if (!contractive) {
        EXPECT_THROW(find_burnin(ev, 0.01), Error);
        continue;
      }
      const BurninResult res = find_burnin(ev, 0.01);
      EXPECT_LE(res.bound_at_n_star, 0.01);
      if (res.n_star_value >= 1 && res.n_star_value < 9e15) {
        EXPECT_GT(res.bound_before, 0.01);
      }
    }
}

TEST(FindBurnin, HugeCounts) {
  RosenthalInputs in{0.41528, 7.5517, 1e-40, 26.010, 0.0009, 4.7};
  const BurninResult r = find_burnin(RosenthalEvaluator(in), 0.01);
  EXPECT_TRUE(std::isfinite(r.n_star_value));
  EXPECT_GT(r.n_star_value, 1e40);
  EXPECT_LE(r.bound_at_n_star, 0.01);
  EXPECT_EQ(r.n_star.find_first_not_of("0123456789"), std::string::npos);
}

TEST(FindBurnin, NonContractive) {
  RosenthalInputs in = setting2();
  in.r = 0.5;
  try {
    find_burnin(RosenthalEvaluator(in), 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonContractive);
    EXPECT_TRUE(e.has_slack());
  }
}

TEST(IntegerDecimal, Formats) {
  EXPECT_EQ(integer_decimal(0), "0");
  EXPECT_EQ(integer_decimal(3412), "3412");
  EXPECT_EQ(integer_decimal(1e20), "100000000000000000000");
}
