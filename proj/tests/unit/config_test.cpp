#include "rebound/commands.hpp"
#include "rebound/config.hpp"
#include "rebound/errors.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace rebound;

namespace {

const char* kSummaries = R"("data": {"summaries": {"m": [10,10,10,10,10],
  "ybar": [-0.80247,-1.0014,-0.69090,-1.1413,-1.0125], "sse": 32.990}})";

std::string config(const std::string& extra) {
  return std::string("{") + kSummaries + R"(, "hyper": {"a1": 2.5, "b1": 1, "a2": 1, "b2": 1, "m0": "ybar"})" +
         extra + "}";
}

const char* kFixedPoint = R"(, "fixed": {"gamma": 0.2596, "phi": 0.5385, "d": 3.0079, "r": 0.0789})";

bool defaulted(const RunConfig& c, const std::string& name) {
  return std::find(c.defaulted.begin(), c.defaulted.end(), name) != c.defaulted.end();
}

ErrorKind kind_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::IoError;
}

}  // namespace

TEST(Config, MinimalDefaults) {
  const RunConfig c = parse_config(config(R"(, "target_tv": 0.01)"));
  EXPECT_DOUBLE_EQ(c.a, 1.0);
  EXPECT_DOUBLE_EQ(c.rho1_slack, 1e-5);
  EXPECT_EQ(c.seed, 0u);
  EXPECT_TRUE(defaulted(c, "a"));
  EXPECT_TRUE(defaulted(c, "seed"));
  EXPECT_TRUE(defaulted(c, "rho1_slack"));
  EXPECT_TRUE(defaulted(c, "grid"));
  EXPECT_FALSE(defaulted(c, "target_tv"));
}

TEST(Config, FixedAndGridExclusive) {
  const std::string text =
      config(std::string(kFixedPoint) + R"(, "grid": {"gamma": [0.2], "phi": [0.5], "d": [3], "r": [0.05]})");
  try {
    parse_config(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    EXPECT_NE(std::string(e.what()).find("fixed"), std::string::npos);
  }
}

TEST(Config, ParseErrorHasLine) {
  try {
    parse_config("{\n  \"seed\": 1,\n  \"sampler\": \n}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Config, UnknownFieldNamed) {
  try {
    parse_config(config(R"(, "sampl": "block")"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    EXPECT_NE(std::string(e.what()).find("sampl"), std::string::npos);
  }
}

TEST(Config, TargetRange) { EXPECT_EQ(kind_of(config(R"(, "target_tv": 1.5)")), ErrorKind::ValidationError); }

TEST(Config, Setting3Echo) {
  const std::string text = std::string("{") + kSummaries +
                           R"(, "hyper": {"a1": 0.1, "b1": 0.1, "a2": 0.1, "b2": 0.1, "m0": "ybar"},
  "fixed": {"gamma": 0.4183, "phi": 0.3059, "d": 2.8351, "r": 0.0512})" +
                           "}";
  const RunConfig c = parse_config(text);
  const Dataset ds = resolve_dataset(c);
  const Hyperparameters h = resolve_hyper(c, ds);
  EXPECT_DOUBLE_EQ(h.a1, 0.1);
  EXPECT_DOUBLE_EQ(h.b1, 0.1);
  EXPECT_DOUBLE_EQ(h.a2, 0.1);
  EXPECT_DOUBLE_EQ(h.b2, 0.1);
  EXPECT_DOUBLE_EQ(h.m0, ds.ybar_grand);
  EXPECT_TRUE(c.m0_is_ybar);
  const std::string report = burnin_report(c, ds);
  EXPECT_NE(report.find("\"m0_source\": \"ybar\""), std::string::npos) << report.substr(0, 600);
}

TEST(Config, GridAxisForms) {
  const RunConfig c = parse_config(config(
      R"(, "grid": {"gamma": {"lo": 0.2, "hi": 0.4, "points": 3}, "phi": 0.5, "d": [3, 4], "r": {"lo": 0.01, "hi": 1, "points": 3, "scale": "log"}})"));
  ASSERT_TRUE(c.grid);
  EXPECT_EQ(c.grid->gamma.size(), 3u);
  EXPECT_EQ(c.grid->phi1, std::vector<double>{0.5});
  EXPECT_NEAR(c.grid->r[1], 0.1, 1e-15);
}

TEST(Config, CsvData) {
  const auto dir = std::filesystem::temp_directory_path() / "rebound_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "d.csv") << "group,value\n1,1\n1,3\n2,2\n2,4\n3,0\n3,2\n";
    std::ofstream(dir / "gap.csv") << "group,value\n1,1\n1,3\n3,2\n3,4\n4,0\n4,2\n";
  }
  const Dataset ds = read_data_csv((dir / "d.csv").string());
  EXPECT_EQ(ds.K(), 3u);
  EXPECT_DOUBLE_EQ(ds.sse, 6);
  EXPECT_THROW(read_data_csv((dir / "gap.csv").string()), Error);
  try {
    read_data_csv((dir / "missing.csv").string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IoError);
  }
  const RunConfig c = parse_config(R"({"data": {"csv": "d.csv"}, "hyper": {"a1": 2, "b1": 1, "a2": 2, "b2": 1, "m0": 0}})", dir.string());
  EXPECT_EQ(resolve_dataset(c).M, 6);
  std::filesystem::remove_all(dir);
}

TEST(Commands, ReportIsDeterministic) {
  const RunConfig c = parse_config(config(kFixedPoint));
  const Dataset ds = resolve_dataset(c);
  const std::string a = burnin_report(c, ds);
  EXPECT_EQ(a, burnin_report(c, ds));
  for (const char* section : {"\"inputs\"", "\"constants\"", "\"certificates\"", "\"result\""})
    EXPECT_NE(a.find(section), std::string::npos) << section;
}

TEST(Commands, StatsRoundTrip) {
  const Dataset raw = Dataset::from_groups({{0.3, -0.4, 1.2, 0.8}, {0.1, 0.5, -0.2, 0.9}, {1.4, 1.1, 0.6, 0.7}});
  const std::string stats = stats_report(raw);
  const auto j = nlohmann::json::parse(stats);
  const Dataset back = Dataset::from_summaries(j["summaries"]["m"].get<std::vector<int>>(),
                                               j["summaries"]["ybar"].get<std::vector<double>>(),
                                               j["summaries"]["sse"].get<double>());
  const RunConfig c = parse_config(config(R"(, "fixed": {"gamma": 0.6, "phi": 0.5, "d": 8, "r": 0.05})"));
  const auto a = nlohmann::json::parse(burnin_report(c, raw));
  const auto b = nlohmann::json::parse(burnin_report(c, back));
  const double ba = a["result"]["bound_at_n_star"].get<double>();
  const double bb = b["result"]["bound_at_n_star"].get<double>();
  EXPECT_EQ(a["result"]["n_star"], b["result"]["n_star"]);
  EXPECT_NEAR(ba, bb, 1e-12 * ba);
}

TEST(Commands, SweepHeader) {
  const RunConfig c = parse_config(config(R"(, "grid": {"gamma": [0.2596], "phi": [0.5385], "d": [3.0079], "r": [0.0789]})"));
  const std::string csv = sweep_csv(c, resolve_dataset(c), SweepParam::a2b2, {1.0, 0.5});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "param_value,epsilon,n_star,bound_at_n_star");
}
