#include "rebound/config.hpp"

#include "rebound/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rebound {

using Json = nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ValidationError, "field '" + field + "': " + what);
}

void only_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items()) {
    if (!ok.count(k)) bad_field(where.empty() ? k : where + "." + k, "unknown field");
  }
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number");
  return j.get<double>();
}

std::vector<double> axis(const Json& j, const std::string& field) {
  if (j.is_array()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
    if (out.empty()) bad_field(field, "grid axis is empty");
    return out;
  }
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_object()) bad_field(field, "expected a list of values or a {lo, hi, points} range");
  only_keys(j, field, {"lo", "hi", "points", "scale"});
  if (!j.contains("lo") || !j.contains("hi") || !j.contains("points")) bad_field(field, "range needs lo, hi and points");
  const double lo = number(j["lo"], field + ".lo");
  const double hi = number(j["hi"], field + ".hi");
  if (!j["points"].is_number_unsigned()) bad_field(field + ".points", "expected a positive integer");
  const auto pts = j["points"].get<std::size_t>();
  bool log_scale = false;
  if (j.contains("scale")) {
    const auto s = j["scale"].get<std::string>();
    if (s == "log") log_scale = true;
    else if (s != "linear") bad_field(field + ".scale", "expected 'linear' or 'log'");
  }
  try {
    return grid_values(lo, hi, pts, log_scale);
  } catch (const Error& e) {
    bad_field(field, e.what());
  }
}

Dataset summaries_from(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("m") || !j.contains("ybar") || !j.contains("sse"))
    bad_field(field, "summaries need m, ybar and sse");
  std::vector<int> m;
  for (const auto& v : j["m"]) {
    if (!v.is_number_integer()) bad_field(field + ".m", "counts must be integers");
    m.push_back(v.get<int>());
  }
  std::vector<double> ybar;
  for (const auto& v : j["ybar"]) ybar.push_back(number(v, field + ".ybar"));
  return Dataset::from_summaries(std::move(m), std::move(ybar), number(j["sse"], field + ".sse"));
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

GridSpec default_grid(SamplerKind sampler, TheoremKind theorem) {
  GridSpec g;
  g.gamma = grid_values(0.05, 0.95, 37, false);
  if (sampler == SamplerKind::block) {
    g.phi1 = grid_values(0.05, 3.0, 20, true);
  } else {
    g.c3 = grid_values(0.05, 0.95, 19, false);
    g.c3_relative = true;
  }
  g.d_relative = true;
  if (theorem == TheoremKind::rosenthal) {
    g.d = grid_values(1.001, 4.0, 20, true);
    g.r = grid_values(1e-3, 0.5, 24, true);
  } else {
    g.d = grid_values(1.0, 4.0, 20, true);
    g.a = {1.0};
  }
  return g;
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw Error(ErrorKind::ParseError,
                "config parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "config parse error at line 1: top level must be an object");
  only_keys(j, "", {"data", "hyper", "sampler", "theorem", "target_tv", "fixed", "grid", "seed", "output", "a",
                    "rho1_slack", "iterations", "sweep"});

  RunConfig cfg;
  auto defaulted = [&](const char* name) { cfg.defaulted.emplace_back(name); };

  if (!j.contains("data")) bad_field("data", "required");
  const Json& data = j["data"];
  if (data.is_object() && data.contains("csv")) {
    const auto p = std::filesystem::path(data["csv"].get<std::string>());
    cfg.data_csv = (p.is_relative() ? std::filesystem::path(base_dir) / p : p).string();
  } else if (data.is_object() && data.contains("summaries")) {
    cfg.data_inline = summaries_from(data["summaries"], "data.summaries");
  } else {
    bad_field("data", "expected {\"csv\": path} or {\"summaries\": {...}}");
  }

  if (!j.contains("hyper")) bad_field("hyper", "required");
  const Json& hy = j["hyper"];
  if (!hy.is_object()) bad_field("hyper", "expected an object");
  only_keys(hy, "hyper", {"a1", "b1", "a2", "b2", "m0", "s0"});
  for (const char* k : {"a1", "b1", "a2", "b2", "m0"})
    if (!hy.contains(k)) bad_field(std::string("hyper.") + k, "required");
  cfg.hyper.a1 = number(hy["a1"], "hyper.a1");
  cfg.hyper.b1 = number(hy["b1"], "hyper.b1");
  cfg.hyper.a2 = number(hy["a2"], "hyper.a2");
  cfg.hyper.b2 = number(hy["b2"], "hyper.b2");
  if (hy["m0"].is_string()) {
    if (hy["m0"].get<std::string>() != "ybar") bad_field("hyper.m0", "expected a number or \"ybar\"");
    cfg.m0_is_ybar = true;
  } else {
    cfg.hyper.m0 = number(hy["m0"], "hyper.m0");
  }
  if (hy.contains("s0")) cfg.hyper.s0 = number(hy["s0"], "hyper.s0");
  else defaulted("hyper.s0");
  try {
    cfg.hyper.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, std::string("field 'hyper': ") + e.what());
  }

  if (j.contains("sampler")) {
    const auto s = j["sampler"].get<std::string>();
    if (s == "block") cfg.sampler = SamplerKind::block;
    else if (s == "gibbs") cfg.sampler = SamplerKind::gibbs;
    else bad_field("sampler", "expected 'block' or 'gibbs'");
  } else {
    defaulted("sampler");
  }
  if (j.contains("theorem")) {
    const auto s = j["theorem"].get<std::string>();
    if (s == "rosenthal") cfg.theorem = TheoremKind::rosenthal;
    else if (s == "roberts-tweedie") cfg.theorem = TheoremKind::roberts_tweedie;
    else bad_field("theorem", "expected 'rosenthal' or 'roberts-tweedie'");
  } else {
    defaulted("theorem");
  }
  if (j.contains("target_tv")) cfg.target_tv = number(j["target_tv"], "target_tv");
  else defaulted("target_tv");
  if (!(cfg.target_tv > 0.0 && cfg.target_tv < 1.0)) bad_field("target_tv", "must lie in (0, 1)");

  if (j.contains("a")) cfg.a = number(j["a"], "a");
  else defaulted("a");
  if (!(cfg.a > 0.0)) bad_field("a", "must be positive");
  if (j.contains("rho1_slack")) cfg.rho1_slack = number(j["rho1_slack"], "rho1_slack");
  else defaulted("rho1_slack");
  if (!(cfg.rho1_slack > 0.0)) bad_field("rho1_slack", "must be positive");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad_field("seed", "expected a nonnegative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  } else {
    defaulted("seed");
  }
  if (j.contains("iterations")) {
    if (!j["iterations"].is_number_unsigned()) bad_field("iterations", "expected a nonnegative integer");
    cfg.iterations = j["iterations"].get<std::size_t>();
  } else {
    defaulted("iterations");
  }
  if (j.contains("output")) cfg.output = j["output"].get<std::string>();

  if (j.contains("fixed") && j.contains("grid")) bad_field("fixed", "fixed parameters and grid are mutually exclusive");
  if (j.contains("fixed")) {
    const Json& f = j["fixed"];
    only_keys(f, "fixed", {"gamma", "phi", "phi1", "phi2", "c3", "d", "r", "a", "beta"});
    ParameterPoint p;
    if (!f.contains("gamma")) bad_field("fixed.gamma", "required");
    p.gamma = number(f["gamma"], "fixed.gamma");
    if (!f.contains("d")) bad_field("fixed.d", "required");
    p.d = number(f["d"], "fixed.d");
    if (cfg.sampler == SamplerKind::block) {
      if (f.contains("phi") && (f.contains("phi1") || f.contains("phi2")))
        bad_field("fixed.phi", "give either phi or phi1/phi2");
      if (f.contains("phi")) {
        p.phi1 = number(f["phi"], "fixed.phi");
      } else {
        if (!f.contains("phi1") || !f.contains("phi2")) bad_field("fixed.phi", "block sampler needs phi or phi1/phi2");
        p.phi1 = number(f["phi1"], "fixed.phi1");
        p.phi2 = number(f["phi2"], "fixed.phi2");
      }
    } else {
      if (!f.contains("c3")) bad_field("fixed.c3", "gibbs sampler needs c3");
      p.c3 = number(f["c3"], "fixed.c3");
    }
    if (cfg.theorem == TheoremKind::rosenthal) {
      if (!f.contains("r")) bad_field("fixed.r", "Rosenthal bound needs r");
      p.r = number(f["r"], "fixed.r");
    }
    p.a = f.contains("a") ? number(f["a"], "fixed.a") : cfg.a;
    if (f.contains("beta")) p.beta = number(f["beta"], "fixed.beta");
    cfg.fixed = p;
  }
  if (j.contains("grid")) {
    const Json& g = j["grid"];
    only_keys(g, "grid", {"gamma", "phi", "phi1", "phi2", "c3", "d", "r", "a", "d_relative", "c3_relative"});
    GridSpec spec = default_grid(cfg.sampler, cfg.theorem);
    spec.phi2.clear();
    for (const char* k : {"gamma", "d"})
      if (!g.contains(k)) bad_field(std::string("grid.") + k, "required");
    spec.gamma = axis(g["gamma"], "grid.gamma");
    spec.d = axis(g["d"], "grid.d");
    spec.d_relative = g.value("d_relative", false);
    if (cfg.sampler == SamplerKind::block) {
      if (g.contains("phi")) spec.phi1 = axis(g["phi"], "grid.phi");
      else if (g.contains("phi1") && g.contains("phi2")) {
        spec.phi1 = axis(g["phi1"], "grid.phi1");
        spec.phi2 = axis(g["phi2"], "grid.phi2");
      } else {
        bad_field("grid.phi", "block sampler needs phi or phi1/phi2");
      }
    } else {
      if (!g.contains("c3")) bad_field("grid.c3", "gibbs sampler needs c3");
      spec.c3 = axis(g["c3"], "grid.c3");
      spec.c3_relative = g.value("c3_relative", false);
    }
    if (cfg.theorem == TheoremKind::rosenthal) {
      if (!g.contains("r")) bad_field("grid.r", "Rosenthal bound needs r");
      spec.r = axis(g["r"], "grid.r");
    } else {
      spec.a = g.contains("a") ? axis(g["a"], "grid.a") : std::vector<double>{cfg.a};
    }
    cfg.grid = spec;
  }
  if (!cfg.fixed && !cfg.grid) defaulted("grid");

  if (j.contains("sweep")) {
    const Json& s = j["sweep"];
    only_keys(s, "sweep", {"vary", "values"});
    if (s.contains("vary")) {
      const auto v = s["vary"].get<std::string>();
      if (v == "a2b2") cfg.sweep_param = SweepParam::a2b2;
      else if (v == "a1b1") cfg.sweep_param = SweepParam::a1b1;
      else bad_field("sweep.vary", "expected 'a2b2' or 'a1b1'");
    }
    if (s.contains("values")) cfg.sweep_values = axis(s["values"], "sweep.values");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

Dataset read_data_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open data file '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::map<long, std::vector<double>> groups;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header) {
      if (line != "group,value")
        throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": expected header 'group,value'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": expected 'group,value'");
    try {
      std::size_t used = 0;
      const long g = std::stol(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("group");
      const std::string rest = line.substr(comma + 1);
      const double v = std::stod(rest, &used);
      if (rest.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("value");
      groups[g].push_back(v);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": malformed row '" + line + "'");
    }
  }
  if (!header) throw Error(ErrorKind::ParseError, path + ": empty data file");
  std::vector<std::vector<double>> ordered;
  long expect = 1;
  for (auto& [g, vals] : groups) {
    if (g != expect)
      throw Error(ErrorKind::ValidationError, path + ": group labels must run 1..K without gaps (missing " +
                                                  std::to_string(expect) + ")");
    ordered.push_back(std::move(vals));
    ++expect;
  }
  return Dataset::from_groups(ordered);
}

Dataset resolve_dataset(const RunConfig& cfg) {
  if (cfg.data_inline) return *cfg.data_inline;
  return read_data_csv(*cfg.data_csv);
}

Hyperparameters resolve_hyper(const RunConfig& cfg, const Dataset& ds) {
  Hyperparameters h = cfg.hyper;
  if (cfg.m0_is_ybar) h.m0 = ds.ybar_grand;
  return h;
}

GridSpec resolve_grid(const RunConfig& cfg) {
  GridSpec g;
  if (cfg.grid) {
    g = *cfg.grid;
  } else if (cfg.fixed) {
    const ParameterPoint& p = *cfg.fixed;
    g.gamma = {p.gamma};
    g.d = {p.d};
    if (cfg.sampler == SamplerKind::block) {
      g.phi1 = {p.phi1};
      if (!std::isnan(p.phi2)) g.phi2 = {p.phi2};
    } else {
      g.c3 = {p.c3};
    }
    if (cfg.theorem == TheoremKind::rosenthal) g.r = {p.r};
    g.a = {p.a};
  } else {
    g = default_grid(cfg.sampler, cfg.theorem);
  }
  g.target_tv = cfg.target_tv;
  g.rho1_slack = cfg.rho1_slack;
  return g;
}

}  // namespace rebound
