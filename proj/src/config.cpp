#include "spp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace spp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::config_parse, msg); }

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) fail("unknown key '" + it.key() + "' in " + where);
}

double num(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail("missing key '" + key + "' in " + where);
  if (!obj[key].is_number()) fail("key '" + key + "' in " + where + " must be a number");
  return obj[key].get<double>();
}

UnitCell parse_cell(const json& c) {
  if (!c.is_object() || !c.contains("kind")) fail("cell needs a 'kind'");
  std::string kind = c["kind"].get<std::string>();
  if (kind == "delta") {
    reject_unknown(c, {"kind", "strength"}, "cell");
    return DeltaCell{num(c, "strength", "delta cell")};
  }
  if (kind == "rectangular") {
    reject_unknown(c, {"kind", "height", "width"}, "cell");
    return RectangularCell{num(c, "height", "rectangular cell"), num(c, "width", "rectangular cell")};
  }
  if (kind == "piecewise") {
    reject_unknown(c, {"kind", "segments"}, "cell");
    if (!c.contains("segments") || !c["segments"].is_array() || c["segments"].empty())
      fail("piecewise cell needs a nonempty 'segments' array");
    PiecewiseCell cell;
    for (const auto& s : c["segments"]) {
      if (!s.is_array() || s.size() != 2) fail("each segment must be [width, height]");
      cell.segments.push_back({s[0].get<double>(), s[1].get<double>()});
    }
    return cell;
  }
  fail("unknown cell kind '" + kind + "'");
}

SppSpec parse_tiered(const json& sys, OverlapPolicy policy) {
  SppSpec spec;
  spec.cell = parse_cell(sys["cell"]);
  spec.policy = policy;
  double d = cell_width(spec.cell);
  if (sys.contains("tiers")) {
    if (!sys["tiers"].is_array()) fail("'tiers' must be an array");
    for (const auto& t : sys["tiers"]) {
      reject_unknown(t, {"N", "s", "c", "y"}, "tier");
      if (!t.contains("N")) fail("tier needs 'N'");
      int N = t["N"].get<int>();
      int forms = t.contains("s") + t.contains("c") + t.contains("y");
      if (forms != 1) fail("tier needs exactly one of 's', 'c', 'y'");
      double s;
      if (t.contains("s")) {
        s = t["s"].get<double>();
      } else if (t.contains("c")) {
        s = d + t["c"].get<double>();
      } else {
        if (spec.tiers.size() != 1) fail("'y' parametrizes the second tier only");
        s = spec.tiers[0].N * spec.tiers[0].s + t["y"].get<double>();
      }
      spec.tiers.push_back({N, s});
      d += (N - 1) * s;
    }
  }
  return spec;
}

FractalSpec parse_fractal(const json& f) {
  reject_unknown(f, {"kind", "stage", "span", "height", "gamma"}, "fractal");
  if (!f.contains("kind")) fail("fractal needs a 'kind'");
  std::string kind = f["kind"].get<std::string>();
  FractalSpec spec;
  if (kind == "standard_cantor")
    spec.kind = FractalKind::standard_cantor;
  else if (kind == "general_cantor")
    spec.kind = FractalKind::general_cantor;
  else if (kind == "svc")
    spec.kind = FractalKind::svc;
  else
    fail("unknown fractal kind '" + kind + "'");
  spec.stage = static_cast<int>(num(f, "stage", "fractal"));
  spec.span = num(f, "span", "fractal");
  spec.height = num(f, "height", "fractal");
  if (f.contains("gamma")) spec.removal_gamma = f["gamma"].get<double>();
  return spec;
}

SweepGrid parse_grid(const json& g) {
  reject_unknown(g, {"axis", "start", "stop", "points", "scale", "k"}, "sweep");
  SweepGrid grid;
  std::string axis = g.contains("axis") ? g["axis"].get<std::string>() : "k";
  if (axis == "k")
    grid.axis = SweepAxis::k;
  else if (axis == "gamma")
    grid.axis = SweepAxis::gamma;
  else if (axis == "y")
    grid.axis = SweepAxis::y;
  else
    fail("unknown sweep axis '" + axis + "'");
  grid.start = num(g, "start", "sweep");
  grid.stop = num(g, "stop", "sweep");
  grid.points = static_cast<int>(num(g, "points", "sweep"));
  if (g.contains("scale") && g["scale"].get<std::string>() != "linear")
    fail("only linear sweep scaling is supported");
  if (g.contains("k")) grid.fixed_k = g["k"].get<double>();
  return grid;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  reject_unknown(root, {"system", "sweep", "units", "overlap_policy", "output", "tolerances"},
                 "config");
  if (!root.contains("system") || !root.contains("sweep")) fail("config needs 'system' and 'sweep'");

  ExperimentConfig cfg;

  OverlapPolicy policy = OverlapPolicy::strict;
  if (root.contains("overlap_policy")) {
    std::string p = root["overlap_policy"].get<std::string>();
    if (p == "strict")
      policy = OverlapPolicy::strict;
    else if (p == "permissive")
      policy = OverlapPolicy::permissive;
    else
      fail("overlap_policy must be 'strict' or 'permissive'");
  }

  const json& sys = root["system"];
  reject_unknown(sys, {"cell", "tiers", "fractal"}, "system");
  bool tiered = sys.contains("cell");
  bool fractal = sys.contains("fractal");
  if (tiered == fractal) fail("system must have exactly one of 'cell' (+ 'tiers') or 'fractal'");
  if (tiered)
    cfg.system = parse_tiered(sys, policy);
  else
    cfg.system = parse_fractal(sys["fractal"]);

  cfg.grid = parse_grid(root["sweep"]);

  if (root.contains("units")) {
    reject_unknown(root["units"], {"hbar", "mass"}, "units");
    if (root["units"].contains("hbar")) cfg.units.hbar = root["units"]["hbar"].get<double>();
    if (root["units"].contains("mass")) cfg.units.mass = root["units"]["mass"].get<double>();
  }
  if (root.contains("output")) {
    reject_unknown(root["output"], {"format"}, "output");
    if (root["output"].contains("format")) {
      std::string fmt = root["output"]["format"].get<std::string>();
      if (fmt == "csv")
        cfg.format = OutputFormat::csv;
      else if (fmt == "jsonl")
        cfg.format = OutputFormat::jsonl;
      else
        fail("output format must be 'csv' or 'jsonl'");
    }
  }
  if (root.contains("tolerances")) {
    reject_unknown(root["tolerances"], {"oracle_abs", "oracle_rel_log"}, "tolerances");
    if (root["tolerances"].contains("oracle_abs"))
      cfg.tolerances.oracle_abs = root["tolerances"]["oracle_abs"].get<double>();
    if (root["tolerances"].contains("oracle_rel_log"))
      cfg.tolerances.oracle_rel_log = root["tolerances"]["oracle_rel_log"].get<double>();
  }

  // surface parse-time validation early
  if (const auto* spec = std::get_if<SppSpec>(&cfg.system)) {
    if (cfg.grid.axis == SweepAxis::gamma) fail("gamma sweeps need a general Cantor system");
    (void)spec;
  } else if (cfg.grid.axis == SweepAxis::y) {
    fail("y sweeps need a tiered system");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace spp
