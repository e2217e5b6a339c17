#include "vgsd/config.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "vgsd/units.hpp"
#include "vgsd/version.hpp"

namespace vgsd {

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where, "config: '" + where + "' must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(it.key(), "config: unknown key '" + it.key() + "' in " + where);
}

double get_number(const json& j, const std::string& key, std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(key, "config: missing required key '" + key + "'");
  }
  if (!j[key].is_number()) throw ConfigError(key, "config: key '" + key + "' must be a number");
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) throw ConfigError(key, "config: key '" + key + "' must be finite");
  return v;
}

int get_int(const json& j, const std::string& key, std::optional<int> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(key, "config: missing required key '" + key + "'");
  }
  if (!j[key].is_number_integer()) throw ConfigError(key, "config: key '" + key + "' must be an integer");
  return j[key].get<int>();
}

std::string get_string(const json& j, const std::string& key, std::optional<std::string> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(key, "config: missing required key '" + key + "'");
  }
  if (!j[key].is_string()) throw ConfigError(key, "config: key '" + key + "' must be a string");
  return j[key].get<std::string>();
}

Axis get_axis(const json& j, const std::string& key, std::optional<Axis> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(key, "config: missing required key '" + key + "'");
  }
  const json& a = j[key];
  check_keys(a, {"min", "max", "count"}, key);
  Axis ax{get_number(a, "min"), get_number(a, "max"), get_int(a, "count")};
  if (ax.count < 2) throw ConfigError(key, "config: " + key + ".count must be >= 2");
  if (!(ax.min < ax.max)) throw ConfigError(key, "config: " + key + " needs min < max");
  return ax;
}

ScenarioParams get_scenario(const json& j) {
  ScenarioParams s;
  const std::string preset = get_string(j, "scenario", std::string("scenario1"));
  try {
    s = scenario_params(preset);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scenario", std::string("config: ") + e.what());
  }
  s.lambda = get_number(j, "lambda", s.lambda);
  s.omega_free_ghz = get_number(j, "omega_free_ghz", s.omega_free_ghz);
  s.omega_var_ghz = get_number(j, "omega_var_ghz", s.omega_var_ghz);
  if (!(s.omega_free_ghz > 0.0)) throw ConfigError("omega_free_ghz", "config: omega_free_ghz must be positive");
  return s;
}

Shape get_shape(const json& j) {
  try {
    return parse_shape(get_string(j, "shape"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("shape", std::string("config: ") + e.what());
  }
}

double get_positive(const json& j, const std::string& key, std::optional<double> fallback = std::nullopt) {
  const double v = get_number(j, key, fallback);
  if (!(v > 0.0)) throw ConfigError(key, "config: key '" + key + "' must be positive");
  return v;
}

double get_flat_fraction(const json& j) {
  const double v = get_number(j, "S_f", 0.0);
  if (!(v >= 0.0 && v < 1.0)) throw ConfigError("S_f", "config: S_f must lie in [0, 1)");
  return v;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "config: cannot open '" + path + "'");
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("config: parse error in '") + path + "': " + e.what());
  }
}

DetectorPair PointConfig::pair() const {
  DetectorPair p;
  p.lambda = scenario.lambda;
  p.gap = scenario.gap();
  p.switching = switching;
  p.t_d = t_d;
  p.t_delta = t_delta;
  return p;
}

PointConfig point_config_from_json(const json& j) {
  check_keys(j,
             {"scenario", "lambda", "omega_free_ghz", "omega_var_ghz", "shape", "T", "S_f", "t_d", "t_delta",
              "omega_cut_ghz", "rel_tol"},
             "point config");
  PointConfig c;
  c.scenario = get_scenario(j);
  c.switching.shape = get_shape(j);
  c.switching.T = get_positive(j, "T");
  c.switching.S_f = get_flat_fraction(j);
  c.t_d = get_number(j, "t_d");
  if (c.t_d < 0.0) throw ConfigError("t_d", "config: t_d must be >= 0");
  c.t_delta = get_number(j, "t_delta");
  c.omega_cut_ghz = get_positive(j, "omega_cut_ghz", 50.0);
  c.rel_tol = get_positive(j, "rel_tol", 1e-8);
  return c;
}

SweepPlan sweep_plan_from_json(const json& j) {
  check_keys(j,
             {"scenario", "lambda", "omega_free_ghz", "omega_var_ghz", "shape", "S_f", "geometry", "axis1", "axis2",
              "t_d", "T", "placement", "omega_cut_ghz", "rel_tol", "output"},
             "sweep config");
  SweepPlan p;
  p.scenario = get_scenario(j);
  p.shape = get_shape(j);
  p.S_f = get_flat_fraction(j);
  try {
    p.geometry = parse_geometry(get_string(j, "geometry"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("geometry", std::string("config: ") + e.what());
  }
  try {
    p.placement = parse_placement(get_string(j, "placement", std::string("none")));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("placement", std::string("config: ") + e.what());
  }
  p.axis1 = get_axis(j, "axis1");
  p.axis2 = get_axis(j, "axis2");
  const bool needs_td = p.geometry == Geometry::T_vs_tDelta ||
                        (p.geometry == Geometry::T_vs_Sf_spacelike && p.placement == Placement::tDelta_eq_td_minus_T);
  p.t_d = needs_td ? get_number(j, "t_d") : get_number(j, "t_d", 0.0);
  if (p.t_d < 0.0) throw ConfigError("t_d", "config: t_d must be >= 0");
  p.T = p.geometry == Geometry::td_vs_tDelta ? get_positive(j, "T") : get_number(j, "T", 0.0);
  p.omega_cut_ghz = get_positive(j, "omega_cut_ghz", 50.0);
  p.rel_tol = get_positive(j, "rel_tol", 1e-6);
  if (p.geometry == Geometry::T_vs_Sf_spacelike) {
    if (p.placement == Placement::None)
      throw ConfigError("placement", "config: T_vs_Sf_spacelike needs placement tDelta_eq_td_minus_T or td_eq_T_tDelta_0");
    if (p.shape == Shape::Gaussian)
      throw ConfigError("shape", "config: spacelike placement needs a compact shape (no compact support for gaussian)");
  }
  return p;
}

json sweep_plan_to_json(const SweepPlan& p) {
  json j;
  if (!p.scenario.preset.empty()) j["scenario"] = p.scenario.preset;
  j["lambda"] = p.scenario.lambda;
  j["omega_free_ghz"] = p.scenario.omega_free_ghz;
  j["omega_var_ghz"] = p.scenario.omega_var_ghz;
  j["shape"] = shape_name(p.shape);
  j["S_f"] = p.S_f;
  j["geometry"] = geometry_name(p.geometry);
  j["axis1"] = {{"min", p.axis1.min}, {"max", p.axis1.max}, {"count", p.axis1.count}};
  j["axis2"] = {{"min", p.axis2.min}, {"max", p.axis2.max}, {"count", p.axis2.count}};
  j["t_d"] = p.t_d;
  j["T"] = p.T;
  j["placement"] = placement_name(p.placement);
  j["omega_cut_ghz"] = p.omega_cut_ghz;
  j["rel_tol"] = p.rel_tol;
  return j;
}

CircuitConfig circuit_config_from_json(const json& root) {
  CircuitConfig c;
  if (!root.contains("circuit")) return c;
  const json& j = root["circuit"];
  check_keys(j, {"C_inv_per_pF", "I_c_uA", "n_trunc", "f_beta", "scan", "convergence_check"}, "circuit");
  if (j.contains("C_inv_per_pF")) {
    const json& m = j["C_inv_per_pF"];
    if (!m.is_array() || m.size() != 4) throw ConfigError("C_inv_per_pF", "config: C_inv_per_pF must be a 4x4 array");
    for (int r = 0; r < 4; ++r) {
      if (!m[r].is_array() || m[r].size() != 4)
        throw ConfigError("C_inv_per_pF", "config: C_inv_per_pF must be a 4x4 array");
      for (int q = 0; q < 4; ++q) {
        if (!m[r][q].is_number()) throw ConfigError("C_inv_per_pF", "config: C_inv_per_pF entries must be numbers");
        c.spec.C_inv(r, q) = m[r][q].get<double>();
      }
    }
  }
  if (j.contains("I_c_uA")) {
    const json& a = j["I_c_uA"];
    if (!a.is_array() || a.size() != 6) throw ConfigError("I_c_uA", "config: I_c_uA must list 6 currents");
    for (int i = 0; i < 6; ++i) {
      if (!a[i].is_number()) throw ConfigError("I_c_uA", "config: I_c_uA entries must be numbers");
      c.spec.I_c[i] = a[i].get<double>();
    }
  }
  c.spec.n_trunc = get_int(j, "n_trunc", 5);
  if (c.spec.n_trunc < 3) throw ConfigError("n_trunc", "config: n_trunc must be >= 3");
  c.f_beta = get_axis(j, "f_beta", Axis{0.3, 0.5, 11});
  if (j.contains("scan")) {
    const json& s = j["scan"];
    check_keys(s, {"lo", "hi", "step", "xtol"}, "scan");
    c.scan.lo = get_number(s, "lo", c.scan.lo);
    c.scan.hi = get_number(s, "hi", c.scan.hi);
    c.scan.step = get_positive(s, "step", c.scan.step);
    c.scan.xtol = get_positive(s, "xtol", c.scan.xtol);
  }
  if (j.contains("convergence_check")) {
    if (!j["convergence_check"].is_boolean())
      throw ConfigError("convergence_check", "config: convergence_check must be true or false");
    c.convergence_check = j["convergence_check"].get<bool>();
  }
  try {
    c.spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("circuit", std::string("config: ") + e.what());
  }
  return c;
}

void write_csv_header(std::ostream& os, const SweepPlan& plan) {
  os << "# vgsd " << kVersion << '\n';
  os << "# plan: " << sweep_plan_to_json(plan).dump() << '\n';
  os << "# rel_tol: " << format_double(plan.rel_tol) << '\n';
  os << "# units: axes in ns (S_f dimensionless); N, L, |M| per lambda^2\n";
}

SweepPlan read_csv_plan(std::istream& is) {
  std::string line;
  const std::string tag = "# plan: ";
  while (std::getline(is, line)) {
    if (line.rfind("#", 0) != 0) break;
    if (line.rfind(tag, 0) == 0) return sweep_plan_from_json(json::parse(line.substr(tag.size())));
  }
  throw ConfigError("plan", "csv: no plan header found");
}

}  // namespace vgsd
