#include "vgsd/sweep.hpp"

#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "vgsd/spinboson.hpp"
#include "vgsd/units.hpp"

namespace vgsd {

const char* geometry_name(Geometry g) {
  switch (g) {
    case Geometry::T_vs_tDelta:
      return "T_vs_tDelta";
    case Geometry::td_vs_tDelta:
      return "td_vs_tDelta";
    case Geometry::T_vs_Sf_spacelike:
      return "T_vs_Sf_spacelike";
  }
  return "unknown";
}

Geometry parse_geometry(const std::string& s) {
  for (Geometry g : {Geometry::T_vs_tDelta, Geometry::td_vs_tDelta, Geometry::T_vs_Sf_spacelike})
    if (s == geometry_name(g)) return g;
  throw std::invalid_argument("unknown geometry '" + s + "'");
}

const char* placement_name(Placement p) {
  switch (p) {
    case Placement::None:
      return "none";
    case Placement::tDelta_eq_td_minus_T:
      return "tDelta_eq_td_minus_T";
    case Placement::td_eq_T_tDelta_0:
      return "td_eq_T_tDelta_0";
  }
  return "unknown";
}

Placement parse_placement(const std::string& s) {
  for (Placement p : {Placement::None, Placement::tDelta_eq_td_minus_T, Placement::td_eq_T_tDelta_0})
    if (s == placement_name(p)) return p;
  throw std::invalid_argument("unknown placement '" + s + "'");
}

const char* causal_name(Causal c) {
  switch (c) {
    case Causal::Spacelike:
      return "spacelike";
    case Causal::PartialLight:
      return "partial-light";
    case Causal::Timelike:
      return "timelike";
  }
  return "unknown";
}

GapSpec ScenarioParams::gap() const {
  return {units::ghz_to_internal(omega_free_ghz), units::ghz_to_internal(omega_var_ghz)};
}

ScenarioParams scenario_params(const std::string& preset) {
  const auto s = find_scenario(preset);
  if (!s) throw std::invalid_argument("unknown scenario '" + preset + "'");
  return {s->name, s->lambda, kScenarioOmegaFreeGHz, s->omega_var_ghz};
}

void SweepPlan::validate() const {
  for (const Axis* a : {&axis1, &axis2}) {
    if (a->count < 2) throw std::invalid_argument("sweep: axis count must be >= 2");
    if (!(std::isfinite(a->min) && std::isfinite(a->max) && a->min < a->max))
      throw std::invalid_argument("sweep: axis range must be finite with min < max");
  }
  if (!(omega_cut_ghz > 0.0)) throw std::invalid_argument("sweep: omega_cut_ghz must be positive");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("sweep: rel_tol must be positive");
  if (geometry == Geometry::T_vs_Sf_spacelike) {
    if (placement == Placement::None)
      throw std::invalid_argument("sweep: T_vs_Sf_spacelike needs a placement rule");
    if (shape == Shape::Gaussian)
      throw std::invalid_argument("sweep: Gaussian switching has no compact support for spacelike placement");
  }
  if (!(S_f >= 0.0 && S_f < 1.0)) throw std::invalid_argument("sweep: S_f must lie in [0, 1)");
  scenario.gap().validate();
}

DetectorPair SweepPlan::pair_at(double a1, double a2) const {
  DetectorPair p;
  p.lambda = 1.0;
  p.gap = scenario.gap();
  p.switching.shape = shape;
  p.switching.S_f = S_f;
  switch (geometry) {
    case Geometry::T_vs_tDelta:
      p.switching.T = a1;
      p.t_delta = a2;
      p.t_d = t_d;
      break;
    case Geometry::td_vs_tDelta:
      p.switching.T = T;
      p.t_d = a1;
      p.t_delta = a2;
      break;
    case Geometry::T_vs_Sf_spacelike:
      p.switching.T = a1;
      p.switching.S_f = a2;
      if (placement == Placement::tDelta_eq_td_minus_T) {
        p.t_d = t_d;
        p.t_delta = t_d - a1;
      } else {
        p.t_d = a1;
        p.t_delta = 0.0;
      }
      break;
  }
  return p;
}

Causal classify_causal(double T, double t_delta, double t_d, Shape shape) {
  SwitchingSpec s;
  s.shape = shape;
  s.T = T;
  const double reach = 2.0 * causal_half_width(s);
  const double slack = 1e-12 * std::max({1.0, std::abs(t_d), std::abs(t_delta), T});
  const double dt = std::abs(t_delta);
  if (dt <= t_d - reach + slack) return Causal::Spacelike;
  if (dt >= t_d + reach - slack) return Causal::Timelike;
  return Causal::PartialLight;
}

SweepRow evaluate_row(const HarvestEngine& engine, const SweepPlan& plan, double a1, double a2) {
  SweepRow row;
  row.axis1 = a1;
  row.axis2 = a2;
  const DetectorPair p = plan.pair_at(a1, a2);
  row.classification = classify_causal(p.switching.T, p.t_delta, p.t_d, p.switching.shape);
  try {
    const HarvestResult r = engine.evaluate(p);
    row.N_over_lambda2 = r.negativity;
    row.estimator = r.estimator.value_or(-1.0);
    row.L_AA = r.L_AA;
    row.abs_M = std::abs(r.M);
    row.abs_M_plus = std::abs(r.M_plus);
    row.abs_M_minus = std::abs(r.M_minus);
  } catch (const std::exception& e) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    row.N_over_lambda2 = row.estimator = row.L_AA = row.abs_M = row.abs_M_plus = row.abs_M_minus = nan;
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepPlan& plan, int workers) {
  plan.validate();
  QuadratureConfig cfg = HarvestEngine::default_config();
  cfg.rel_tol = plan.rel_tol;
  const HarvestEngine engine(units::ghz_to_internal(plan.omega_cut_ghz), cfg);

  const int n1 = plan.axis1.count, n2 = plan.axis2.count;
  const int total = n1 * n2;
  std::vector<SweepRow> rows(total);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < total; i = next++) rows[i] = evaluate_row(engine, plan, plan.axis1.at(i / n2), plan.axis2.at(i % n2));
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::max(1, workers); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  bool any_ok = false;
  for (const auto& r : rows) any_ok = any_ok || r.error.empty();
  if (!any_ok) throw std::runtime_error("sweep: every row failed; first error: " + rows.front().error);
  return rows;
}

std::vector<SweepRow> spacelike_boundary_sweep(const SweepPlan& plan, int workers) {
  if (plan.shape == Shape::Gaussian)
    throw std::invalid_argument("spacelike_boundary_sweep: Gaussian switching has no compact support");
  if (plan.geometry != Geometry::T_vs_Sf_spacelike || plan.placement == Placement::None)
    throw std::invalid_argument("spacelike_boundary_sweep: needs geometry T_vs_Sf_spacelike and a placement rule");
  return run_sweep(plan, workers);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

void write_csv_rows(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kCsvColumns << '\n';
  for (const auto& r : rows) {
    os << format_double(r.axis1) << ',' << format_double(r.axis2) << ',' << format_double(r.N_over_lambda2) << ','
       << format_double(r.estimator) << ',' << format_double(r.L_AA) << ',' << format_double(r.abs_M) << ','
       << format_double(r.abs_M_plus) << ',' << format_double(r.abs_M_minus) << ',' << causal_name(r.classification)
       << ',' << sanitize(r.error) << '\n';
  }
}

}  // namespace vgsd
