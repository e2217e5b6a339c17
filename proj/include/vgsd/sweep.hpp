#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vgsd/harvesting.hpp"
#include "vgsd/switching.hpp"

namespace vgsd {

enum class Geometry { T_vs_tDelta, td_vs_tDelta, T_vs_Sf_spacelike };
enum class Placement { None, tDelta_eq_td_minus_T, td_eq_T_tDelta_0 };
enum class Causal { Spacelike, PartialLight, Timelike };

const char* geometry_name(Geometry g);
Geometry parse_geometry(const std::string& s);
const char* placement_name(Placement p);
Placement parse_placement(const std::string& s);
const char* causal_name(Causal c);

struct Axis {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  double at(int i) const { return count == 1 ? min : min + (max - min) * i / (count - 1); }
};

// Detector parameters in laboratory units. `preset` names the table scenario they came from, if any.
struct ScenarioParams {
  std::string preset;
  double lambda = 1.0;
  double omega_free_ghz = 7.3;
  double omega_var_ghz = 0.0;

  GapSpec gap() const;
};

ScenarioParams scenario_params(const std::string& preset);

struct SweepPlan {
  ScenarioParams scenario;
  Shape shape = Shape::Gaussian;
  double S_f = 0.0;
  Geometry geometry = Geometry::T_vs_tDelta;
  Axis axis1;  // T, t_d or T depending on geometry
  Axis axis2;  // t_delta, t_delta or S_f
  double t_d = 1.0;  // ns, fixed value where the geometry needs it
  double T = 0.2;    // ns, fixed value for td_vs_tDelta
  Placement placement = Placement::None;
  double omega_cut_ghz = 50.0;
  double rel_tol = 1e-6;

  void validate() const;
  // Detector pair for grid cell (a1, a2). Per-lambda^2 outputs are computed with lambda = 1.
  DetectorPair pair_at(double a1, double a2) const;
};

struct SweepRow {
  double axis1 = 0.0;
  double axis2 = 0.0;
  double N_over_lambda2 = 0.0;
  double estimator = -1.0;  // -1 when undefined
  double L_AA = 0.0;
  double abs_M = 0.0;
  double abs_M_plus = 0.0;
  double abs_M_minus = 0.0;
  Causal classification = Causal::PartialLight;
  std::string error;
};

// Spacelike when both supports fit strictly inside each other's light-cone complement, up to a shared
// boundary point: |t_delta| <= t_d - 2h. Timelike when |t_delta| >= t_d + 2h. h is T/2 for compact
// shapes and 5 sigma for Gaussians.
Causal classify_causal(double T, double t_delta, double t_d, Shape shape);

SweepRow evaluate_row(const HarvestEngine& engine, const SweepPlan& plan, double a1, double a2);

// Row-major over (axis1, axis2). Row failures are recorded in the row; the sweep fails only if all rows do.
std::vector<SweepRow> run_sweep(const SweepPlan& plan, int workers = 1);
// T_vs_Sf_spacelike with a placement rule; compact shapes only.
std::vector<SweepRow> spacelike_boundary_sweep(const SweepPlan& plan, int workers = 1);

inline constexpr const char* kCsvColumns =
    "axis1,axis2,N_over_lambda2,estimator,L_AA,abs_M,abs_M_plus,abs_M_minus,classification,error";

std::string format_double(double x);
void write_csv_rows(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace vgsd
