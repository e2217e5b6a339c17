#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vgsd/circuit.hpp"
#include "vgsd/config.hpp"
#include "vgsd/harvesting.hpp"
#include "vgsd/spinboson.hpp"
#include "vgsd/sweep.hpp"
#include "vgsd/units.hpp"
#include "vgsd/version.hpp"

namespace py = pybind11;
using namespace vgsd;

namespace {

py::dict evaluate_point(const std::string& config_json) {
  const PointConfig pc = point_config_from_json(json::parse(config_json));
  QuadratureConfig cfg = HarvestEngine::default_config();
  cfg.rel_tol = pc.rel_tol;
  const DetectorPair pair = pc.pair();
  HarvestResult r;
  {
    py::gil_scoped_release release;
    const HarvestEngine engine(units::ghz_to_internal(pc.omega_cut_ghz), cfg);
    r = engine.evaluate(pair);
  }
  const double lam2 = pair.lambda * pair.lambda;
  py::dict d;
  d["L_AA"] = r.L_AA;
  d["L_AB"] = r.L_AB;
  d["M"] = r.M;
  d["M_plus"] = r.M_plus;
  d["M_minus"] = r.M_minus;
  d["negativity"] = r.negativity;
  d["N_over_lambda2"] = lam2 > 0.0 ? r.negativity / lam2 : 0.0;
  d["estimator"] = r.estimator ? py::cast(*r.estimator) : py::none();
  d["classification"] = causal_name(classify_causal(pair.switching.T, pair.t_delta, pair.t_d, pair.switching.shape));
  return d;
}

std::string sweep_csv(const std::string& plan_json, int workers) {
  json j = json::parse(plan_json);
  j.erase("output");
  const SweepPlan plan = sweep_plan_from_json(j);
  std::ostringstream os;
  {
    py::gil_scoped_release release;
    const auto rows = plan.geometry == Geometry::T_vs_Sf_spacelike ? spacelike_boundary_sweep(plan, workers)
                                                                   : run_sweep(plan, workers);
    write_csv_header(os, plan);
    write_csv_rows(os, rows);
  }
  return os.str();
}

std::string csv_plan(const std::string& csv_text) {
  std::istringstream is(csv_text);
  return sweep_plan_to_json(read_csv_plan(is)).dump();
}

py::list scenario_rows() {
  py::list out;
  for (const auto& s : scenarios()) {
    py::dict d;
    d["name"] = s.name;
    d["weak_limit"] = s.weak_limit;
    d["lambda"] = s.lambda;
    d["gamma"] = s.gamma;
    d["alpha"] = s.alpha;
    d["omega_var_ghz"] = s.omega_var_ghz;
    out.append(d);
  }
  return out;
}

py::dict characterize_qubit(double f_beta, double f_eps, int n_trunc) {
  CircuitSpec spec = CircuitSpec::device_defaults();
  spec.f_beta = f_beta;
  spec.f_eps = f_eps;
  spec.n_trunc = n_trunc;
  QubitCharacterization q;
  {
    py::gil_scoped_release release;
    q = characterize(spec);
  }
  py::dict d;
  d["gap_ghz"] = q.gap_ghz;
  d["gamma_x"] = q.gamma_x;
  d["gamma_y"] = q.gamma_y;
  d["energies_ghz"] = q.energies_ghz;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = kVersion;
  m.attr("CSV_COLUMNS") = kCsvColumns;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
  py::register_exception<EigensolverError>(m, "EigensolverError", PyExc_RuntimeError);

  m.def("evaluate_point", &evaluate_point, py::arg("config_json"));
  m.def("sweep_csv", &sweep_csv, py::arg("plan_json"), py::arg("workers") = 1);
  m.def("csv_plan", &csv_plan, py::arg("csv_text"));
  m.def("scenarios", &scenario_rows);
  m.def("alpha_from_gamma", &alpha_from_gamma, py::arg("gamma"), py::arg("Z0") = 50.0);
  m.def("lambda_from_gamma", &lambda_from_gamma, py::arg("gamma"), py::arg("Z0") = 50.0);
  m.def("negativity", &negativity, py::arg("L_AA"), py::arg("L_BB"), py::arg("M"));
  m.def(
      "classify",
      [](double T, double t_delta, double t_d, const std::string& shape) {
        return std::string(causal_name(classify_causal(T, t_delta, t_d, parse_shape(shape))));
      },
      py::arg("T"), py::arg("t_delta"), py::arg("t_d"), py::arg("shape"));
  m.def("characterize_qubit", &characterize_qubit, py::arg("f_beta"), py::arg("f_eps"), py::arg("n_trunc") = 5);
}
