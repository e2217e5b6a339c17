#include "vgsd/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "vgsd/circuit.hpp"
#include "vgsd/config.hpp"
#include "vgsd/eigensolver.hpp"
#include "vgsd/harvesting.hpp"
#include "vgsd/quadrature.hpp"
#include "vgsd/spinboson.hpp"
#include "vgsd/sweep.hpp"
#include "vgsd/units.hpp"
#include "vgsd/version.hpp"

namespace vgsd {

namespace fs = std::filesystem;

namespace {

// Relative change of the gap between n_trunc and n_trunc + 1 above which a warning is printed.
constexpr double kTruncationWarn = 1e-3;

std::string fmt_complex(cplx z) { return format_double(z.real()) + (std::signbit(z.imag()) ? "" : "+") + format_double(z.imag()) + "i"; }

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (!fs::is_directory(p)) throw ConfigError("out", "output directory '" + dir + "' cannot be created");
  const fs::path probe = p / ".vgsd_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw ConfigError("out", "output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
  return p;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("out", "cannot write '" + path.string() + "'");
  return f;
}

int cmd_point(const RunConfig& rc, std::ostream& out) {
  const json j = load_json_file(rc.config_path);
  PointConfig pc = point_config_from_json(j);
  if (rc.rel_tol) pc.rel_tol = *rc.rel_tol;

  QuadratureConfig cfg = HarvestEngine::default_config();
  cfg.rel_tol = pc.rel_tol;
  const HarvestEngine engine(units::ghz_to_internal(pc.omega_cut_ghz), cfg);
  const DetectorPair pair = pc.pair();
  const HarvestResult r = engine.evaluate(pair);
  const double lam2 = pair.lambda * pair.lambda;
  const double n_per = lam2 > 0.0 ? r.negativity / lam2 : 0.0;
  const Causal c = classify_causal(pair.switching.T, pair.t_delta, pair.t_d, pair.switching.shape);

  out << "vgsd " << kVersion << '\n';
  out << "L_AA " << format_double(r.L_AA) << '\n';
  out << "L_AB " << fmt_complex(r.L_AB) << '\n';
  out << "M " << fmt_complex(r.M) << '\n';
  out << "M_plus " << fmt_complex(r.M_plus) << '\n';
  out << "M_minus " << fmt_complex(r.M_minus) << '\n';
  out << "N_over_lambda2 " << format_double(n_per) << '\n';
  out << "estimator " << (r.estimator ? format_double(*r.estimator) : std::string("undefined")) << '\n';
  out << "classification " << causal_name(c) << '\n';

  if (!rc.out_dir.empty()) {
    const fs::path dir = prepare_out_dir(rc.out_dir);
    std::ofstream f = open_output(dir / "point.csv");
    f << "# vgsd " << kVersion << '\n';
    f << "# config: " << j.dump() << '\n';
    f << "L_AA,L_AB_re,L_AB_im,M_re,M_im,M_plus_re,M_plus_im,M_minus_re,M_minus_im,N_over_lambda2,estimator,"
         "classification\n";
    f << format_double(r.L_AA) << ',' << format_double(r.L_AB.real()) << ',' << format_double(r.L_AB.imag()) << ','
      << format_double(r.M.real()) << ',' << format_double(r.M.imag()) << ',' << format_double(r.M_plus.real()) << ','
      << format_double(r.M_plus.imag()) << ',' << format_double(r.M_minus.real()) << ','
      << format_double(r.M_minus.imag()) << ',' << format_double(n_per) << ',' << format_double(r.estimator.value_or(-1.0))
      << ',' << causal_name(c) << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out) {
  const json j = load_json_file(rc.config_path);
  SweepPlan plan = sweep_plan_from_json(j);
  if (rc.rel_tol) plan.rel_tol = *rc.rel_tol;
  std::string name = "sweep.csv";
  if (j.contains("output")) {
    if (!j["output"].is_string() || j["output"].get<std::string>().empty())
      throw ConfigError("output", "config: output must be a non-empty file name");
    name = j["output"].get<std::string>();
  }
  const fs::path dir = prepare_out_dir(rc.out_dir.empty() ? "." : rc.out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = plan.geometry == Geometry::T_vs_Sf_spacelike ? spacelike_boundary_sweep(plan, rc.workers)
                                                                 : run_sweep(plan, rc.workers);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path path = dir / name;
  {
    std::ofstream f = open_output(path);
    write_csv_header(f, plan);
    write_csv_rows(f, rows);
  }
  double nmin = INFINITY, nmax = -INFINITY;
  int failed = 0;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      ++failed;
      continue;
    }
    nmin = std::min(nmin, r.N_over_lambda2);
    nmax = std::max(nmax, r.N_over_lambda2);
  }
  out << "wrote " << path.string() << ": " << rows.size() << " rows, " << failed << " failed; N/lambda^2 min "
      << format_double(nmin) << " max " << format_double(nmax) << "; wall " << format_double(std::round(wall * 1e3) / 1e3)
      << " s\n";
  return kExitOk;
}

int cmd_circuit(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  CircuitConfig cc;
  json j = json::object();
  if (!rc.config_path.empty()) {
    j = load_json_file(rc.config_path);
    if (!j.is_object()) throw ConfigError("config", "config: top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "circuit") throw ConfigError(it.key(), "config: unknown key '" + it.key() + "' in circuit config");
    cc = circuit_config_from_json(j);
  }
  std::vector<double> f_betas;
  for (int i = 0; i < cc.f_beta.count; ++i) f_betas.push_back(cc.f_beta.at(i));

  EigenOptions opt;
  opt.tol = cc.scan.eig_tol;
  const auto rows = characterize_sweep(cc.spec, f_betas, cc.scan, opt, rc.workers);
  std::vector<std::pair<double, double>> pts;
  for (const auto& q : rows) pts.emplace_back(q.gamma_x, q.gap_ghz);
  const GapLineFit fit = fit_gap_line(pts);

  out << "vgsd " << kVersion << "  n_trunc " << cc.spec.n_trunc << '\n';
  out << "f_beta,f_eps,Omega_ghz,gamma_x\n";
  for (const auto& q : rows)
    out << format_double(q.f_beta) << ',' << format_double(q.f_eps) << ',' << format_double(q.gap_ghz) << ','
        << format_double(q.gamma_x) << '\n';
  out << "fit intercept_ghz " << format_double(fit.intercept_ghz) << " slope_ghz " << format_double(fit.slope_ghz)
      << " max_residual_ghz " << format_double(fit.max_residual_ghz) << '\n';

  if (cc.convergence_check) {
    // Same operating point, one more charge state per mode.
    const auto& ref = rows.back();
    CircuitSpec lo = cc.spec, hi = cc.spec;
    lo.f_beta = hi.f_beta = ref.f_beta;
    lo.f_eps = hi.f_eps = ref.f_eps;
    hi.n_trunc += 1;
    const double g_lo = qubit_gap_ghz(lo, opt), g_hi = qubit_gap_ghz(hi, opt);
    const double rel = std::abs(g_hi - g_lo) / std::abs(g_hi);
    out << "truncation check: gap " << format_double(g_lo) << " GHz at n_trunc " << lo.n_trunc << ", "
        << format_double(g_hi) << " GHz at n_trunc " << hi.n_trunc << '\n';
    if (rel > kTruncationWarn)
      err << "warning: charge truncation not converged: gap changes by " << format_double(rel * 100.0)
          << "% from n_trunc " << lo.n_trunc << " to " << hi.n_trunc << '\n';
  }

  if (!rc.out_dir.empty()) {
    const fs::path dir = prepare_out_dir(rc.out_dir);
    std::ofstream f = open_output(dir / "circuit.csv");
    f << "# vgsd " << kVersion << '\n';
    f << "# config: " << j.dump() << '\n';
    f << "# n_trunc: " << cc.spec.n_trunc << '\n';
    f << "# fit: intercept_ghz " << format_double(fit.intercept_ghz) << " slope_ghz " << format_double(fit.slope_ghz)
      << '\n';
    f << "f_beta,f_eps,Omega_ghz,gamma_x\n";
    for (const auto& q : rows)
      f << format_double(q.f_beta) << ',' << format_double(q.f_eps) << ',' << format_double(q.gap_ghz) << ','
        << format_double(q.gamma_x) << '\n';
  }
  return kExitOk;
}

int cmd_scenarios(std::ostream& out) {
  out << "name,lambda,gamma,alpha,Omega_v_ghz,note\n";
  for (const auto& s : scenarios()) {
    if (s.weak_limit)
      out << s.name << ",->0,0,0,0,weak coupling limit (evaluated per lambda^2)\n";
    else
      out << s.name << ',' << format_double(s.lambda) << ',' << format_double(s.gamma) << ',' << format_double(s.alpha)
          << ',' << format_double(s.omega_var_ghz) << ",\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement harvesting with variable-gap superconducting detectors"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig rc;
  rc.out_dir.clear();
  double rel_tol = 0.0;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", rc.config_path, "JSON config file");
    if (needs_config) opt->required();
    sub->add_option("--out", rc.out_dir, "output directory");
    sub->add_option("--workers", rc.workers, "worker threads")->check(CLI::PositiveNumber);
  };
  auto* point = app.add_subcommand("point", "evaluate one detector configuration");
  add_common(point, true);
  point->add_option("--rel-tol", rel_tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
  auto* sweep = app.add_subcommand("sweep", "two-axis parameter sweep to CSV");
  add_common(sweep, true);
  sweep->add_option("--rel-tol", rel_tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
  auto* circuit = app.add_subcommand("circuit", "qubit characterization and gap fit");
  add_common(circuit, false);
  app.add_subcommand("scenarios", "list the coupling scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (rel_tol > 0.0) rc.rel_tol = rel_tol;

  try {
    if (*point) {
      rc.subcommand = "point";
      return cmd_point(rc, out);
    }
    if (*sweep) {
      rc.subcommand = "sweep";
      return cmd_sweep(rc, out);
    }
    if (*circuit) {
      rc.subcommand = "circuit";
      return cmd_circuit(rc, out, err);
    }
    rc.subcommand = "scenarios";
    return cmd_scenarios(out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const QuadratureError& e) {
    err << "quadrature error: " << e.what() << '\n';
    return kExitQuadrature;
  } catch (const EigensolverError& e) {
    err << "eigensolver error: " << e.what() << '\n';
    return kExitEigensolver;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
}

}  // namespace vgsd
