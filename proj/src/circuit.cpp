#include "vgsd/circuit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "vgsd/units.hpp"

namespace vgsd {

using cplx = std::complex<double>;

CircuitSpec CircuitSpec::device_defaults() {
  CircuitSpec s;
  s.C_inv << 144.0, -81.5, 2.94, 18.6,  //
      -81.5, 196.0, 6.18, 24.8,         //
      2.94, 6.18, 46.1, -32.4,          //
      18.6, 24.8, -32.4, 87.7;
  s.I_c = {0.236, 0.131, 0.236, 0.411, 0.584, 0.185};
  return s;
}

void CircuitSpec::validate(bool require_positive_currents) const {
  if (n_trunc < 3) throw std::invalid_argument("CircuitSpec: n_trunc must be >= 3");
  if (!C_inv.isApprox(C_inv.transpose(), 1e-12)) throw std::invalid_argument("CircuitSpec: C_inv must be symmetric");
  Eigen::LLT<Eigen::Matrix4d> llt(C_inv);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("CircuitSpec: C_inv must be positive definite");
  for (double i : I_c) {
    if (require_positive_currents && !(i > 0.0))
      throw std::invalid_argument("CircuitSpec: critical currents must be positive");
    if (!(i >= 0.0 && std::isfinite(i))) throw std::invalid_argument("CircuitSpec: critical currents must be >= 0");
  }
  if (!std::isfinite(f_beta) || !std::isfinite(f_eps)) throw std::invalid_argument("CircuitSpec: fluxes must be finite");
}

int CircuitSpec::dimension() const {
  const int d = 2 * n_trunc + 1;
  return d * d * d * d;
}

Eigen::Matrix4d charging_matrix_ghz(const CircuitSpec& spec) {
  const double e = kConstants.e_charge;
  // C_inv in 1/pF = 1e12 1/F; result in GHz.
  return spec.C_inv * (2.0 * e * e * 1e12 / kConstants.h * 1e-9);
}

std::array<double, 6> josephson_energies_ghz(const CircuitSpec& spec) {
  std::array<double, 6> out{};
  for (int i = 0; i < 6; ++i) out[i] = kConstants.phi0_reduced * spec.I_c[i] * 1e-6 / kConstants.h * 1e-9;
  return out;
}

namespace {

struct ChargeIndexer {
  int N, d;
  explicit ChargeIndexer(int n_trunc) : N(n_trunc), d(2 * n_trunc + 1) {}
  int index(const std::array<int, 4>& n) const {
    int idx = 0;
    for (int m = 0; m < 4; ++m) idx = idx * d + (n[m] + N);
    return idx;
  }
  std::array<int, 4> charges(int idx) const {
    std::array<int, 4> n{};
    for (int m = 3; m >= 0; --m) {
      n[m] = idx % d - N;
      idx /= d;
    }
    return n;
  }
  bool inside(const std::array<int, 4>& n) const {
    for (int v : n)
      if (v < -N || v > N) return false;
    return true;
  }
};

}  // namespace

SparseC build_hamiltonian(const CircuitSpec& spec) {
  spec.validate(false);
  const ChargeIndexer ix(spec.n_trunc);
  const int dim = spec.dimension();
  const Eigen::Matrix4d Ec = charging_matrix_ghz(spec);
  const auto Ej = josephson_energies_ghz(spec);

  struct Shift {
    std::array<int, 4> d;
    double energy;
    double phase;
  };
  // cos(x) = (e^{ix} + e^{-ix}) / 2 with e^{i gamma_m} raising n_m by one.
  const std::vector<Shift> shifts = {
      {{1, 0, 0, 0}, Ej[0], 0.0},
      {{0, 1, 0, 0}, Ej[1], 0.0},
      {{0, 0, 1, 0}, Ej[4], 0.0},
      {{0, 0, 0, 1}, Ej[5], 0.0},
      {{1, 1, -1, -1}, Ej[2], kTwoPi * (spec.f_eps + spec.f_beta)},
      {{0, 0, 1, 1}, Ej[3], -kTwoPi * spec.f_beta},
  };

  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(dim) * (1 + 2 * shifts.size()));
  for (int col = 0; col < dim; ++col) {
    const auto n = ix.charges(col);
    double kin = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) kin += Ec(a, b) * n[a] * n[b];
    trip.emplace_back(col, col, kin);
    for (const auto& s : shifts) {
      if (s.energy == 0.0) continue;
      std::array<int, 4> up{};
      for (int m = 0; m < 4; ++m) up[m] = n[m] + s.d[m];
      if (!ix.inside(up)) continue;
      const int row = ix.index(up);
      const cplx v = -0.5 * s.energy * std::polar(1.0, s.phase);
      trip.emplace_back(row, col, v);
      trip.emplace_back(col, row, std::conj(v));
    }
  }
  SparseC H(dim, dim);
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

Eigen::MatrixXcd single_mode_angle_operator(int n_trunc) {
  const int d = 2 * n_trunc + 1;
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const int m = r - c;
      if (m != 0) g(r, c) = cplx(0.0, (m % 2 == 0 ? 1.0 : -1.0) / m);
    }
  return g;
}

SparseC angle_operator_matrix(int mode, int n_trunc) {
  if (mode < 0 || mode > 3) throw std::invalid_argument("angle_operator_matrix: mode must be 0..3");
  const ChargeIndexer ix(n_trunc);
  const int d = ix.d;
  const int dim = d * d * d * d;
  const Eigen::MatrixXcd g = single_mode_angle_operator(n_trunc);
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(dim) * (d - 1));
  for (int col = 0; col < dim; ++col) {
    auto n = ix.charges(col);
    const int c = n[mode] + n_trunc;
    for (int r = 0; r < d; ++r) {
      if (r == c) continue;
      n[mode] = r - n_trunc;
      trip.emplace_back(ix.index(n), col, g(r, c));
    }
  }
  SparseC G(dim, dim);
  G.setFromTriplets(trip.begin(), trip.end());
  return G;
}

Eigen::VectorXcd phase_conjugate(const Eigen::VectorXcd& v) {
  // With mode digits n + N, negating every charge reverses the linear index.
  return v.reverse().conjugate();
}

void gauge_fix(Eigen::VectorXcd& v) {
  // If v = e^{ia} r with r real in the phase representation, <v|K v> = e^{-2ia}.
  const cplx overlap = v.dot(phase_conjugate(v));
  if (std::abs(overlap) < 1e-6) throw std::runtime_error("gauge_fix: state has no real phase representative");
  v *= std::polar(1.0, 0.5 * std::arg(overlap));
  v = 0.5 * (v + phase_conjugate(v));
  v.normalize();
}

QubitStates characterize_states(const CircuitSpec& spec, const EigenOptions& opt) {
  const SparseC H = build_hamiltonian(spec);
  const EigenResult er = lowest_eigenpairs(H, 2, opt);
  QubitStates out;
  out.info.f_beta = spec.f_beta;
  out.info.f_eps = spec.f_eps;
  out.info.gap_ghz = er.values(1) - er.values(0);
  out.info.gap = units::ghz_to_internal(out.info.gap_ghz);
  out.info.energies_ghz = {er.values(0), er.values(1)};
  out.info.max_residual = er.residuals.maxCoeff();
  if (out.info.gap_ghz < 1e-3) {
    std::ostringstream msg;
    msg << "characterize: lowest levels are degenerate (gap " << out.info.gap_ghz << " GHz)";
    throw EigensolverError(msg.str(), er.residuals);
  }
  out.ground = er.vectors.col(0);
  out.excited = er.vectors.col(1);
  gauge_fix(out.ground);
  gauge_fix(out.excited);
  const SparseC G = angle_operator_matrix(kCouplingMode, spec.n_trunc);
  const Eigen::VectorXcd g0 = G * out.ground;
  const cplx m10 = out.excited.dot(g0);
  out.info.gamma_x = m10.real();
  out.info.gamma_y = m10.imag();
  out.info.gamma_z = 0.5 * (out.excited.dot(G * out.excited).real() - out.ground.dot(g0).real());
  return out;
}

QubitCharacterization characterize(const CircuitSpec& spec, const EigenOptions& opt) {
  return characterize_states(spec, opt).info;
}

double qubit_gap_ghz(const CircuitSpec& spec, const EigenOptions& opt) {
  const EigenResult er = lowest_eigenpairs(build_hamiltonian(spec), 2, opt);
  return er.values(1) - er.values(0);
}

double symmetry_point(const CircuitSpec& spec, double f_beta, const SymmetryScan& scan) {
  if (!(scan.step > 0.0) || !(scan.hi > scan.lo)) throw std::invalid_argument("symmetry_point: invalid scan window");
  CircuitSpec s = spec;
  s.f_beta = f_beta;
  EigenOptions opt;
  opt.tol = scan.eig_tol;
  auto gap = [&](double fe) {
    s.f_eps = fe;
    const EigenResult er = lowest_eigenpairs(build_hamiltonian(s), 2, opt);
    opt.start = er.vectors.col(0) + er.vectors.col(1);
    return er.values(1) - er.values(0);
  };

  const int n = static_cast<int>(std::floor((scan.hi - scan.lo) / scan.step + 0.5)) + 1;
  std::vector<double> xs(n), gs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = scan.lo + (scan.hi - scan.lo) * i / (n - 1);
    gs[i] = gap(xs[i]);
  }
  const int best = static_cast<int>(std::min_element(gs.begin(), gs.end()) - gs.begin());
  if (best == 0 || best == n - 1) {
    std::ostringstream msg;
    msg << "symmetry_point: no interior minimum in scan at f_beta=" << f_beta << "; scanned";
    for (int i = 0; i < n; ++i) msg << " (" << xs[i] << ", " << gs[i] << ")";
    throw std::runtime_error(msg.str());
  }

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = xs[best - 1], b = xs[best + 1];
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double gc = gap(c), gd = gap(d);
  while (b - a > scan.xtol) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - invphi * (b - a);
      gc = gap(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + invphi * (b - a);
      gd = gap(d);
    }
  }
  return 0.5 * (a + b);
}

GapLineFit fit_gap_line(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("fit_gap_line: need at least 3 points");
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = points[i].first;
    y(i) = points[i].second;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 2) throw std::invalid_argument("fit_gap_line: rank-deficient input (all gamma_x equal)");
  const Eigen::Vector2d beta = qr.solve(y);
  GapLineFit fit;
  fit.intercept_ghz = beta(0);
  fit.slope_ghz = beta(1);
  fit.max_residual_ghz = (A * beta - y).cwiseAbs().maxCoeff();
  return fit;
}

std::vector<QubitCharacterization> characterize_sweep(const CircuitSpec& base, const std::vector<double>& f_betas,
                                                      const SymmetryScan& scan, const EigenOptions& opt,
                                                      int workers) {
  const int n = static_cast<int>(f_betas.size());
  std::vector<QubitStates> states(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        CircuitSpec s = base;
        s.f_beta = f_betas[i];
        s.f_eps = symmetry_point(base, f_betas[i], scan);
        states[i] = characterize_states(s, opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::max(1, workers); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return f_betas[a] > f_betas[b]; });
  const SparseC G = angle_operator_matrix(kCouplingMode, base.n_trunc);
  for (int k = 0; k < n; ++k) {
    auto& st = states[order[k]];
    if (k > 0) {
      const auto& prev = states[order[k - 1]];
      if (prev.ground.dot(st.ground).real() < 0.0) st.ground = -st.ground;
      if (prev.excited.dot(st.excited).real() < 0.0) st.excited = -st.excited;
    }
    cplx m10 = st.excited.dot(G * st.ground);
    if (k == 0 && m10.real() < 0.0) {
      st.excited = -st.excited;
      m10 = -m10;
    }
    st.info.gamma_x = m10.real();
    st.info.gamma_y = m10.imag();
  }
  std::vector<QubitCharacterization> out(n);
  for (int i = 0; i < n; ++i) out[i] = states[i].info;
  return out;
}

}  // namespace vgsd
