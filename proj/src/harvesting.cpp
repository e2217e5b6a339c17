#include "vgsd/harvesting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vgsd/units.hpp"

namespace vgsd {

namespace {

SwitchingSpec centered(const SwitchingSpec& s) {
  SwitchingSpec c = s;
  c.t_center = 0.0;
  return c;
}

// Kink positions of the centered chi, including the ends of its integration window.
std::vector<double> window_kinks(const SwitchingSpec& s) {
  const double w = integration_half_width(s);
  std::vector<double> k = shape_kinks(s);
  k.push_back(-w);
  k.push_back(w);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

void add_if_inside(std::vector<double>& v, double x, double lo, double hi) {
  if (x > lo && x < hi) v.push_back(x);
}

// Integral of |J(t)| = wc^2 / (1 + wc^2 t^2) over [a, b].
double abs_J_integral(double wc, double a, double b) { return wc * (std::atan(wc * b) - std::atan(wc * a)); }

// Bound on |I_L| and |I_M|: 4 times the integral of chi^2 (Cauchy-Schwarz on the t+ integral).
double inner_bound(const SwitchingSpec& s) {
  const double w = integration_half_width(s);
  QuadratureConfig c;
  c.rel_tol = 1e-6;
  c.split_points = shape_kinks(s);
  const double x2 = integrate_1d([&](double t) { const double x = switching_value(s, t); return x * x; }, -w, w, c).value;
  return 4.0 * x2;
}

// Integral of |I(t - t_delta)| over [-span, span], bounded through |J|.
double kernel_I_mass(double wc, const DetectorPair& p, double span) {
  double m = 0.0;
  for (double sgn : {1.0, -1.0}) {
    const double c = p.t_delta - sgn * p.t_d;
    m += 0.5 * abs_J_integral(wc, -span - c, span - c);
  }
  return m;
}

// Outer integrands are products of a kernel with an inner integral known to about this relative
// accuracy, so the outer result cannot be resolved below (kernel mass) x (inner bound) x this.
constexpr double kInnerNoise = 100.0 * std::numeric_limits<double>::epsilon();

}  // namespace

void DetectorPair::validate() const {
  if (!std::isfinite(lambda)) throw std::invalid_argument("DetectorPair: lambda must be finite");
  gap.validate();
  switching.validate();
  if (!std::isfinite(t_delta)) throw std::invalid_argument("DetectorPair: t_delta must be finite");
  if (!(std::isfinite(t_d) && t_d >= 0.0)) throw std::invalid_argument("DetectorPair: t_d must be >= 0");
}

HarvestEngine::HarvestEngine(double omega_cut, QuadratureConfig cfg) : kernels_(omega_cut), cfg_(std::move(cfg)) {
  cfg_.validate();
}

QuadratureConfig HarvestEngine::default_config() {
  QuadratureConfig c;
  c.rel_tol = 1e-8;
  // Harvesting quantities can be many orders below one; the relative target and the round-off floor govern.
  c.abs_tol = 1e-300;
  c.max_subdivisions = 20000;
  return c;
}

QuadratureConfig HarvestEngine::inner_config(const SwitchingSpec& s) const {
  QuadratureConfig c = cfg_;
  c.rel_tol = std::max(cfg_.rel_tol * 1e-2, 1e-14);
  // A tenth of the noise the outer integrals already allow for (inner_bound >= T for every shape).
  c.abs_tol = 0.1 * kInnerNoise * s.T;
  c.split_points.clear();
  return c;
}

std::vector<double> HarvestEngine::tminus_splits(const DetectorPair& p) const {
  const SwitchingSpec s = centered(p.switching);
  const double span = 2.0 * integration_half_width(s);
  const auto k = window_kinks(s);
  std::vector<double> out{0.0};
  for (double a : k)
    for (double b : k) add_if_inside(out, a - b, -span, span);
  return out;
}

std::vector<double> HarvestEngine::tplus_splits(const DetectorPair& p, double t_minus) const {
  const SwitchingSpec s = centered(p.switching);
  const double top = 2.0 * integration_half_width(s) - std::abs(t_minus);
  std::vector<double> out;
  for (double k : shape_kinks(s)) {
    add_if_inside(out, 2.0 * k - t_minus, 0.0, top);
    add_if_inside(out, 2.0 * k + t_minus, 0.0, top);
  }
  return out;
}

cplx HarvestEngine::I_L(const DetectorPair& p, double t_minus) const {
  const SwitchingSpec s = centered(p.switching);
  const double top = 2.0 * integration_half_width(s) - std::abs(t_minus);
  if (top <= 0.0) return {};
  QuadratureConfig c = inner_config(s);
  c.split_points = tplus_splits(p, t_minus);
  const double rate = std::abs(p.gap.omega_var) + 1.0 / s.T;
  c.max_panel_width = 0.25 * kPi / rate;
  auto f = [&](double tp) {
    return chi_complex(s, p.gap, 0.5 * (tp + t_minus)) * std::conj(chi_complex(s, p.gap, 0.5 * (tp - t_minus)));
  };
  return 2.0 * integrate_1d(f, 0.0, top, c).value;
}

double HarvestEngine::I_M(const DetectorPair& p, double t_minus) const {
  const SwitchingSpec s = centered(p.switching);
  const double top = 2.0 * integration_half_width(s) - std::abs(t_minus);
  if (top <= 0.0) return 0.0;
  QuadratureConfig c = inner_config(s);
  c.split_points = tplus_splits(p, t_minus);
  c.max_panel_width = 0.25 * kPi / (p.gap.max_rate() + 1.0 / s.T);
  auto f = [&](double tp) {
    return (chi_complex(s, p.gap, 0.5 * (tp + t_minus)) * chi_complex(s, p.gap, 0.5 * (tp - t_minus))).real();
  };
  return 2.0 * integrate_1d(f, 0.0, top, c).value;
}

cplx HarvestEngine::L_modes_first(const DetectorPair& p, Entry which) const {
  p.validate();
  const double lam2 = p.lambda * p.lambda;
  if (lam2 == 0.0) return {};
  const SwitchingSpec s = centered(p.switching);
  const double span = 2.0 * integration_half_width(s);
  QuadratureConfig c = cfg_;
  c.split_points = tminus_splits(p);
  c.max_panel_width = 0.25 * kPi / (p.gap.max_rate() + 1.0 / s.T);
  const double wc = kernels_.omega_cut();
  const double bound = inner_bound(s);

  if (which != Entry::AB) {
    c.abs_tol = std::max(c.abs_tol, kInnerNoise * bound * abs_J_integral(wc, 0.0, span));
    // The integrand is Hermitian in t-, so only [0, span] is needed.
    auto f = [&](double tm) { return (std::conj(kernels_.J(tm)) * I_L(p, tm)).real(); };
    const auto r = integrate_1d(f, 0.0, span, c);
    // L_AA is a norm; a result inside its error bar is unresolved and reported as zero.
    const double v = r.value > r.error ? r.value : 0.0;
    return {lam2 * v / (2.0 * kPi), 0.0};
  }
  add_if_inside(c.split_points, p.t_delta + p.t_d, -span, span);
  add_if_inside(c.split_points, p.t_delta - p.t_d, -span, span);
  c.abs_tol = std::max(c.abs_tol, kInnerNoise * bound * kernel_I_mass(wc, p, span));
  auto f = [&](double tm) { return std::conj(kernels_.I(tm - p.t_delta, p.t_d)) * I_L(p, tm); };
  const auto r = integrate_1d(f, -span, span, c);
  const cplx v = std::abs(r.value) > r.error ? r.value : cplx{};
  const cplx pre = std::polar(lam2 / (4.0 * kPi), -phase(s, p.gap, p.t_delta));
  return pre * v;
}

MSplit HarvestEngine::M(const DetectorPair& p) const {
  p.validate();
  const double lam2 = p.lambda * p.lambda;
  if (lam2 == 0.0) return {};
  const SwitchingSpec s = centered(p.switching);
  const double span = 2.0 * integration_half_width(s);
  QuadratureConfig c = cfg_;
  c.split_points = tminus_splits(p);
  add_if_inside(c.split_points, p.t_delta, -span, span);
  add_if_inside(c.split_points, p.t_delta + p.t_d, -span, span);
  add_if_inside(c.split_points, p.t_delta - p.t_d, -span, span);
  c.max_panel_width = 0.25 * kPi / (p.gap.max_rate() + 1.0 / s.T);
  c.abs_tol = std::max(c.abs_tol, kInnerNoise * inner_bound(s) * kernel_I_mass(kernels_.omega_cut(), p, span));
  auto f = [&](double tm) { return kernels_.I(std::abs(tm - p.t_delta), p.t_d) * I_M(p, tm); };
  const auto r = integrate_1d(f, -span, span, c);
  const cplx mbar = std::abs(r.value) > r.error ? 0.5 * r.value : cplx{};
  const cplx pre = -std::polar(lam2 / (2.0 * kPi), phase(s, p.gap, p.t_delta));
  MSplit out;
  out.M_plus = pre * mbar.real();
  out.M_minus = pre * cplx(0.0, mbar.imag());
  out.M = pre * mbar;
  return out;
}

HarvestResult HarvestEngine::evaluate(const DetectorPair& p) const {
  HarvestResult r;
  r.L_AA = L_modes_first(p, Entry::AA).real();
  r.L_BB = r.L_AA;
  r.L_AB = L_modes_first(p, Entry::AB);
  const MSplit m = M(p);
  r.M = m.M;
  r.M_plus = m.M_plus;
  r.M_minus = m.M_minus;
  r.negativity = negativity(r.L_AA, r.L_BB, r.M);
  r.estimator = estimator(r.M_plus, r.M_minus);
  return r;
}

cplx HarvestEngine::L_direct(const DetectorPair& p, Entry which) const {
  p.validate();
  const double lam2 = p.lambda * p.lambda;
  if (lam2 == 0.0) return {};
  const SwitchingSpec s = centered(p.switching);
  const double w = integration_half_width(s);
  Domain2D dom{-w, w, -w, w, shape_kinks(s), shape_kinks(s), {}};
  QuadratureConfig c = cfg_;
  c.max_panel_width = 0.25 * kPi / (p.gap.max_rate() + 1.0 / s.T);
  if (which != Entry::AB) {
    dom.diagonal_offsets = {0.0};
    auto f = [&](double t, double tp) {
      return kernels_.J(tp - t) * chi_complex(s, p.gap, t) * std::conj(chi_complex(s, p.gap, tp));
    };
    return {lam2 / (2.0 * kPi) * integrate_2d_iterated(f, dom, c).value.real(), 0.0};
  }
  // I(t' - t + t_delta) peaks where t' = t - t_delta -+ t_d.
  dom.diagonal_offsets = {p.t_delta + p.t_d, p.t_delta - p.t_d};
  auto f = [&](double t, double tp) {
    return kernels_.I(tp - t + p.t_delta, p.t_d) * chi_complex(s, p.gap, t) * std::conj(chi_complex(s, p.gap, tp));
  };
  const cplx v = integrate_2d_iterated(f, dom, c).value;
  return std::polar(lam2 / (2.0 * kPi), -phase(s, p.gap, p.t_delta)) * v;
}

cplx HarvestEngine::M_direct(const DetectorPair& p) const {
  p.validate();
  const double lam2 = p.lambda * p.lambda;
  if (lam2 == 0.0) return {};
  const SwitchingSpec s = centered(p.switching);
  const double w = integration_half_width(s);
  Domain2D dom{-w, w, -w, w, shape_kinks(s), shape_kinks(s), {p.t_delta, p.t_delta + p.t_d, p.t_delta - p.t_d}};
  QuadratureConfig c = cfg_;
  c.max_panel_width = 0.25 * kPi / (p.gap.max_rate() + 1.0 / s.T);
  auto f = [&](double t, double tp) {
    return kernels_.I(std::abs(t - tp - p.t_delta), p.t_d) * chi_complex(s, p.gap, t) * chi_complex(s, p.gap, tp);
  };
  const cplx mbar = integrate_2d_iterated(f, dom, c).value;
  return -std::polar(lam2 / (2.0 * kPi), phase(s, p.gap, p.t_delta)) * mbar;
}

cplx HarvestEngine::L_modes_last(const DetectorPair& p, Entry which) const {
  p.validate();
  const double lam2 = p.lambda * p.lambda;
  if (lam2 == 0.0) return {};
  const SwitchingSpec s = centered(p.switching);
  const ChiSpectrum spec(s, p.gap);
  const double wc = kernels_.omega_cut();
  const bool cross = which == Entry::AB;
  auto f = [&](double w) -> cplx {
    const double a = std::abs(spec(w));
    const double base = w * std::exp(-w / wc) * a * a;
    if (!cross) return {base, 0.0};
    return base * std::cos(w * p.t_d) * std::polar(1.0, -w * p.t_delta);
  };
  // Beyond 40 omega_cut the weight is below e^{-40}; that tail goes through the mapped rule.
  const double split = 40.0 * wc;
  QuadratureConfig c = cfg_;
  const double horizon = 4.0 * integration_half_width(s) + (cross ? p.t_d + std::abs(p.t_delta) : 0.0);
  c.max_panel_width = 0.25 * kPi / horizon;
  c.split_points = {wc};
  const cplx head = integrate_1d(f, 0.0, split, c).value;
  QuadratureConfig tail_cfg = cfg_;
  tail_cfg.abs_tol = std::max(cfg_.rel_tol * std::abs(head) * 1e-3, 1e-300);
  const cplx tail = integrate_semi_infinite(f, split, wc, tail_cfg).value;
  cplx v = (head + tail) * (lam2 / (2.0 * kPi));
  if (cross) v *= std::polar(1.0, -phase(s, p.gap, p.t_delta));
  return v;
}

cplx HarvestEngine::M_modes_last(const DetectorPair& p) const {
  p.validate();
  const double lam2 = p.lambda * p.lambda;
  if (lam2 == 0.0) return {};
  const SwitchingSpec s = centered(p.switching);
  const double w = integration_half_width(s);
  const double wc = kernels_.omega_cut();
  const double omega_max = 30.0 * wc;  // weight e^{-30}
  const auto k = window_kinks(s);

  std::vector<double> gx, gw;
  gauss_legendre(20, gx, gw);

  // Composite Gauss-Legendre over breakpoints, each gap cut into panels no wider than `cap`.
  auto composite = [&](std::vector<double> br, double cap, auto&& emit) {
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    for (std::size_t i = 1; i < br.size(); ++i) {
      const double a = br[i - 1], b = br[i];
      if (b <= a) continue;
      const int n = std::max(1, static_cast<int>(std::ceil((b - a) / cap)));
      const double h = (b - a) / n;
      for (int q = 0; q < n; ++q) {
        const double c = a + (q + 0.5) * h;
        for (std::size_t j = 0; j < gx.size(); ++j) emit(c + 0.5 * h * gx[j], 0.5 * h * gw[j]);
      }
    }
  };

  // A(u) = int chi_c(t) chi_c(t - u) dt on a u grid fine enough for e^{-i omega u} up to omega_max.
  std::vector<double> un, uw;
  std::vector<cplx> au;
  std::vector<double> ubr{-2.0 * w, 2.0 * w};
  for (double a : k)
    for (double b : k) add_if_inside(ubr, a - b, -2.0 * w, 2.0 * w);
  add_if_inside(ubr, p.t_delta, -2.0 * w, 2.0 * w);
  const double tcap = std::min(s.T / 8.0, 0.5 / (p.gap.max_rate() + 1e-12));
  composite(ubr, 0.5 * kPi / omega_max, [&](double u, double wt) {
    const double lo = std::max(-w, u - w), hi = std::min(w, u + w);
    cplx acc{};
    if (hi > lo) {
      std::vector<double> tbr{lo, hi};
      for (double kk : k) {
        add_if_inside(tbr, kk, lo, hi);
        add_if_inside(tbr, u + kk, lo, hi);
      }
      composite(tbr, tcap, [&](double t, double tw) {
        acc += tw * chi_complex(s, p.gap, t) * chi_complex(s, p.gap, t - u);
      });
    }
    un.push_back(u);
    uw.push_back(wt);
    au.push_back(acc);
  });

  auto g = [&](double om) -> cplx {
    cplx acc{};
    for (std::size_t i = 0; i < un.size(); ++i) acc += uw[i] * au[i] * std::polar(1.0, -om * std::abs(un[i] - p.t_delta));
    return om * std::exp(-om / wc) * std::cos(om * p.t_d) * acc;
  };
  QuadratureConfig c = cfg_;
  c.max_panel_width = kPi / (4.0 * w + p.t_d + std::abs(p.t_delta));
  c.split_points = {wc};
  const cplx mbar = integrate_1d(g, 0.0, omega_max, c).value;
  return -std::polar(lam2 / (2.0 * kPi), phase(s, p.gap, p.t_delta)) * mbar;
}

double negativity(double L_AA, double L_BB, cplx M) {
  const double d = L_AA - L_BB;
  const double rad = std::norm(M) - 0.5 * d * d;
  if (rad < 0.0) return 0.0;
  return std::max(std::sqrt(rad) - 0.5 * (L_AA + L_BB), 0.0);
}

TwoQubitState build_state(double L_AA, double L_BB, cplx L_AB, cplx M) {
  TwoQubitState rho = TwoQubitState::Zero();
  rho(0, 0) = 1.0 - L_AA - L_BB;
  rho(1, 1) = L_AA;
  rho(2, 2) = L_BB;
  rho(1, 2) = L_AB;
  rho(2, 1) = std::conj(L_AB);
  rho(0, 3) = std::conj(M);
  rho(3, 0) = M;
  return rho;
}

Eigen::Vector4d partial_transpose_eigenvalues(const TwoQubitState& rho) {
  // Index i = a + 2 b; transpose the b labels.
  TwoQubitState pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) pt(a + 2 * b, ap + 2 * bp) = rho(a + 2 * bp, ap + 2 * b);
  Eigen::SelfAdjointEigenSolver<TwoQubitState> es(pt, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double partial_transpose_negativity(const TwoQubitState& rho) {
  const Eigen::Vector4d ev = partial_transpose_eigenvalues(rho);
  double n = 0.0;
  for (int i = 0; i < 4; ++i)
    if (ev(i) < 0.0) n -= ev(i);
  return n;
}

std::optional<double> estimator(cplx M_plus, cplx M_minus) {
  const double a = std::abs(M_plus), b = std::abs(M_minus);
  if (a + b == 0.0) return std::nullopt;
  return a / (a + b);
}

}  // namespace vgsd
