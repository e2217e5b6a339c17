#include "vgsd/switching.hpp"

#include <cmath>
#include <stdexcept>

#include "vgsd/units.hpp"

namespace vgsd {

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Gaussian:
      return "gaussian";
    case Shape::CosineRamps:
      return "cosine_ramps";
    case Shape::Trapezoid:
      return "trapezoid";
  }
  return "unknown";
}

Shape parse_shape(const std::string& name) {
  if (name == "gaussian") return Shape::Gaussian;
  if (name == "cosine_ramps") return Shape::CosineRamps;
  if (name == "trapezoid") return Shape::Trapezoid;
  throw std::invalid_argument("unknown shape '" + name + "' (expected gaussian, cosine_ramps or trapezoid)");
}

void SwitchingSpec::validate() const {
  if (!(std::isfinite(T) && T > 0.0)) throw std::invalid_argument("SwitchingSpec: T must be positive");
  if (!(S_f >= 0.0 && S_f < 1.0)) throw std::invalid_argument("SwitchingSpec: S_f must lie in [0, 1)");
  if (!std::isfinite(t_center)) throw std::invalid_argument("SwitchingSpec: t_center must be finite");
}

void GapSpec::validate() const {
  if (!(std::isfinite(omega_free) && omega_free > 0.0))
    throw std::invalid_argument("GapSpec: omega_free must be positive");
  if (!std::isfinite(omega_var)) throw std::invalid_argument("GapSpec: omega_var must be finite");
}

double gaussian_sigma(double T) { return T / std::sqrt(2.0); }

double shape_value(const SwitchingSpec& spec, double s) {
  const double a = std::abs(s);
  const double sf = spec.S_f;
  switch (spec.shape) {
    case Shape::Gaussian:
      return std::exp(-s * s);
    case Shape::CosineRamps:
      if (a <= 0.5 * sf) return 1.0;
      if (a >= 0.5) return 0.0;
      return 0.5 + 0.5 * std::cos(kPi * (2.0 * a - sf) / (1.0 - sf));
    case Shape::Trapezoid:
      if (a <= 0.5 * sf) return 1.0;
      if (a >= 0.5) return 0.0;
      return (1.0 - 2.0 * a) / (1.0 - sf);
  }
  return 0.0;
}

double shape_antiderivative(const SwitchingSpec& spec, double s) {
  const double a = std::abs(s);
  const double sign = s < 0.0 ? -1.0 : 1.0;
  const double sf = spec.S_f;
  const double h = 0.5 * sf;
  double v = 0.0;
  switch (spec.shape) {
    case Shape::Gaussian:
      return 0.5 * std::sqrt(kPi) * std::erf(s);
    case Shape::CosineRamps:
      if (a <= h) {
        v = a;
      } else {
        const double r = std::min(a, 0.5);
        v = h + 0.5 * (r - h) + (1.0 - sf) / (4.0 * kPi) * std::sin(kPi * (2.0 * r - sf) / (1.0 - sf));
      }
      break;
    case Shape::Trapezoid:
      if (a <= h) {
        v = a;
      } else {
        const double r = std::min(a, 0.5);
        v = h + ((r - h) - (r * r - h * h)) / (1.0 - sf);
      }
      break;
  }
  return sign * v;
}

double integration_half_width(const SwitchingSpec& spec) {
  return spec.compact() ? 0.5 * spec.T : kGaussianWindow * spec.T;
}

double causal_half_width(const SwitchingSpec& spec) {
  return spec.compact() ? 0.5 * spec.T : 5.0 * gaussian_sigma(spec.T);
}

std::vector<double> shape_kinks(const SwitchingSpec& spec) {
  if (!spec.compact()) return {};
  std::vector<double> k{-0.5 * spec.T, 0.5 * spec.T};
  if (spec.S_f > 0.0) {
    k.push_back(-0.5 * spec.S_f * spec.T);
    k.push_back(0.5 * spec.S_f * spec.T);
  }
  return k;
}

double switching_value(const SwitchingSpec& spec, double t) {
  return shape_value(spec, (t - spec.t_center) / spec.T);
}

double phase(const SwitchingSpec& spec, const GapSpec& gap, double t) {
  return gap.omega_free * t + gap.omega_var * spec.T * shape_antiderivative(spec, t / spec.T);
}

cplx chi_complex(const SwitchingSpec& spec, const GapSpec& gap, double t) {
  const double u = t - spec.t_center;
  const double x = shape_value(spec, u / spec.T);
  if (x == 0.0) return {0.0, 0.0};
  const double ph = phase(spec, gap, u) + (spec.t_center != 0.0 ? phase(spec, gap, spec.t_center) : 0.0);
  return std::polar(x, ph);
}

cplx fourier_chi_complex(const SwitchingSpec& spec, const GapSpec& gap, double omega,
                         const QuadratureConfig& cfg) {
  const double w = integration_half_width(spec);
  QuadratureConfig c = cfg;
  for (double k : shape_kinks(spec)) c.split_points.push_back(spec.t_center + k);
  c.max_panel_width = 0.25 * kPi / (std::abs(omega) + gap.max_rate() + 1.0 / spec.T);
  auto f = [&](double t) { return chi_complex(spec, gap, t) * std::polar(1.0, omega * t); };
  return integrate_1d(f, spec.t_center - w, spec.t_center + w, c).value;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

void spherical_bessel_j(int n, double z, std::vector<double>& out) {
  out.assign(n + 1, 0.0);
  const double sign = z < 0.0 ? -1.0 : 1.0;
  z = std::abs(z);
  if (z < 1.0) {
    // Power series; 20 terms are ample for z < 1.
    double lead = 1.0;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) lead *= z / (2.0 * k + 1.0);
      double term = 1.0, sum = 1.0;
      for (int m = 1; m < 20; ++m) {
        term *= -0.5 * z * z / (m * (2.0 * k + 2.0 * m + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
      }
      out[k] = lead * sum;
    }
  } else {
    const double j0 = std::sin(z) / z;
    const double j1 = std::sin(z) / (z * z) - std::cos(z) / z;
    if (z > n) {
      out[0] = j0;
      if (n >= 1) out[1] = j1;
      for (int k = 1; k < n; ++k) out[k + 1] = (2.0 * k + 1.0) / z * out[k] - out[k - 1];
    } else {
      // Miller's downward recurrence, normalised against the larger of j0 and j1.
      const int start = n + 40 + static_cast<int>(std::sqrt(40.0 * n));
      double jp1 = 0.0, jk = 1e-280;
      std::vector<double> tmp(start + 1, 0.0);
      tmp[start] = jk;
      for (int k = start; k > 0; --k) {
        const double jm1 = (2.0 * k + 1.0) / z * jk - jp1;
        jp1 = jk;
        jk = jm1;
        tmp[k - 1] = jk;
        if (std::abs(jk) > 1e250) {
          for (int q = k - 1; q <= start; ++q) tmp[q] *= 1e-250;
          jk *= 1e-250;
          jp1 *= 1e-250;
        }
      }
      const double scale = std::abs(j0) >= std::abs(j1) ? j0 / tmp[0] : j1 / tmp[1];
      for (int k = 0; k <= n; ++k) out[k] = tmp[k] * scale;
    }
  }
  if (sign < 0.0)
    for (int k = 1; k <= n; k += 2) out[k] = -out[k];
}

namespace {

constexpr int kLegendreDegree = 24;

struct LegendreFit {
  std::vector<cplx> coeff;
  double tail;
};

template <class F>
LegendreFit fit_panel(F& g, double lo, double hi, const std::vector<double>& x, const std::vector<double>& w) {
  const int n = kLegendreDegree;
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  LegendreFit fit{std::vector<cplx>(n + 1, cplx{}), 0.0};
  std::vector<double> P(n + 1);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const cplx gv = g(c + h * x[j]);
    P[0] = 1.0;
    P[1] = x[j];
    for (int k = 1; k < n; ++k) P[k + 1] = ((2.0 * k + 1.0) * x[j] * P[k] - k * P[k - 1]) / (k + 1.0);
    for (int k = 0; k <= n; ++k) fit.coeff[k] += w[j] * gv * P[k];
  }
  for (int k = 0; k <= n; ++k) fit.coeff[k] *= 0.5 * (2.0 * k + 1.0);
  fit.tail = std::abs(fit.coeff[n]) + std::abs(fit.coeff[n - 1]) + std::abs(fit.coeff[n - 2]);
  return fit;
}

}  // namespace

ChiSpectrum::ChiSpectrum(const SwitchingSpec& spec, const GapSpec& gap, double tol) {
  SwitchingSpec centered = spec;
  centered.t_center = 0.0;
  centered.validate();
  std::vector<double> x, w;
  gauss_legendre(kLegendreDegree + 1, x, w);
  auto g = [&](double t) { return chi_complex(centered, gap, t); };

  const double half = integration_half_width(centered);
  std::vector<double> breaks{-half};
  for (double k : shape_kinks(centered))
    if (k > -half && k < half) breaks.push_back(k);
  breaks.push_back(half);
  std::sort(breaks.begin(), breaks.end());

  const double max_width = std::min(0.5 * centered.T, 4.0 / std::max(gap.max_rate(), 1e-12));
  std::vector<std::pair<double, double>> todo;
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    const double a = breaks[i - 1], b = breaks[i];
    if (b <= a) continue;
    const int m = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    for (int k = 0; k < m; ++k) todo.emplace_back(a + (b - a) * k / m, a + (b - a) * (k + 1) / m);
  }
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    auto fit = fit_panel(g, a, b, x, w);
    if (fit.tail > tol && (b - a) > 1e-9 * centered.T) {
      const double m = 0.5 * (a + b);
      todo.emplace_back(a, m);
      todo.emplace_back(m, b);
      continue;
    }
    panels_.push_back({0.5 * (a + b), 0.5 * (b - a), std::move(fit.coeff)});
  }
  std::sort(panels_.begin(), panels_.end(), [](const Panel& p, const Panel& q) { return p.center < q.center; });
}

cplx ChiSpectrum::operator()(double omega) const {
  // int_{-1}^{1} P_k(x) e^{i z x} dx = 2 i^k j_k(z)
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<double> j;
  cplx total{};
  for (const auto& p : panels_) {
    spherical_bessel_j(kLegendreDegree, omega * p.half, j);
    cplx s{};
    for (int k = 0; k <= kLegendreDegree; ++k) s += p.coeff[k] * (ipow[k % 4] * j[k]);
    total += std::polar(2.0 * p.half, omega * p.center) * s;
  }
  return total;
}

}  // namespace vgsd
