#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vgsd/quadrature.hpp"

namespace vgsd {

using cplx = std::complex<double>;

enum class Shape { Gaussian, CosineRamps, Trapezoid };

const char* shape_name(Shape s);
Shape parse_shape(const std::string& name);

// chi(t) = X((t - t_center) / T). S_f is the flat fraction of the compact shapes.
struct SwitchingSpec {
  Shape shape = Shape::Gaussian;
  double T = 0.1;  // ns
  double S_f = 0.0;
  double t_center = 0.0;  // ns

  void validate() const;
  bool compact() const { return shape != Shape::Gaussian; }
};

// Omega(t) = omega_free + omega_var chi(t), rad/ns.
struct GapSpec {
  double omega_free = 0.0;
  double omega_var = 0.0;

  void validate() const;
  double max_rate() const { return std::abs(omega_free) + std::abs(omega_var); }
};

// Gaussian width: X(s) = e^{-s^2} is a normal profile with sigma = T / sqrt(2).
double gaussian_sigma(double T);

// Gaussian shapes are integrated over |s| <= kGaussianWindow, where e^{-s^2} < 1e-18.
inline constexpr double kGaussianWindow = 6.5;

double shape_value(const SwitchingSpec& spec, double s);
// Integral of X from 0 to s.
double shape_antiderivative(const SwitchingSpec& spec, double s);

// Half-width in ns of the interval outside which chi is treated as zero.
double integration_half_width(const SwitchingSpec& spec);
// Half-width in ns used for causal classification: T/2 for compact shapes, 5 sigma for Gaussians.
double causal_half_width(const SwitchingSpec& spec);
// Kinks of the centered chi(t), in ns.
std::vector<double> shape_kinks(const SwitchingSpec& spec);

// chi(t) including the center shift.
double switching_value(const SwitchingSpec& spec, double t);

// phi(t) = omega_free t + omega_var int_0^t chi for the centered shape. t_center is ignored.
double phase(const SwitchingSpec& spec, const GapSpec& gap, double t);

// chi_c(t) = e^{-i phi(-t_c)} e^{i phi(t - t_c)} chi(t - t_c). For t_c = 0 this is e^{i phi(t)} chi(t).
cplx chi_complex(const SwitchingSpec& spec, const GapSpec& gap, double t);

// int chi_c(t) e^{i omega t} dt by adaptive Gauss-Kronrod with panels capped at pi/4 of local phase.
cplx fourier_chi_complex(const SwitchingSpec& spec, const GapSpec& gap, double omega,
                         const QuadratureConfig& cfg = {});

// Fourier transform of the centered chi_c for many frequencies. chi_c is expanded once in Legendre
// series on panels; each panel transform is then exact in terms of spherical Bessel functions, so the
// cost per frequency does not grow with omega.
class ChiSpectrum {
 public:
  ChiSpectrum(const SwitchingSpec& spec, const GapSpec& gap, double tol = 1e-13);

  cplx operator()(double omega) const;
  std::size_t panel_count() const { return panels_.size(); }

 private:
  struct Panel {
    double center, half;
    std::vector<cplx> coeff;
  };
  std::vector<Panel> panels_;
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// j_0(z) .. j_n(z) for real z.
void spherical_bessel_j(int n, double z, std::vector<double>& out);

}  // namespace vgsd
