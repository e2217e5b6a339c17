#pragma once

#include <complex>

namespace vgsd {

using cplx = std::complex<double>;

// Vacuum correlator kernels of the exponentially regulated 1+1D field.
// Times in ns, frequencies in rad/ns.
class FieldKernels {
 public:
  explicit FieldKernels(double omega_cut);

  double omega_cut() const { return omega_cut_; }

  // e^{-|w| / (2 omega_cut)}
  double cutoff_weight(double omega) const;

  // J(t) = omega_cut^2 / (1 + i omega_cut t)^2
  cplx J(double t) const;

  // I(t) = (J(t + t_d) + J(t - t_d)) / 2
  cplx I(double t, double t_d) const;

  // Derivative-coupling Wightman function with the 1/c^2 factor set to one:
  // (J(t + |x|/v) + J(t - |x|/v)) / (4 pi).
  cplx wightman_dxdx(double t_minus, double x_minus_over_v) const;

  // Lorentzian smearing equivalent to the cutoff, in 1/m for x in m and v in m/s.
  // omega_cut here is taken in rad/s so the ratio v / omega_cut is a length.
  static double effective_smearing(double x, double v, double omega_cut_rad_per_s);

 private:
  double omega_cut_;
};

}  // namespace vgsd
