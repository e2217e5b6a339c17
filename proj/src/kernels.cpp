#include "vgsd/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "vgsd/units.hpp"

namespace vgsd {

FieldKernels::FieldKernels(double omega_cut) : omega_cut_(omega_cut) {
  if (!(std::isfinite(omega_cut) && omega_cut > 0.0))
    throw std::invalid_argument("omega_cut must be positive");
}

double FieldKernels::cutoff_weight(double omega) const {
  return std::exp(-std::abs(omega) / (2.0 * omega_cut_));
}

cplx FieldKernels::J(double t) const {
  // 1/(1 + i a)^2 = (1 - i a)^2 / (1 + a^2)^2, written out to avoid complex division.
  const double a = omega_cut_ * t;
  const double d = 1.0 + a * a;
  const double s = omega_cut_ * omega_cut_ / (d * d);
  return {s * (1.0 - a * a), -2.0 * s * a};
}

cplx FieldKernels::I(double t, double t_d) const { return 0.5 * (J(t + t_d) + J(t - t_d)); }

cplx FieldKernels::wightman_dxdx(double t_minus, double x_minus_over_v) const {
  const double x = std::abs(x_minus_over_v);
  return (J(t_minus + x) + J(t_minus - x)) / (4.0 * kPi);
}

double FieldKernels::effective_smearing(double x, double v, double omega_cut_rad_per_s) {
  const double k = 2.0 * omega_cut_rad_per_s / v;
  return k / kPi / (1.0 + (k * x) * (k * x));
}

}  // namespace vgsd
