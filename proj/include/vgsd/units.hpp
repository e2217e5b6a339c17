#pragma once

#include <numbers>

namespace vgsd {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// CODATA 2018 exact SI values.
struct PhysicalConstants {
  double h;             // J s
  double hbar;          // J s
  double e_charge;      // C
  double R_K;           // Ohm, h / e^2
  double phi0_reduced;  // Wb, hbar / 2e

  static constexpr PhysicalConstants codata() {
    constexpr double h = 6.62607015e-34;
    constexpr double e = 1.602176634e-19;
    constexpr double hbar = h / (2.0 * std::numbers::pi);
    return {h, hbar, e, h / (e * e), hbar / (2.0 * e)};
  }
};

inline constexpr PhysicalConstants kConstants = PhysicalConstants::codata();

// Transmission line in laboratory units.
struct LineParams {
  double v = 1.2e8;                                  // m/s
  double Z0 = 50.0;                                  // Ohm
  double omega_cut = 2.0 * std::numbers::pi * 50e9;  // rad/s

  void validate() const;
};

// Internal units: time in ns, angular frequency in rad/ns, energy in h*GHz.
namespace units {

constexpr double seconds_to_ns(double t_s) { return t_s * 1e9; }
constexpr double ns_to_seconds(double t_ns) { return t_ns * 1e-9; }
constexpr double rad_per_s_to_internal(double w) { return w * 1e-9; }
constexpr double internal_to_rad_per_s(double w) { return w * 1e9; }
// Ordinary frequency f [GHz] to angular frequency [rad/ns].
constexpr double ghz_to_internal(double f_ghz) { return kTwoPi * f_ghz; }
constexpr double internal_to_ghz(double w) { return w / kTwoPi; }
// Speed in m/s to m/ns.
constexpr double speed_to_internal(double v) { return v * 1e-9; }

}  // namespace units

}  // namespace vgsd
